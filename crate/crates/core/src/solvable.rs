//! The solvable extension: the action of totally positive units on the
//! center of `n`, the kernel `Gamma_A`, block matrix models of `G~` and `G`,
//! the affine action on `(C x H+)^d`, and the Anosov multipliers along the
//! leaves `T F`.

use std::fmt;

use num_complex::Complex;
use num_traits::{Num, One, Signed, Zero};

use crate::arith::interval::Interval;
use crate::arith::matrix::RatMatrix;
use crate::arith::rational::Rational;
use crate::error::{Error, Result};
use crate::field::{FieldElem, FieldSpec};
use crate::nilpotent::{wedge_matrix, Splitting};

const MAX_REFINEMENTS: usize = 12;

/// `sigma_{2i-1}(u) sigma_{2i}(u)` enclosed in an interval, with an exact
/// verdict on equality with 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplier {
    pub interval: Interval,
    pub exact_one: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitAction {
    pub u: FieldElem,
    pub rho_v: RatMatrix,
    pub rho_w: RatMatrix,
    /// Induced map on `W/W2` in the `W1` basis.
    pub phi: RatMatrix,
    pub multipliers: Vec<Multiplier>,
}

pub fn unit_action(f: &FieldSpec, s: &Splitting, u: &FieldElem, width: &Rational) -> Result<UnitAction> {
    if !f.norm(u).is_one() {
        return Err(Error::NotUnit(crate::arith::rational::to_text(&f.norm(u))));
    }
    if !f.is_totally_positive(u) {
        return Err(Error::NotTotallyPositive);
    }
    let rho_v = f.mul_matrix(u);
    let rho_w = wedge_matrix(&rho_v)?;
    if !s.w2_basis().is_empty() {
        let w2 = s.w2_matrix();
        if !w2.spans(&(&rho_w * &w2)) {
            return Err(Error::NotInvariant("W2 under a unit".into()));
        }
    }
    let phi = &(s.projection() * &rho_w) * &s.w1_matrix();
    let d = f.d();
    if !phi.det()?.is_one() {
        return Err(Error::Invalid("det phi != 1".into()));
    }
    // phi is diagonalizable with eigenvalues the multipliers, so exactly
    // `ones` of them equal 1; refine until the others exclude 1.
    let ones = (&phi - &RatMatrix::identity(d)).kernel().len();
    let one = Rational::one();
    let mut w = width.clone();
    for _ in 0..MAX_REFINEMENTS {
        let intervals: Vec<Interval> = (0..d)
            .map(|i| &f.embedding_value(u, 2 * i, &w) * &f.embedding_value(u, 2 * i + 1, &w))
            .collect();
        let excluded = intervals.iter().filter(|iv| !iv.contains(&one)).count();
        if excluded == d - ones {
            let multipliers = intervals
                .into_iter()
                .map(|iv| Multiplier {
                    exact_one: iv.contains(&one),
                    interval: iv,
                })
                .collect();
            return Ok(UnitAction {
                u: u.clone(),
                rho_v,
                rho_w,
                phi,
                multipliers,
            });
        }
        w = &w * &w;
    }
    Err(Error::RootCertificate("multiplier intervals did not separate from 1".into()))
}

pub fn in_gamma_a(ua: &UnitAction) -> bool {
    ua.phi.is_identity()
}

#[derive(Clone, Debug, PartialEq)]
pub struct LogRank {
    /// Numerical rank; a lower bound on the rank of `Gamma_A`.
    pub rank: usize,
    pub considered: usize,
    pub tolerance: f64,
    /// Largest pivot magnitude rejected as zero.
    pub residual: f64,
}

pub const LOG_RANK_TOLERANCE: f64 = 1e-9;

/// Rank of the matrix `(log sigma_j(u))` over the `Gamma_A` members among
/// `actions`, by elimination with partial pivoting.
pub fn unit_log_rank(f: &FieldSpec, actions: &[UnitAction]) -> LogRank {
    let width = crate::arith::rational::dyadic_width(64);
    let mut rows: Vec<Vec<f64>> = actions
        .iter()
        .filter(|ua| in_gamma_a(ua))
        .map(|ua| {
            f.embedding_values(&ua.u, &width)
                .iter()
                .map(|iv| iv.to_f64().ln())
                .collect()
        })
        .collect();
    let considered = rows.len();
    let cols = f.degree();
    let mut rank = 0;
    let mut residual: f64 = 0.0;
    for c in 0..cols {
        if rank == rows.len() {
            break;
        }
        let (p, mag) = (rank..rows.len())
            .map(|r| (r, rows[r][c].abs()))
            .fold((rank, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if mag <= LOG_RANK_TOLERANCE {
            residual = residual.max(mag);
            continue;
        }
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            let factor = row[c] / pivot[c];
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= factor * y;
            }
        }
        rank += 1;
    }
    for row in &rows[rank..] {
        residual = row.iter().fold(residual, |m, x| m.max(x.abs()));
    }
    LogRank {
        rank,
        considered,
        tolerance: LOG_RANK_TOLERANCE,
        residual,
    }
}

/// One block `(a b, x, z; 0, b, y; 0, 0, 1)` of the matrix model of `G~`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GTildeFactor {
    pub a: Rational,
    pub b: Rational,
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl GTildeFactor {
    pub fn identity() -> Self {
        GTildeFactor {
            a: Rational::one(),
            b: Rational::one(),
            x: Rational::zero(),
            y: Rational::zero(),
            z: Rational::zero(),
        }
    }

    pub fn matrix(&self) -> RatMatrix {
        let zero = Rational::zero();
        RatMatrix::from_rows(&[
            vec![&self.a * &self.b, self.x.clone(), self.z.clone()],
            vec![zero.clone(), self.b.clone(), self.y.clone()],
            vec![zero.clone(), zero, Rational::one()],
        ])
        .expect("3x3")
    }

    pub fn mul(&self, o: &GTildeFactor) -> GTildeFactor {
        let ab = &self.a * &self.b;
        GTildeFactor {
            a: &self.a * &o.a,
            b: &self.b * &o.b,
            x: &ab * &o.x + &self.x * &o.b,
            y: &self.b * &o.y + &self.y,
            z: &ab * &o.z + &self.x * &o.y + &self.z,
        }
    }

    /// The same element in `S` coordinates, when it lies in `G`.
    pub fn to_s_factor(&self) -> Option<SFactor<Rational>> {
        (&self.a * &self.b).is_one().then(|| SFactor {
            a: self.x.clone(),
            b: self.y.clone(),
            c: self.z.clone(),
            t: self.b.clone(),
        })
    }
}

/// Block-diagonal `3d x 3d` model; with `g_subgroup` set, every block must
/// satisfy `a b = 1`.
pub fn block_matrix_model(factors: &[GTildeFactor], g_subgroup: bool) -> Result<RatMatrix> {
    let n = 3 * factors.len();
    let mut m = RatMatrix::zeros(n, n);
    for (i, g) in factors.iter().enumerate() {
        if !g.a.is_positive() || !g.b.is_positive() {
            return Err(Error::Invalid(format!("block {i}: a and b must be positive")));
        }
        if g_subgroup && !(&g.a * &g.b).is_one() {
            return Err(Error::SubgroupViolation(i));
        }
        let b = g.matrix();
        for r in 0..3 {
            for c in 0..3 {
                m.set(3 * i + r, 3 * i + c, b.get(r, c).clone());
            }
        }
    }
    Ok(m)
}

/// Diagonal blocks `(sigma_{2i-1}(u) sigma_{2i}(u), sigma_{2i}(u), 1)`.
pub fn embed_unit(f: &FieldSpec, u: &FieldElem, width: &Rational) -> Vec<[Interval; 3]> {
    (0..f.d())
        .map(|i| {
            let s1 = f.embedding_value(u, 2 * i, width);
            let s2 = f.embedding_value(u, 2 * i + 1, width);
            [&s1 * &s2, s2, Interval::point(Rational::one())]
        })
        .collect()
}

/// Scalars usable in the affine model: exact rationals or floats.
pub trait Scalar: Clone + Num + PartialOrd + fmt::Debug {}
impl<T: Clone + Num + PartialOrd + fmt::Debug> Scalar for T {}

/// `(1 a c; 0 t b; 0 0 1)` in `S`, `t > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SFactor<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub t: T,
}

impl<T: Scalar> SFactor<T> {
    pub fn new(a: T, b: T, c: T, t: T) -> Result<Self> {
        if t <= T::zero() {
            return Err(Error::Invalid("t must be positive".into()));
        }
        Ok(SFactor { a, b, c, t })
    }

    pub fn identity() -> Self {
        SFactor {
            a: T::zero(),
            b: T::zero(),
            c: T::zero(),
            t: T::one(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self == &Self::identity()
    }

    pub fn mul(&self, o: &Self) -> Self {
        SFactor {
            a: self.a.clone() * o.t.clone() + o.a.clone(),
            b: self.t.clone() * o.b.clone() + self.b.clone(),
            c: o.c.clone() + self.a.clone() * o.b.clone() + self.c.clone(),
            t: self.t.clone() * o.t.clone(),
        }
    }

    pub fn matrix(&self) -> [[T; 3]; 3] {
        let (z, o) = (T::zero(), T::one());
        [
            [o.clone(), self.a.clone(), self.c.clone()],
            [z.clone(), self.t.clone(), self.b.clone()],
            [z.clone(), z, o],
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SElem<T> {
    pub factors: Vec<SFactor<T>>,
}

impl<T: Scalar> SElem<T> {
    pub fn identity(d: usize) -> Self {
        SElem {
            factors: vec![SFactor::identity(); d],
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        SElem {
            factors: self.factors.iter().zip(&o.factors).map(|(x, y)| x.mul(y)).collect(),
        }
    }
}

/// A point of `(C x H+)^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelPoint<T> {
    pub z: Vec<Complex<T>>,
    pub w: Vec<Complex<T>>,
}

impl<T: Scalar> ModelPoint<T> {
    pub fn new(z: Vec<Complex<T>>, w: Vec<Complex<T>>) -> Result<Self> {
        if z.len() != w.len() {
            return Err(Error::DimensionMismatch("z and w lengths differ".into()));
        }
        if w.iter().any(|x| x.im <= T::zero()) {
            return Err(Error::Invalid("Im w must be positive".into()));
        }
        Ok(ModelPoint { z, w })
    }

    /// `(0, i, ..., 0, i)`.
    pub fn base(d: usize) -> Self {
        ModelPoint {
            z: vec![Complex::new(T::zero(), T::zero()); d],
            w: vec![Complex::new(T::zero(), T::one()); d],
        }
    }
}

fn real<T: Scalar>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

/// `(z, w) -> (z + a w + c, t w + b)` in each factor.
pub fn model_action<T: Scalar>(g: &SElem<T>, p: &ModelPoint<T>) -> ModelPoint<T> {
    let mut z = Vec::with_capacity(p.z.len());
    let mut w = Vec::with_capacity(p.w.len());
    for ((f, zi), wi) in g.factors.iter().zip(&p.z).zip(&p.w) {
        z.push(zi.clone() + wi.clone() * f.a.clone() + real(f.c.clone()));
        w.push(wi.clone() * f.t.clone() + real(f.b.clone()));
    }
    ModelPoint { z, w }
}

/// The unique `g` with `g . base = p`; trivial isotropy at the base point.
pub fn orbit_preimage<T: Scalar>(p: &ModelPoint<T>) -> Result<SElem<T>> {
    let factors = p
        .z
        .iter()
        .zip(&p.w)
        .map(|(z, w)| SFactor::new(z.im.clone(), w.re.clone(), z.re.clone(), w.im.clone()))
        .collect::<Result<_>>()?;
    Ok(SElem { factors })
}

/// `phi_{l,m}(z, w) = (l m z, m w)` per factor.
fn scale_point<T: Scalar>(lm: &[(T, T)], p: &ModelPoint<T>, inverse: bool) -> ModelPoint<T> {
    let mut out = p.clone();
    for (i, (l, m)) in lm.iter().enumerate() {
        let (sz, sw) = (l.clone() * m.clone(), m.clone());
        if inverse {
            out.z[i] = out.z[i].clone() / sz;
            out.w[i] = out.w[i].clone() / sw;
        } else {
            out.z[i] = out.z[i].clone() * sz;
            out.w[i] = out.w[i].clone() * sw;
        }
    }
    out
}

/// `(z + l a w + l m c, t w + m b)` per factor.
pub fn normalize_closed_form<T: Scalar>(lm: &[(T, T)], g: &SElem<T>, p: &ModelPoint<T>) -> ModelPoint<T> {
    let mut out = p.clone();
    for (i, ((l, m), f)) in lm.iter().zip(&g.factors).enumerate() {
        out.z[i] = p.z[i].clone()
            + p.w[i].clone() * (l.clone() * f.a.clone())
            + real(l.clone() * m.clone() * f.c.clone());
        out.w[i] = p.w[i].clone() * f.t.clone() + real(m.clone() * f.b.clone());
    }
    out
}

/// `phi(g . phi^{-1}(p))`, evaluated by composing the three maps, and checked
/// against [`normalize_closed_form`].
pub fn normalize_action(
    lm: &[(Rational, Rational)],
    g: &SElem<Rational>,
    p: &ModelPoint<Rational>,
) -> Result<ModelPoint<Rational>> {
    if lm.iter().any(|(l, m)| !l.is_positive() || !m.is_positive()) {
        return Err(Error::Invalid("lambda and mu must be positive".into()));
    }
    let direct = scale_point(lm, &model_action(g, &scale_point(lm, p, true)), false);
    if direct != normalize_closed_form(lm, g, p) {
        return Err(Error::Invalid("normalization closed form disagrees".into()));
    }
    Ok(direct)
}

/// A tangent vector `(0 p r; 0 t q; 0 0 0)` of `S` at the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameVector {
    pub p: Rational,
    pub r: Rational,
    pub t: Rational,
    pub q: Rational,
}

impl FrameVector {
    fn matrix(&self) -> RatMatrix {
        let z = Rational::zero();
        RatMatrix::from_rows(&[
            vec![z.clone(), self.p.clone(), self.r.clone()],
            vec![z.clone(), self.t.clone(), self.q.clone()],
            vec![z.clone(), z.clone(), z],
        ])
        .expect("3x3")
    }
}

/// Scales the leaf components `(p, r)` of factor `i` by `lm[i]` and leaves
/// the transversal components `(t, q)` fixed.
pub fn frame_pushforward(lm: &[Rational], xi: &[FrameVector]) -> Vec<FrameVector> {
    lm.iter()
        .zip(xi)
        .map(|(s, v)| FrameVector {
            p: s * &v.p,
            r: s * &v.r,
            t: v.t.clone(),
            q: v.q.clone(),
        })
        .collect()
}

/// `(1 a c; 0 t b) -> (1 lm a, lm c; 0 m t, m b)`, the coordinate map whose
/// differential is pushed forward.
pub fn frame_map(l: &Rational, m: &Rational, g: &SFactor<Rational>) -> SFactor<Rational> {
    let lm = l * m;
    SFactor {
        a: &lm * &g.a,
        b: m * &g.b,
        c: &lm * &g.c,
        t: m * &g.t,
    }
}

fn s_matrix(g: &SFactor<Rational>) -> RatMatrix {
    RatMatrix::from_rows(&g.matrix().iter().map(|r| r.to_vec()).collect::<Vec<_>>()).expect("3x3")
}

/// `(l_{phi(g)}^{-1} o phi o l_g)_* xi` computed from matrices: `phi` is
/// linear in the entries, so its differential at `g xi` is `phi` applied to
/// the entries of `g xi` without the constant part.
pub fn conjugated_differential(
    l: &Rational,
    m: &Rational,
    g: &SFactor<Rational>,
    xi: &FrameVector,
) -> Result<FrameVector> {
    let gx = &s_matrix(g) * &xi.matrix();
    let lm = l * m;
    let scale = [[Rational::zero(), lm.clone(), lm], [Rational::zero(), m.clone(), m.clone()]];
    let mut dphi = RatMatrix::zeros(3, 3);
    for r in 0..2 {
        for c in 0..3 {
            dphi.set(r, c, &scale[r][c] * gx.get(r, c));
        }
    }
    let out = &s_matrix(&frame_map(l, m, g)).inverse()? * &dphi;
    Ok(FrameVector {
        p: out.get(0, 1).clone(),
        r: out.get(0, 2).clone(),
        t: out.get(1, 1).clone(),
        q: out.get(1, 2).clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnosovClass {
    Anosov,
    InGammaA,
    /// Some but not all multipliers equal 1; indices are 0-based factors.
    Mixed(Vec<usize>),
}

impl fmt::Display for AnosovClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnosovClass::Anosov => write!(f, "Anosov"),
            AnosovClass::InGammaA => write!(f, "InGammaA"),
            AnosovClass::Mixed(ix) => write!(f, "Mixed({ix:?})"),
        }
    }
}

pub const MIXED_NOTE: &str = "for d >= 3 some multipliers of a unit outside Gamma_A may equal 1; \
whether every such field admits a unit with no multiplier equal to 1 is left open";

pub fn classify_multipliers(phi_is_identity: bool, multipliers: &[Multiplier]) -> AnosovClass {
    if phi_is_identity {
        return AnosovClass::InGammaA;
    }
    let ones: Vec<usize> = multipliers
        .iter()
        .enumerate()
        .filter(|(_, m)| m.exact_one)
        .map(|(i, _)| i)
        .collect();
    if ones.is_empty() {
        AnosovClass::Anosov
    } else {
        AnosovClass::Mixed(ones)
    }
}

pub fn anosov_classify(ua: &UnitAction) -> AnosovClass {
    classify_multipliers(in_gamma_a(ua), &ua.multipliers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::IntPoly;
    use crate::arith::rational::{dyadic_width, int, ratio};
    use crate::field::{build_field, FieldOptions};
    use crate::nilpotent::split_w;
    use num_bigint::BigInt;
    use proptest::prelude::*;
    use std::sync::OnceLock;

    struct Fixture {
        f: FieldSpec,
        s: Splitting,
    }

    fn fixture(seed: &[i64], shift: i64) -> Fixture {
        let f = build_field(&IntPoly::from_i64s(seed), &BigInt::from(shift), &FieldOptions::default())
            .unwrap();
        let s = split_w(&f).unwrap();
        Fixture { f, s }
    }

    fn quadratic() -> &'static Fixture {
        static F: OnceLock<Fixture> = OnceLock::new();
        F.get_or_init(|| fixture(&[0, 1], 3))
    }

    fn quartic() -> &'static Fixture {
        static F: OnceLock<Fixture> = OnceLock::new();
        F.get_or_init(|| fixture(&[-2, 0, 1], 4))
    }

    fn w() -> Rational {
        dyadic_width(32)
    }

    fn act(fx: &Fixture, u: &FieldElem) -> UnitAction {
        unit_action(&fx.f, &fx.s, u, &w()).unwrap()
    }

    #[test]
    fn generator_and_one_lie_in_gamma_a() {
        for fx in [quadratic(), quartic()] {
            for u in [fx.f.generator(), fx.f.one()] {
                let ua = act(fx, &u);
                assert!(in_gamma_a(&ua));
                assert!(ua.multipliers.iter().all(|m| m.exact_one));
                assert_eq!(anosov_classify(&ua), AnosovClass::InGammaA);
            }
        }
        assert!(act(quartic(), &quartic().f.one()).rho_v.is_identity());
    }

    #[test]
    fn rejects_non_units_and_non_positive() {
        let fx = quartic();
        let two = fx.f.elem_from_ints(&[2, 0, 0, 0]).unwrap();
        assert!(matches!(unit_action(&fx.f, &fx.s, &two, &w()), Err(Error::NotUnit(_))));
        let neg = fx.f.neg(&fx.f.one());
        assert_eq!(unit_action(&fx.f, &fx.s, &neg, &w()), Err(Error::NotTotallyPositive));
    }

    #[test]
    fn quartic_square_is_anosov() {
        let fx = quartic();
        // u0 - 2 has mixed signs; its square is totally positive.
        let v = fx.f.elem_from_ints(&[-2, 1, 0, 0]).unwrap();
        assert!(!fx.f.is_totally_positive(&v));
        let u = fx.f.mul(&v, &v);
        let ua = act(fx, &u);
        assert!(!in_gamma_a(&ua));
        assert_eq!(anosov_classify(&ua), AnosovClass::Anosov);
        let (m0, m1) = (ua.multipliers[0].interval.to_f64(), ua.multipliers[1].interval.to_f64());
        assert!((m0 * m1 - 1.0).abs() < 1e-9);
        assert!(m0 > 1.0 && m1 < 1.0 || m0 < 1.0 && m1 > 1.0);
        assert!(ua.phi.det().unwrap().is_one());
    }

    #[test]
    fn phi_is_multiplicative() {
        let fx = quartic();
        let v = fx.f.elem_from_ints(&[-2, 1, 0, 0]).unwrap();
        let a = fx.f.mul(&v, &v);
        let b = fx.f.generator();
        let ab = fx.f.mul(&a, &b);
        assert_eq!(act(fx, &ab).phi, &act(fx, &a).phi * &act(fx, &b).phi);
    }

    #[test]
    fn mixed_classification() {
        let m = |x: i64, one: bool| Multiplier {
            interval: Interval::point(int(x)),
            exact_one: one,
        };
        let ms = [m(2, false), m(1, true), m(1, false)];
        assert_eq!(classify_multipliers(false, &ms), AnosovClass::Mixed(vec![1]));
        assert_eq!(classify_multipliers(true, &ms), AnosovClass::InGammaA);
        assert_eq!(classify_multipliers(false, &ms[..1]), AnosovClass::Anosov);
    }

    #[test]
    fn log_rank_examples() {
        let fx = quadratic();
        let u0 = act(fx, &fx.f.generator());
        let u0sq = act(fx, &fx.f.mul(&fx.f.generator(), &fx.f.generator()));
        let one = act(fx, &fx.f.one());
        assert_eq!(unit_log_rank(&fx.f, std::slice::from_ref(&u0)).rank, 1);
        assert_eq!(unit_log_rank(&fx.f, &[one]).rank, 0);
        let r = unit_log_rank(&fx.f, &[u0, u0sq]);
        assert_eq!((r.rank, r.considered), (1, 2));
        assert!(r.residual < 1e-9);
    }

    #[test]
    fn block_models() {
        assert!(block_matrix_model(&[GTildeFactor::identity(), GTildeFactor::identity()], true).unwrap().is_identity());
        let bad = GTildeFactor { a: int(2), ..GTildeFactor::identity() };
        assert_eq!(block_matrix_model(&[GTildeFactor::identity(), bad.clone()], true), Err(Error::SubgroupViolation(1)));
        assert!(block_matrix_model(std::slice::from_ref(&bad), false).is_ok());
        let g = GTildeFactor { a: ratio(1, 3), b: int(3), x: int(1), y: int(-2), z: ratio(1, 2) };
        assert_eq!(bad.mul(&g).matrix(), &bad.matrix() * &g.matrix());
        let s = g.to_s_factor().unwrap();
        assert_eq!(s, SFactor { a: int(1), b: int(-2), c: ratio(1, 2), t: int(3) });
        assert!(bad.to_s_factor().is_none());
        let fx = quadratic();
        let blocks = embed_unit(&fx.f, &fx.f.generator(), &w());
        assert!(blocks[0][0].contains(&int(1)));
        assert!((blocks[0][1].to_f64() - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-9);
    }

    fn c(re: i64, im: i64) -> Complex<Rational> {
        Complex::new(int(re), int(im))
    }

    #[test]
    fn model_action_examples() {
        let base = ModelPoint::<Rational>::base(1);
        assert_eq!(model_action(&SElem::identity(1), &base), base);
        let g = SElem { factors: vec![SFactor::new(int(0), int(0), int(0), int(2)).unwrap()] };
        assert_eq!(model_action(&g, &base), ModelPoint { z: vec![c(0, 0)], w: vec![c(0, 2)] });
        let p = ModelPoint::new(vec![c(3, -1)], vec![c(2, 5)]).unwrap();
        let h = orbit_preimage(&p).unwrap();
        assert_eq!(model_action(&h, &base), p);
        assert!(orbit_preimage(&base).unwrap().factors[0].is_identity());
        assert!(ModelPoint::new(vec![c(0, 0)], vec![c(0, -1)]).is_err());
        let fp = ModelPoint::<f64>::base(2);
        let gf = SElem { factors: vec![SFactor::new(1.0, 0.5, 0.0, 2.0).unwrap(); 2] };
        assert_eq!(model_action(&gf, &fp).w[1], Complex::new(0.5, 2.0));
    }

    #[test]
    fn normalization_examples() {
        let g = SElem { factors: vec![SFactor::new(int(1), int(1), int(1), int(1)).unwrap()] };
        let base = ModelPoint::base(1);
        let out = normalize_action(&[(int(2), int(3))], &g, &base).unwrap();
        assert_eq!(out, ModelPoint { z: vec![c(6, 2)], w: vec![c(3, 1)] });
        let ones = normalize_action(&[(int(1), int(1))], &g, &base).unwrap();
        assert_eq!(ones, model_action(&g, &base));
        assert!(normalize_action(&[(int(0), int(1))], &g, &base).is_err());
    }

    #[test]
    fn frame_examples() {
        let xi = FrameVector { p: int(1), r: int(2), t: int(3), q: int(4) };
        let out = frame_pushforward(&[int(2)], std::slice::from_ref(&xi));
        assert_eq!(out[0], FrameVector { p: int(2), r: int(4), t: int(3), q: int(4) });
        assert_eq!(frame_pushforward(&[int(1)], std::slice::from_ref(&xi))[0], xi);
        let g = SFactor::new(ratio(1, 2), int(-3), int(5), ratio(7, 2)).unwrap();
        let direct = conjugated_differential(&int(2), &int(3), &g, &xi).unwrap();
        assert_eq!(direct, frame_pushforward(&[int(6)], &[xi])[0]);
    }

    fn q() -> impl Strategy<Value = Rational> {
        (-20i64..20, 1i64..6).prop_map(|(a, b)| ratio(a, b))
    }

    fn pos() -> impl Strategy<Value = Rational> {
        (1i64..20, 1i64..6).prop_map(|(a, b)| ratio(a, b))
    }

    fn factor() -> impl Strategy<Value = SFactor<Rational>> {
        (q(), q(), q(), pos()).prop_map(|(a, b, c, t)| SFactor { a, b, c, t })
    }

    fn point() -> impl Strategy<Value = ModelPoint<Rational>> {
        (q(), q(), q(), pos()).prop_map(|(a, b, c, t)| ModelPoint {
            z: vec![Complex::new(a, b)],
            w: vec![Complex::new(c, t)],
        })
    }

    proptest! {
        #[test]
        fn model_action_is_a_group_action(g in factor(), h in factor(), p in point()) {
            let (g, h) = (SElem { factors: vec![g] }, SElem { factors: vec![h] });
            prop_assert_eq!(model_action(&g, &model_action(&h, &p)), model_action(&g.mul(&h), &p));
        }

        #[test]
        fn s_mul_matches_matrices(g in factor(), h in factor()) {
            prop_assert_eq!(s_matrix(&g.mul(&h)), &s_matrix(&g) * &s_matrix(&h));
        }

        #[test]
        fn normalization_closed_form(l in pos(), m in pos(), g in factor(), p in point()) {
            let g = SElem { factors: vec![g] };
            prop_assert!(normalize_action(&[(l, m)], &g, &p).is_ok());
        }

        #[test]
        fn pushforward_is_basepoint_free(l in pos(), m in pos(), g in factor(), v in factor()) {
            let xi = FrameVector { p: v.a, r: v.c, t: v.b, q: v.t };
            let lm = &l * &m;
            prop_assert_eq!(
                conjugated_differential(&l, &m, &g, &xi).unwrap(),
                frame_pushforward(&[lm], &[xi])[0].clone()
            );
        }
    }
}
