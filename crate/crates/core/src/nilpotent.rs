//! The free 2-step nilpotent algebra `f_2d = V + L^2 V`, the induced action
//! of a unit on `W = L^2 V`, the splitting `W = W1 + W2`, the quotient
//! `n = f_2d / W2`, and the lattice subgroup of the corresponding group.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::factor::irreducible_over_q;
use crate::arith::matrix::{lattice_basis, RatMatrix};
use crate::arith::poly::IntPoly;
use crate::arith::rational::{self, Rational};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::lie::LieAlgebra;

/// Lexicographic pairs `(k, l)`, `k < l`, indexing the basis `f_{k,l}` of
/// `L^2 V`. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeIndex {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl WedgeIndex {
    pub fn new(n: usize) -> Self {
        let pairs = (0..n)
            .flat_map(|k| (k + 1..n).map(move |l| (k, l)))
            .collect();
        WedgeIndex { n, pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn index_of(&self, k: usize, l: usize) -> Option<usize> {
        if k >= l || l >= self.n {
            return None;
        }
        // Rows before k contribute (n-1) + (n-2) + ... + (n-k) entries.
        Some(k * self.n - k * (k + 1) / 2 + (l - k - 1))
    }
}

/// The induced map `L^2 M` on `W` in the [`WedgeIndex`] basis; entries are
/// 2x2 minors of `M`.
pub fn wedge_matrix(m: &RatMatrix) -> Result<RatMatrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("wedge of non-square matrix".into()));
    }
    let n = m.rows();
    if !n.is_multiple_of(2) {
        return Err(Error::OddDimension(n));
    }
    let idx = WedgeIndex::new(n);
    let pairs = idx.pairs();
    Ok(RatMatrix::from_fn(idx.len(), idx.len(), |r, c| {
        let (i, j) = pairs[r];
        let (k, l) = pairs[c];
        m.get(i, k) * m.get(j, l) - m.get(j, k) * m.get(i, l)
    }))
}

/// `charpoly(L^2 M) = (x - 1)^d * cofactor` with `cofactor(1) != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedFactor {
    pub charpoly: IntPoly,
    pub cofactor: IntPoly,
    pub cofactor_at_one: BigInt,
}

pub fn fixed_factor(wedge: &RatMatrix, d: usize) -> Result<FixedFactor> {
    let cp = wedge.charpoly()?;
    let charpoly = cp
        .to_int()
        .ok_or_else(|| Error::Invalid("wedge characteristic polynomial not integral".into()))?;
    let linear = IntPoly::from_i64s(&[-1, 1]);
    let cofactor = charpoly
        .exact_div(&linear.pow(d))
        .ok_or_else(|| Error::SplitDimension {
            expected: d,
            found: multiplicity_of_one(&charpoly),
        })?;
    let cofactor_at_one = cofactor.eval(&BigInt::one());
    if cofactor_at_one.is_zero() {
        return Err(Error::SplitDimension {
            expected: d,
            found: multiplicity_of_one(&charpoly),
        });
    }
    Ok(FixedFactor {
        charpoly,
        cofactor,
        cofactor_at_one,
    })
}

fn multiplicity_of_one(p: &IntPoly) -> usize {
    let linear = IntPoly::from_i64s(&[-1, 1]);
    let mut m = 0;
    let mut cur = p.clone();
    while let Some(q) = cur.exact_div(&linear) {
        if cur.is_zero() {
            break;
        }
        cur = q;
        m += 1;
    }
    m
}

/// `W = W1 + W2` with `W1` the fixed space of `L^2 M_{u0}` and `W2` the
/// image of `L^2 M_{u0} - I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    d: usize,
    w1: Vec<Vec<Rational>>,
    w2: Vec<Vec<Rational>>,
    wedge_u0: RatMatrix,
    /// `W -> W/W2` in the coordinates of the `w1` basis (`d x dim W`).
    projection: RatMatrix,
}

impl Splitting {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn w1_basis(&self) -> &[Vec<Rational>] {
        &self.w1
    }

    pub fn w2_basis(&self) -> &[Vec<Rational>] {
        &self.w2
    }

    pub fn wedge_u0(&self) -> &RatMatrix {
        &self.wedge_u0
    }

    pub fn projection(&self) -> &RatMatrix {
        &self.projection
    }

    pub fn w_dim(&self) -> usize {
        self.wedge_u0.rows()
    }

    pub fn w1_matrix(&self) -> RatMatrix {
        RatMatrix::from_columns(self.w_dim(), &self.w1).expect("w1 columns")
    }

    pub fn w2_matrix(&self) -> RatMatrix {
        RatMatrix::from_columns(self.w_dim(), &self.w2).expect("w2 columns")
    }

    /// Projector onto `W1` along `W2`.
    pub fn projector(&self) -> RatMatrix {
        &self.w1_matrix() * &self.projection
    }
}

pub fn split_w(f: &FieldSpec) -> Result<Splitting> {
    let m = f.mul_matrix(&f.generator());
    split_w_matrix(&wedge_matrix(&m)?, f.d())
}

/// Splits `W` for an arbitrary wedge action, requiring a `d`-dimensional
/// fixed space complementary to the image of `wedge - I`.
pub fn split_w_matrix(wedge: &RatMatrix, d: usize) -> Result<Splitting> {
    let n = wedge.rows();
    let shifted = wedge - &RatMatrix::identity(n);
    let w1 = shifted.kernel();
    if w1.len() != d {
        return Err(Error::SplitDimension {
            expected: d,
            found: w1.len(),
        });
    }
    let w2 = shifted.column_space();
    let basis: Vec<Vec<Rational>> = w1.iter().chain(&w2).cloned().collect();
    let change = RatMatrix::from_columns(n, &basis)?;
    if basis.len() != n || change.rank() != n {
        return Err(Error::SplitNotDirect);
    }
    let w1m = RatMatrix::from_columns(n, &w1)?;
    if (wedge * &w1m) != w1m {
        return Err(Error::NotInvariant("W1 is not fixed".into()));
    }
    if !w2.is_empty() {
        let w2m = RatMatrix::from_columns(n, &w2)?;
        if !w2m.spans(&(wedge * &w2m)) {
            return Err(Error::NotInvariant("W2 under the generator".into()));
        }
    }
    let inv = change.inverse()?;
    let projection = RatMatrix::from_fn(d, n, |i, j| inv.get(i, j).clone());
    Ok(Splitting {
        d,
        w1,
        w2,
        wedge_u0: wedge.clone(),
        projection,
    })
}

/// `n = V + W/W2` with basis `e_1..e_2d, z_1..z_d`, where `z_i` is the class
/// of the `i`-th `W1` basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilAlgebra {
    lie: LieAlgebra,
    v_dim: usize,
}

impl NilAlgebra {
    /// Wraps a 2-step algebra whose last `dim - v_dim` basis vectors are the
    /// designated center.
    pub fn new(lie: LieAlgebra, v_dim: usize) -> Result<Self> {
        if v_dim > lie.dim() {
            return Err(Error::DimensionMismatch("v_dim exceeds dimension".into()));
        }
        Ok(NilAlgebra { lie, v_dim })
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn v_dim(&self) -> usize {
        self.v_dim
    }

    pub fn center_dim(&self) -> usize {
        self.dim() - self.v_dim
    }

    pub fn center_indices(&self) -> Vec<usize> {
        (self.v_dim..self.dim()).collect()
    }

    /// `[v, v']` in center coordinates for `v, v'` in `V`.
    pub fn center_bracket(&self, v: &[Rational], w: &[Rational]) -> Vec<Rational> {
        let mut x = v.to_vec();
        x.resize(self.dim(), Rational::zero());
        let mut y = w.to_vec();
        y.resize(self.dim(), Rational::zero());
        self.lie.bracket(&x, &y)[self.v_dim..].to_vec()
    }
}

pub fn quotient_algebra(f: &FieldSpec, s: &Splitting) -> Result<NilAlgebra> {
    let n = f.degree();
    let d = s.d();
    let dim = n + d;
    let idx = WedgeIndex::new(n);
    let mut brackets = Vec::new();
    for (c, &(k, l)) in idx.pairs().iter().enumerate() {
        let mut v = vec![Rational::zero(); dim];
        for i in 0..d {
            v[n + i] = s.projection().get(i, c).clone();
        }
        brackets.push((k, l, v));
    }
    NilAlgebra::new(LieAlgebra::from_brackets(dim, &brackets)?, n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisenbergCertificate {
    pub dim: usize,
    pub center_dim: usize,
    pub derived_dim: usize,
    pub two_step: bool,
    pub derived_equals_center: bool,
    pub q_irreducible: bool,
    pub note: &'static str,
}

pub const HEISENBERG_NOTE: &str = "real isomorphism with h3^d follows from the eigenbasis \
v_{2j-1}, v_{2j} of rho(u0) and w_j = [v_{2j-1}, v_{2j}]; not recomputed. Irreducibility of the \
rational structure follows from irreducibility of Q.";

pub fn verify_heisenberg_power(n: &NilAlgebra, f: &FieldSpec) -> Result<HeisenbergCertificate> {
    let lie = n.lie();
    let dim = lie.dim();
    let basis: Vec<Vec<Rational>> = (0..dim)
        .map(|i| {
            let mut v = vec![Rational::zero(); dim];
            v[i] = Rational::one();
            v
        })
        .collect();
    let two_step = basis.iter().all(|a| {
        basis.iter().all(|b| {
            let ab = lie.bracket(a, b);
            basis.iter().all(|c| lie.bracket(c, &ab).iter().all(Zero::is_zero))
        })
    });
    if !two_step {
        return Err(Error::Heisenberg("[n, [n, n]] != 0".into()));
    }
    let derived = lie.derived_algebra();
    let center = lie.center();
    let designated: Vec<Vec<Rational>> = n.center_indices().iter().map(|&i| basis[i].clone()).collect();
    let same_span = |a: &[Vec<Rational>], b: &[Vec<Rational>]| {
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        let am = RatMatrix::from_columns(dim, a).unwrap();
        let bm = RatMatrix::from_columns(dim, b).unwrap();
        am.spans(&bm) && bm.spans(&am)
    };
    let derived_equals_center = same_span(&derived, &center) && same_span(&center, &designated);
    if !derived_equals_center || derived.len() != f.d() {
        return Err(Error::Heisenberg(format!(
            "[n, n] has dimension {}, center has dimension {}, expected {}",
            derived.len(),
            center.len(),
            f.d()
        )));
    }
    let q_irreducible = irreducible_over_q(f.q(), f.degree().max(crate::arith::DEFAULT_DEGREE_CAP))?
        .is_irreducible();
    if !q_irreducible {
        return Err(Error::Heisenberg("Q is reducible".into()));
    }
    Ok(HeisenbergCertificate {
        dim,
        center_dim: center.len(),
        derived_dim: derived.len(),
        two_step,
        derived_equals_center,
        q_irreducible,
        note: HEISENBERG_NOTE,
    })
}

/// A group element in exponential coordinates: `exp(v + w)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NilPoint {
    pub v: Vec<Rational>,
    pub w: Vec<Rational>,
}

impl NilPoint {
    pub fn identity(n: &NilAlgebra) -> Self {
        NilPoint {
            v: vec![Rational::zero(); n.v_dim()],
            w: vec![Rational::zero(); n.center_dim()],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.v.iter().chain(&self.w).all(Zero::is_zero)
    }
}

/// `(v, w)(v', w') = (v + v', w + w' + [v, v']/2)`: the BCH series stops at
/// the first bracket in a 2-step algebra.
pub fn nil_mul(a: &NilPoint, b: &NilPoint, n: &NilAlgebra) -> NilPoint {
    let half = rational::ratio(1, 2);
    let br = n.center_bracket(&a.v, &b.v);
    NilPoint {
        v: a.v.iter().zip(&b.v).map(|(x, y)| x + y).collect(),
        w: a.w
            .iter()
            .zip(&b.w)
            .zip(&br)
            .map(|((x, y), z)| x + y + &half * z)
            .collect(),
    }
}

pub fn nil_inv(a: &NilPoint) -> NilPoint {
    NilPoint {
        v: a.v.iter().map(|x| -x.clone()).collect(),
        w: a.w.iter().map(|x| -x.clone()).collect(),
    }
}

pub fn nil_commutator(a: &NilPoint, b: &NilPoint, n: &NilAlgebra) -> NilPoint {
    let ab = nil_mul(a, b, n);
    let abai = nil_mul(&ab, &nil_inv(a), n);
    nil_mul(&abai, &nil_inv(b), n)
}

/// Generators of the lattice subgroup and its denominator certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaN {
    pub generators: Vec<NilPoint>,
    /// Integer basis of the center lattice spanned by the brackets
    /// `[e_k, e_l]`, in center coordinates.
    pub center_lattice: Vec<Vec<Rational>>,
    /// Products of generators and inverses have lattice coordinates in
    /// `(1/D) Z`.
    pub denominator: BigInt,
}

impl GammaN {
    /// Coordinates of `p` in the generator lattice: `v` followed by the
    /// center part expressed in `center_lattice`.
    pub fn lattice_coordinates(&self, p: &NilPoint) -> Vec<Rational> {
        let dim = p.w.len();
        let basis = RatMatrix::from_columns(dim, &self.center_lattice).expect("lattice basis");
        let wc = basis.solve(&p.w).expect("center lattice spans the center");
        p.v.iter().cloned().chain(wc).collect()
    }
}

pub fn gamma_n_generators(n: &NilAlgebra) -> Result<GammaN> {
    let vd = n.v_dim();
    let cd = n.center_dim();
    let unit = |i: usize, len: usize| {
        let mut v = vec![Rational::zero(); len];
        v[i] = Rational::one();
        v
    };
    let mut generators: Vec<NilPoint> = (0..vd)
        .map(|k| NilPoint {
            v: unit(k, vd),
            w: vec![Rational::zero(); cd],
        })
        .collect();
    let mut brackets = Vec::new();
    for k in 0..vd {
        for l in k + 1..vd {
            let w = n.center_bracket(&unit(k, vd), &unit(l, vd));
            brackets.push(w.clone());
            generators.push(NilPoint {
                v: vec![Rational::zero(); vd],
                w,
            });
        }
    }
    let den = rational::common_denominator(brackets.iter().flatten());
    let scaled: Vec<Vec<BigInt>> = brackets
        .iter()
        .map(|w| {
            w.iter()
                .map(|x| (x * rational::from_big(&den)).to_integer())
                .collect()
        })
        .collect();
    let center_lattice: Vec<Vec<Rational>> = lattice_basis(&scaled)
        .into_iter()
        .map(|row| row.iter().map(|x| Rational::new(x.clone(), den.clone())).collect())
        .collect();
    if center_lattice.len() != cd {
        return Err(Error::Heisenberg(format!(
            "brackets span a rank {} lattice in a {}-dimensional center",
            center_lattice.len(),
            cd
        )));
    }
    let mut out = GammaN {
        generators,
        center_lattice,
        denominator: BigInt::one(),
    };
    let mut denominator = BigInt::one();
    let gens = out.generators.clone();
    for a in &gens {
        for b in &gens {
            for (x, y) in [(a.clone(), b.clone()), (a.clone(), nil_inv(b))] {
                let p = nil_mul(&x, &y, n);
                for c in out.lattice_coordinates(&p) {
                    denominator = denominator.lcm(c.denom());
                }
            }
        }
    }
    out.denominator = denominator;
    Ok(out)
}

/// `charpoly(L^2 M)` divisible by `(x - 1)^d`; convenience over a field.
pub fn wedge_fixed_factor(f: &FieldSpec) -> Result<FixedFactor> {
    let w = wedge_matrix(&f.mul_matrix(&f.generator()))?;
    fixed_factor(&w, f.d())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, ratio};
    use crate::field::{build_field, FieldOptions};
    use proptest::prelude::*;
    use std::sync::OnceLock;

    fn quadratic() -> &'static FieldSpec {
        static F: OnceLock<FieldSpec> = OnceLock::new();
        F.get_or_init(|| {
            build_field(&IntPoly::from_i64s(&[0, 1]), &BigInt::from(3), &FieldOptions::default())
                .unwrap()
        })
    }

    fn quartic() -> &'static FieldSpec {
        static F: OnceLock<FieldSpec> = OnceLock::new();
        F.get_or_init(|| {
            build_field(&IntPoly::from_i64s(&[-2, 0, 1]), &BigInt::from(4), &FieldOptions::default())
                .unwrap()
        })
    }

    #[test]
    fn wedge_index_ordering() {
        let idx = WedgeIndex::new(4);
        assert_eq!(idx.len(), 6);
        assert_eq!(idx.pairs()[0], (0, 1));
        assert_eq!(idx.pairs()[5], (2, 3));
        for (c, &(k, l)) in idx.pairs().iter().enumerate() {
            assert_eq!(idx.index_of(k, l), Some(c));
        }
        assert_eq!(idx.index_of(2, 1), None);
    }

    #[test]
    fn wedge_examples() {
        let m = RatMatrix::from_i64(&[&[0, -1], &[1, 3]]);
        assert_eq!(wedge_matrix(&m).unwrap(), RatMatrix::from_i64(&[&[1]]));
        assert!(wedge_matrix(&RatMatrix::identity(4)).unwrap().is_identity());
        assert_eq!(wedge_matrix(&RatMatrix::identity(3)), Err(Error::OddDimension(3)));
    }

    #[test]
    fn quartic_wedge_charpoly() {
        let ff = wedge_fixed_factor(quartic()).unwrap();
        assert_eq!(ff.charpoly.degree(), Some(6));
        assert_eq!(ff.cofactor.degree(), Some(4));
        assert!(!ff.cofactor_at_one.is_zero());
        let w = wedge_matrix(&quartic().mul_matrix(&quartic().generator())).unwrap();
        assert_eq!((&w - &RatMatrix::identity(6)).rank(), 4);
    }

    #[test]
    fn splitting_dimensions() {
        let s1 = split_w(quadratic()).unwrap();
        assert_eq!(s1.w1_basis().len(), 1);
        assert!(s1.w2_basis().is_empty());
        let s2 = split_w(quartic()).unwrap();
        assert_eq!(s2.w1_basis().len(), 2);
        assert_eq!(s2.w2_basis().len(), 4);
        let p = s2.projector();
        assert_eq!(&p * &p, p);
        assert_eq!(&p * s2.wedge_u0(), s2.wedge_u0() * &p);
    }

    #[test]
    fn degenerate_split_rejected() {
        assert_eq!(
            split_w_matrix(&RatMatrix::identity(6), 2),
            Err(Error::SplitDimension { expected: 2, found: 6 })
        );
        // Nontrivial Jordan block at 1: kernel and image of (J - I) coincide.
        let j = RatMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        assert_eq!(split_w_matrix(&j, 1), Err(Error::SplitNotDirect));
    }

    #[test]
    fn inoue_quotient_is_heisenberg() {
        let f = quadratic();
        let s = split_w(f).unwrap();
        let n = quotient_algebra(f, &s).unwrap();
        assert_eq!(n.dim(), 3);
        assert_eq!(n.lie().nonzero_brackets(), vec![(0, 1, vec![int(0), int(0), int(1)])]);
        let cert = verify_heisenberg_power(&n, f).unwrap();
        assert_eq!((cert.dim, cert.center_dim), (3, 1));
        // Group law: (1,0,0)(0,1,0) = (1,1,1/2).
        let a = NilPoint { v: vec![int(1), int(0)], w: vec![int(0)] };
        let b = NilPoint { v: vec![int(0), int(1)], w: vec![int(0)] };
        let ab = nil_mul(&a, &b, &n);
        assert_eq!(ab, NilPoint { v: vec![int(1), int(1)], w: vec![ratio(1, 2)] });
        // Commutator of the generators is the central generator.
        assert_eq!(
            nil_commutator(&a, &b, &n),
            NilPoint { v: vec![int(0), int(0)], w: vec![int(1)] }
        );
        let g = gamma_n_generators(&n).unwrap();
        assert_eq!(g.generators.len(), 3);
        assert_eq!(g.denominator, BigInt::from(2));
    }

    #[test]
    fn quartic_quotient() {
        let f = quartic();
        let s = split_w(f).unwrap();
        let n = quotient_algebra(f, &s).unwrap();
        assert_eq!((n.dim(), n.center_dim()), (6, 2));
        let cert = verify_heisenberg_power(&n, f).unwrap();
        assert_eq!(cert.derived_dim, 2);
        let g = gamma_n_generators(&n).unwrap();
        assert_eq!(g.generators.len(), 4 + 6);
        let d = rational::from_big(&g.denominator);
        for a in &g.generators {
            for b in &g.generators {
                for c in g.lattice_coordinates(&nil_mul(a, b, &n)) {
                    assert!((&c * &d).is_integer());
                }
            }
        }
        assert!(nil_mul(&g.generators[0], &nil_inv(&g.generators[0]), &n).is_identity());
    }

    #[test]
    fn abelian_algebra_fails_certificate() {
        let n = NilAlgebra::new(LieAlgebra::abelian(3), 2).unwrap();
        assert!(matches!(
            verify_heisenberg_power(&n, quadratic()),
            Err(Error::Heisenberg(_))
        ));
    }

    fn rat_matrix(n: usize) -> impl Strategy<Value = RatMatrix> {
        proptest::collection::vec((-5i64..5, 1i64..3), n * n)
            .prop_map(move |v| RatMatrix::from_fn(n, n, |i, j| ratio(v[i * n + j].0, v[i * n + j].1)))
    }

    fn point(vd: usize, cd: usize) -> impl Strategy<Value = NilPoint> {
        proptest::collection::vec((-6i64..6, 1i64..4), vd + cd).prop_map(move |c| {
            let r: Vec<Rational> = c.iter().map(|&(p, q)| ratio(p, q)).collect();
            NilPoint { v: r[..vd].to_vec(), w: r[vd..].to_vec() }
        })
    }

    proptest! {
        #[test]
        fn wedge_is_functorial(a in rat_matrix(4), b in rat_matrix(4)) {
            prop_assert_eq!(
                wedge_matrix(&(&a * &b)).unwrap(),
                &wedge_matrix(&a).unwrap() * &wedge_matrix(&b).unwrap()
            );
        }

        #[test]
        fn group_law_is_associative(a in point(4, 2), b in point(4, 2), c in point(4, 2)) {
            let f = quartic();
            let n = quotient_algebra(f, &split_w(f).unwrap()).unwrap();
            let left = nil_mul(&nil_mul(&a, &b, &n), &c, &n);
            let right = nil_mul(&a, &nil_mul(&b, &c, &n), &n);
            prop_assert_eq!(left, right);
            prop_assert!(nil_mul(&a, &nil_inv(&a), &n).is_identity());
            prop_assert_eq!(nil_mul(&a, &NilPoint::identity(&n), &n), a);
        }
    }
}
