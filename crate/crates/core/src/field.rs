//! Totally real fields `K = Q[x]/(Q)` generated by a primitive reciprocal
//! unit `u0`, where `Q(X) = X^d P(X + 1/X - L)` for a totally real seed `P`.
//!
//! Elements live in the order `Z[u0]` with power basis `1, u0, ..., u0^(2d-1)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::factor::{irreducible_over_q, Irreducibility};
use crate::arith::interval::Interval;
use crate::arith::matrix::RatMatrix;
use crate::arith::poly::{compose_symmetric, IntPoly, RatPoly};
use crate::arith::rational::{self, Rational};
use crate::arith::roots::{self, RootInterval};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct FieldOptions {
    /// Width the stored root intervals are refined to.
    pub width: Rational,
    pub degree_cap: usize,
}

impl Default for FieldOptions {
    fn default() -> Self {
        FieldOptions {
            width: rational::dyadic_width(64),
            degree_cap: crate::arith::DEFAULT_DEGREE_CAP,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FieldSpec {
    seed: IntPoly,
    shift: BigInt,
    q: IntPoly,
    d: usize,
    /// `[l_1, 1/l_1, l_2, 1/l_2, ...]` with `l_1 > l_2 > ... > 1`.
    roots: Vec<RootInterval>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem {
    coords: Vec<Rational>,
}

impl FieldElem {
    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// The coordinate polynomial `sum c_i X^i`.
    pub fn as_poly(&self) -> RatPoly {
        RatPoly::new(self.coords.clone())
    }
}

/// A unit found by [`FieldSpec::unit_search`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoundUnit {
    pub elem: FieldElem,
    pub norm: Rational,
    pub totally_positive: bool,
}

pub fn build_field(seed: &IntPoly, shift: &BigInt, opts: &FieldOptions) -> Result<FieldSpec> {
    if !seed.is_monic() {
        return Err(Error::NotMonic(seed.to_string()));
    }
    let d = seed.degree().unwrap();
    if d == 0 {
        return Err(Error::Invalid("seed polynomial must have degree >= 1".into()));
    }
    if 2 * d > opts.degree_cap {
        return Err(Error::DegreeCapExceeded {
            degree: 2 * d,
            cap: opts.degree_cap,
        });
    }
    if let Irreducibility::Reducible(w) = irreducible_over_q(seed, opts.degree_cap)? {
        return Err(Error::ReducibleSeed {
            poly: seed.to_string(),
            witness: w.to_string(),
        });
    }
    let real = roots::count_real_roots(seed);
    if real != d {
        return Err(Error::NotTotallyReal {
            poly: seed.to_string(),
            real_roots: real,
            degree: d,
        });
    }
    // shift + alpha > 2 for every root alpha  <=>  all roots lie above 2 - shift.
    let threshold = rational::int(2) - rational::from_big(shift);
    if roots::count_roots_above(seed, &threshold) != d {
        return Err(Error::ShiftTooSmall {
            shift: shift.to_string(),
        });
    }

    let q = compose_symmetric(seed, shift)?;
    if let Irreducibility::Reducible(w) = irreducible_over_q(&q, opts.degree_cap)? {
        return Err(Error::ReducibleComposite {
            poly: q.to_string(),
            witness: w.to_string(),
            shift: shift.to_string(),
        });
    }
    let sorted = roots::isolate_real_roots(&q, &opts.width)?;
    if sorted.len() != 2 * d {
        return Err(Error::RootCertificate(format!(
            "{} has {} real roots, expected {}",
            q,
            sorted.len(),
            2 * d
        )));
    }
    if roots::count_roots_above(&q, &Rational::zero()) != 2 * d {
        return Err(Error::RootCertificate("not all roots are positive".into()));
    }
    let paired = certify_pairing(sorted)?;
    Ok(FieldSpec {
        seed: seed.clone(),
        shift: shift.clone(),
        q,
        d,
        roots: paired,
    })
}

/// Palindromic `Q` has its roots closed under `x -> 1/x`, and inversion
/// reverses the order of positive reals, so descending root `j` pairs with
/// root `2d-1-j`. Intervals confirm it: the partner product interval contains
/// 1 and every other product interval is refined until it excludes 1.
fn certify_pairing(mut sorted: Vec<RootInterval>) -> Result<Vec<RootInterval>> {
    let n = sorted.len();
    let one = Rational::one();
    for _ in 0..512 {
        let mut ok = true;
        for j in 0..n {
            for k in j..n {
                let prod = &sorted[j].interval() * &sorted[k].interval();
                if k == n - 1 - j {
                    if !prod.contains(&one) {
                        return Err(Error::RootCertificate(format!(
                            "paired roots {j} and {k} do not multiply to 1"
                        )));
                    }
                } else if prod.contains(&one) {
                    ok = false;
                }
            }
        }
        if ok {
            let mut out = Vec::with_capacity(n);
            for j in 0..n / 2 {
                out.push(sorted[j].clone());
                out.push(sorted[n - 1 - j].clone());
            }
            return Ok(out);
        }
        for r in sorted.iter_mut() {
            *r = r.bisect();
        }
    }
    Err(Error::RootCertificate("reciprocal pairing not separated".into()))
}

impl FieldSpec {
    pub fn seed(&self) -> &IntPoly {
        &self.seed
    }

    pub fn shift(&self) -> &BigInt {
        &self.shift
    }

    /// Minimal polynomial of `u0`.
    pub fn q(&self) -> &IntPoly {
        &self.q
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn degree(&self) -> usize {
        2 * self.d
    }

    /// Roots in paired order; see [`FieldSpec::pairing`].
    pub fn roots(&self) -> &[RootInterval] {
        &self.roots
    }

    pub fn pairing(&self) -> Vec<(usize, usize)> {
        (0..self.d).map(|k| (2 * k, 2 * k + 1)).collect()
    }

    pub fn elem(&self, coords: Vec<Rational>) -> Result<FieldElem> {
        if coords.len() != self.degree() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for a degree {} field",
                coords.len(),
                self.degree()
            )));
        }
        Ok(FieldElem { coords })
    }

    pub fn elem_from_ints(&self, coords: &[i64]) -> Result<FieldElem> {
        self.elem(coords.iter().map(|&c| rational::int(c)).collect())
    }

    fn reduce(&self, p: &RatPoly) -> FieldElem {
        let r = p.rem(&self.q.to_rat());
        let mut coords: Vec<Rational> = r.coeffs().to_vec();
        coords.resize(self.degree(), Rational::zero());
        FieldElem { coords }
    }

    pub fn from_poly(&self, p: &RatPoly) -> FieldElem {
        self.reduce(p)
    }

    pub fn one(&self) -> FieldElem {
        self.reduce(&RatPoly::one())
    }

    /// The reciprocal unit `u0`.
    pub fn generator(&self) -> FieldElem {
        self.reduce(&RatPoly::x())
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        FieldElem {
            coords: a.coords.iter().map(|x| -x.clone()).collect(),
        }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.reduce(&(&a.as_poly() * &b.as_poly()))
    }

    pub fn pow(&self, a: &FieldElem, e: u32) -> FieldElem {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Inverse of a nonzero element, solving `M_a x = 1`.
    pub fn inverse(&self, a: &FieldElem) -> Result<FieldElem> {
        let m = self.mul_matrix(a);
        let x = m
            .solve(&self.one().coords)
            .ok_or_else(|| Error::Invalid("zero has no inverse".into()))?;
        Ok(FieldElem { coords: x })
    }

    /// Matrix of multiplication by `u` in the power basis; column `j` holds
    /// the coordinates of `u * u0^j`.
    pub fn mul_matrix(&self, u: &FieldElem) -> RatMatrix {
        let n = self.degree();
        let cols: Vec<Vec<Rational>> = (0..n)
            .map(|j| {
                self.reduce(&u.as_poly().shift_up(j)).coords
            })
            .collect();
        RatMatrix::from_columns(n, &cols).expect("square multiplication matrix")
    }

    pub fn norm(&self, u: &FieldElem) -> Rational {
        self.mul_matrix(u).det().expect("square")
    }

    pub fn trace(&self, u: &FieldElem) -> Rational {
        self.mul_matrix(u).trace()
    }

    /// Enclosure of `sigma_j(u)` of width at most `width`, where `j` indexes
    /// the paired root order.
    pub fn embedding_value(&self, u: &FieldElem, j: usize, width: &Rational) -> Interval {
        let p = u.as_poly();
        let mut root = self.roots[j].clone();
        loop {
            let v = root.interval().eval_poly(&p);
            if &v.width() <= width {
                return v;
            }
            root = root.bisect();
        }
    }

    pub fn embedding_values(&self, u: &FieldElem, width: &Rational) -> Vec<Interval> {
        (0..self.degree())
            .map(|j| self.embedding_value(u, j, width))
            .collect()
    }

    /// Enclosure of `sigma_j(u)` refined until it excludes zero. `u` must be
    /// nonzero (then every embedding is nonzero since `Q` is irreducible).
    pub fn embedding_sign_definite(&self, u: &FieldElem, j: usize) -> Interval {
        assert!(!u.is_zero(), "zero element has no sign");
        let p = u.as_poly();
        let mut root = self.roots[j].clone();
        loop {
            let v = root.interval().eval_poly(&p);
            if v.is_positive() || v.is_negative() {
                return v;
            }
            root = root.bisect();
        }
    }

    pub fn is_totally_positive(&self, u: &FieldElem) -> bool {
        !u.is_zero() && (0..self.degree()).all(|j| self.embedding_sign_definite(u, j).is_positive())
    }

    /// Every `u` in `Z[u0]` with power-basis coordinates in `[-bound, bound]`
    /// and norm `+-1`, one per `{u, -u}` pair (the one with positive largest
    /// embedding), sorted lexicographically by coordinates.
    pub fn unit_search(&self, bound: u32) -> Vec<FoundUnit> {
        let n = self.degree();
        let b = bound as i64;
        let mut seen: BTreeSet<FieldElem> = BTreeSet::new();
        let mut coords = vec![-b; n];
        if bound > 0 {
            loop {
                let u = FieldElem {
                    coords: coords.iter().map(|&c| rational::int(c)).collect(),
                };
                if !u.is_zero() && self.norm(&u).abs().is_one() {
                    let rep = if self.embedding_sign_definite(&u, 0).is_positive() {
                        u
                    } else {
                        self.neg(&u)
                    };
                    seen.insert(rep);
                }
                // Odometer over the box, last coordinate fastest.
                let mut i = n;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    if coords[i] < b {
                        coords[i] += 1;
                        break;
                    }
                    coords[i] = -b;
                    if i == 0 {
                        i = usize::MAX;
                        break;
                    }
                }
                if i == usize::MAX {
                    break;
                }
            }
        }
        seen.into_iter()
            .map(|elem| FoundUnit {
                norm: self.norm(&elem),
                totally_positive: self.is_totally_positive(&elem),
                elem,
            })
            .collect()
    }
}
