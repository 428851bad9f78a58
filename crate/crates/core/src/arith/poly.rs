//! Dense univariate polynomials with exact coefficients, stored in ascending
//! degree order with no trailing zeros. The zero polynomial has no
//! coefficients and degree `None`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{self, Rational};
use crate::error::{Error, Result};

pub trait Coeff:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + for<'a> Add<&'a T, Output = T>
        + for<'a> Sub<&'a T, Output = T>
        + for<'a> Mul<&'a T, Output = T>
{
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type IntPoly = Poly<BigInt>;
pub type RatPoly = Poly<Rational>;

impl<T: Coeff> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `X`.
    pub fn x() -> Self {
        Poly::new(vec![T::zero(), T::one()])
    }

    pub fn monomial(c: T, degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); degree + 1];
        coeffs[degree] = c;
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// True iff the coefficient list reads the same reversed.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        let mut k = T::zero();
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        for c in self.coeffs.iter().skip(1) {
            k = k + &T::one();
            out.push(c.clone() * &k);
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self(inner(X))` by Horner's rule.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * inner) + &Poly::constant(c.clone()))
    }

    /// Multiplies by `X^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Coeff> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Self) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl<T: Coeff> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Self) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl<T: Coeff> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Self) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + &(a.clone() * b);
            }
        }
        Poly::new(out)
    }
}

impl<T: Coeff> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl<T: Coeff> $trait for Poly<T> {
            type Output = Poly<T>;
            fn $method(self, rhs: Self) -> Poly<T> {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl IntPoly {
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Parses the comma-separated ascending coefficient format, e.g.
    /// `"1,-3,1"` for `X^2 - 3X + 1`.
    pub fn parse(text: &str) -> Result<Self> {
        let coeffs = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {t:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(coeffs))
    }

    /// Inverse of [`IntPoly::parse`]. The zero polynomial renders as `"0"`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        Poly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.content().is_one()
    }

    pub fn to_rat(&self) -> RatPoly {
        self.map(rational::from_big)
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        self.to_rat().eval(x)
    }

    /// Exact quotient `self / divisor` when it exists in `Z[X]`.
    pub fn exact_div(&self, divisor: &IntPoly) -> Option<IntPoly> {
        if divisor.is_zero() {
            return None;
        }
        let (q, r) = self.to_rat().div_rem(&divisor.to_rat());
        if !r.is_zero() {
            return None;
        }
        q.to_int()
    }

    pub fn l2_norm_ceil(&self) -> BigInt {
        let sq: BigInt = self.coeffs.iter().map(|c| c * c).sum();
        let r = sq.sqrt();
        if &r * &r == sq {
            r
        } else {
            r + 1
        }
    }
}

impl RatPoly {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * dc);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &RatPoly) -> RatPoly {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Integer polynomial if every coefficient is integral.
    pub fn to_int(&self) -> Option<IntPoly> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(Poly::new)
    }

    /// Primitive integer polynomial with the same roots.
    pub fn to_primitive_int(&self) -> IntPoly {
        let den = rational::common_denominator(&self.coeffs);
        let scaled = self.scale(&rational::from_big(&den));
        scaled.to_int().expect("cleared denominators").primitive_part()
    }
}

/// `X^d * P(X + 1/X - shift)` for monic `P` of degree `d`, computed as
/// `sum_i p_i (X^2 - shift*X + 1)^i X^(d-i)`.
pub fn compose_symmetric(p: &IntPoly, shift: &BigInt) -> Result<IntPoly> {
    if !p.is_monic() {
        return Err(Error::NotMonic(p.to_string()));
    }
    let d = p.degree().unwrap();
    let quad = IntPoly::new(vec![BigInt::one(), -shift.clone(), BigInt::one()]);
    let mut acc = IntPoly::zero();
    let mut quad_pow = IntPoly::one();
    for (i, c) in p.coeffs().iter().enumerate() {
        let term = quad_pow.scale(c).shift_up(d - i);
        acc = &acc + &term;
        quad_pow = &quad_pow * &quad;
    }
    Ok(acc)
}

impl<T: Coeff + fmt::Display + Signed> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let a = c.abs();
            if !a.is_one() || i == 0 {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn trims_and_degree() {
        assert_eq!(ip(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(ip(&[0, 0]).degree(), None);
        assert!(ip(&[]).is_zero());
    }

    #[test]
    fn compose_symmetric_examples() {
        let q = compose_symmetric(&ip(&[0, 1]), &BigInt::from(3)).unwrap();
        assert_eq!(q, ip(&[1, -3, 1]));
        let q = compose_symmetric(&ip(&[-2, 0, 1]), &BigInt::from(4)).unwrap();
        assert_eq!(q, ip(&[1, -8, 16, -8, 1]));
        let q = compose_symmetric(&ip(&[0, 1]), &BigInt::from(0)).unwrap();
        assert_eq!(q, ip(&[1, 0, 1]));
        assert!(compose_symmetric(&ip(&[1, 2]), &BigInt::from(3)).is_err());
    }

    #[test]
    fn compose_symmetric_matches_rational_substitution() {
        // X^d * P(X + 1/X - L) evaluated pointwise at rational X.
        let p = ip(&[3, -1, 0, 1]);
        let q = compose_symmetric(&p, &BigInt::from(5)).unwrap();
        for x in [rational::ratio(1, 3), rational::int(2), rational::ratio(-7, 5)] {
            let arg = &x + &x.recip() - rational::int(5);
            let expect = p.eval_rational(&arg) * x.pow(3);
            assert_eq!(q.eval_rational(&x), expect);
        }
    }

    #[test]
    fn palindromy() {
        assert!(ip(&[1, -3, 1]).is_palindromic());
        assert!(!ip(&[-2, 0, 1]).is_palindromic());
        assert!(ip(&[1, -8, 16, -8, 1]).is_palindromic());
    }

    #[test]
    fn text_format() {
        let p = IntPoly::parse("1,-3,1").unwrap();
        assert_eq!(p, ip(&[1, -3, 1]));
        assert_eq!(p.to_text(), "1,-3,1");
        assert_eq!(p.to_string(), "X^2 - 3X + 1");
        assert!(IntPoly::parse("1,x").is_err());
    }

    #[test]
    fn division_and_gcd() {
        let a = ip(&[-1, 0, 1]).to_rat();
        let b = ip(&[-1, 1]).to_rat();
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, ip(&[1, 1]).to_rat());
        assert!(r.is_zero());
        let g = ip(&[1, 2, 1]).to_rat().gcd(&ip(&[-1, 0, 1]).to_rat());
        assert_eq!(g, ip(&[1, 1]).to_rat());
        assert_eq!(ip(&[-1, 0, 1]).exact_div(&ip(&[1, 1])), Some(ip(&[-1, 1])));
        assert_eq!(ip(&[-1, 0, 1]).exact_div(&ip(&[1, 2])), None);
    }

    #[test]
    fn derivative_and_compose() {
        assert_eq!(ip(&[5, 3, 0, 2]).derivative(), ip(&[3, 0, 6]));
        assert_eq!(ip(&[7]).derivative(), IntPoly::zero());
        let p = ip(&[0, 0, 1]);
        assert_eq!(p.compose(&ip(&[1, 1])), ip(&[1, 2, 1]));
    }

    proptest! {
        #[test]
        fn compose_symmetric_is_palindromic(
            tail in proptest::collection::vec(-20i64..20, 0..5),
            shift in -30i64..30,
        ) {
            let mut c = tail.clone();
            c.push(1);
            let p = ip(&c);
            let q = compose_symmetric(&p, &BigInt::from(shift)).unwrap();
            prop_assert!(q.is_palindromic());
            prop_assert!(q.is_monic());
            prop_assert_eq!(q.degree(), Some(2 * p.degree().unwrap()));
            prop_assert_eq!(q.coeff(0), BigInt::one());
        }

        #[test]
        fn ring_laws(
            a in proptest::collection::vec(-9i64..9, 0..5),
            b in proptest::collection::vec(-9i64..9, 0..5),
            x in -5i64..5,
        ) {
            let (a, b) = (ip(&a), ip(&b));
            let xb = BigInt::from(x);
            prop_assert_eq!((&a * &b).eval(&xb), a.eval(&xb) * b.eval(&xb));
            prop_assert_eq!((&a + &b).eval(&xb), a.eval(&xb) + b.eval(&xb));
            if !b.is_zero() {
                let (q, r) = a.to_rat().div_rem(&b.to_rat());
                prop_assert_eq!(&(&q * &b.to_rat()) + &r, a.to_rat());
                prop_assert!(r.degree() < b.degree());
            }
        }
    }
}
