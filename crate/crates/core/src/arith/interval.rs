//! Closed rational intervals with outward-exact arithmetic (endpoints are
//! exact rationals, so no rounding is involved).

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::poly::RatPoly;
use super::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rational::int(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Strictly above `x`.
    pub fn above(&self, x: &Rational) -> bool {
        &self.lo > x
    }

    /// Strictly below `x`.
    pub fn below(&self, x: &Rational) -> bool {
        &self.hi < x
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if a <= b {
            Interval::new(a, b)
        } else {
            Interval::new(b, a)
        }
    }

    /// Horner evaluation; encloses `{p(x) : x in self}`.
    pub fn eval_poly(&self, p: &RatPoly) -> Interval {
        p.coeffs()
            .iter()
            .rev()
            .fold(Interval::point(Rational::zero()), |acc, c| {
                &(&acc * self) + &Interval::point(c.clone())
            })
    }

    pub fn to_f64(&self) -> f64 {
        rational::to_f64(&self.midpoint())
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval::new(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval::new(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::new(-self.hi.clone(), -self.lo.clone())
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, ratio};

    #[test]
    fn arithmetic_encloses() {
        let a = Interval::new(int(-1), int(2));
        let b = Interval::new(int(3), int(4));
        assert_eq!(&a * &b, Interval::new(int(-4), int(8)));
        assert_eq!(&a - &b, Interval::new(int(-5), int(-1)));
        assert_eq!(-&a, Interval::new(int(-2), int(1)));
        assert!(b.is_positive() && !a.is_positive());
    }

    #[test]
    fn polynomial_enclosure() {
        let p = RatPoly::from_ints(&[-2, 0, 1]);
        let x = Interval::new(ratio(7, 5), ratio(3, 2));
        let y = x.eval_poly(&p);
        assert!(y.contains(&(ratio(7, 5) * ratio(7, 5) - int(2))));
        assert!(y.contains(&(ratio(3, 2) * ratio(3, 2) - int(2))));
    }
}
