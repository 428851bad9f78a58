//! Real root isolation with Sturm sequences and bisection refinement.
//!
//! Every [`RootInterval`] is an open interval `(lo, hi)` with dyadic
//! endpoints that are not roots, containing exactly one simple root of its
//! defining polynomial. Refinement only needs sign evaluations.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use super::interval::Interval;
use super::poly::{IntPoly, RatPoly};
use super::rational::{self, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    defining: IntPoly,
    lo: Rational,
    hi: Rational,
    index: usize,
}

impl RootInterval {
    pub fn defining(&self) -> &IntPoly {
        &self.defining
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    /// Position in the descending list of real roots of the defining
    /// polynomial.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn approx(&self) -> f64 {
        self.interval().to_f64()
    }

    /// One bisection step.
    pub fn bisect(&self) -> RootInterval {
        let q = self.defining.to_rat();
        let mid = (&self.lo + &self.hi) / rational::int(2);
        let fm = q.eval(&mid);
        let (lo, hi) = if fm.is_zero() {
            // Rational root: keep it strictly inside a half-width interval.
            let quarter = (&self.hi - &self.lo) / rational::int(4);
            (&mid - &quarter, &mid + &quarter)
        } else if sign(&q.eval(&self.lo)) == sign(&fm) {
            (mid, self.hi.clone())
        } else {
            (self.lo.clone(), mid)
        };
        RootInterval {
            defining: self.defining.clone(),
            lo,
            hi,
            index: self.index,
        }
    }

    /// New interval of width at most `width`.
    pub fn refined_to(&self, width: &Rational) -> RootInterval {
        let mut r = self.clone();
        while &r.width() > width {
            r = r.bisect();
        }
        r
    }
}

fn sign(x: &Rational) -> Ordering {
    x.cmp(&Rational::zero())
}

pub fn sturm_sequence(p: &RatPoly) -> Vec<RatPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

fn sign_changes(seq: &[RatPoly], x: &Rational) -> usize {
    let signs: Vec<Ordering> = seq
        .iter()
        .map(|p| sign(&p.eval(x)))
        .filter(|s| *s != Ordering::Equal)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in the half-open interval `(a, b]`.
pub fn count_roots_in(seq: &[RatPoly], a: &Rational, b: &Rational) -> usize {
    sign_changes(seq, a).saturating_sub(sign_changes(seq, b))
}

/// A power of two strictly larger than every root modulus (Cauchy bound).
pub fn root_bound(p: &RatPoly) -> Rational {
    let lead = p.leading().expect("nonzero polynomial").abs();
    let max = p
        .coeffs()
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(Rational::zero);
    let cauchy = max + Rational::one();
    let mut b = Rational::one();
    while b <= cauchy {
        b *= rational::int(2);
    }
    b
}

/// Fails with the gcd factor when `q` has a repeated root.
pub fn check_squarefree(q: &IntPoly) -> Result<()> {
    let qr = q.to_rat();
    let g = qr.gcd(&qr.derivative());
    if g.degree().unwrap_or(0) > 0 {
        return Err(Error::NotSquarefree {
            gcd: g.to_primitive_int().to_string(),
        });
    }
    Ok(())
}

/// All real roots of a squarefree `q`, each isolated to width at most
/// `target_width`, sorted descending.
pub fn isolate_real_roots(q: &IntPoly, target_width: &Rational) -> Result<Vec<RootInterval>> {
    if q.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    if !target_width.is_positive() {
        return Err(Error::Invalid("target width must be positive".into()));
    }
    check_squarefree(q)?;
    let qr = q.to_rat();
    let seq = sturm_sequence(&qr);
    let b = root_bound(&qr);
    let total = count_roots_in(&seq, &-b.clone(), &b);
    let mut found: Vec<(Rational, Rational)> = Vec::new();
    let mut stack = vec![(-b.clone(), b, total)];
    while let Some((lo, hi, n)) = stack.pop() {
        match n {
            0 => {}
            1 => found.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / rational::int(2);
                if qr.eval(&mid).is_zero() {
                    let mut delta = (&hi - &lo) / rational::int(4);
                    loop {
                        let (l, h) = (&mid - &delta, &mid + &delta);
                        if !qr.eval(&l).is_zero()
                            && !qr.eval(&h).is_zero()
                            && count_roots_in(&seq, &l, &h) == 1
                        {
                            let left = count_roots_in(&seq, &lo, &l);
                            let right = count_roots_in(&seq, &h, &hi);
                            stack.push((lo, l.clone(), left));
                            stack.push((h.clone(), hi, right));
                            found.push((l, h));
                            break;
                        }
                        delta /= rational::int(2);
                    }
                } else {
                    let left = count_roots_in(&seq, &lo, &mid);
                    stack.push((lo, mid.clone(), left));
                    stack.push((mid, hi, n - left));
                }
            }
        }
    }
    found.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(found
        .into_iter()
        .enumerate()
        .map(|(index, (lo, hi))| {
            RootInterval {
                defining: q.clone(),
                lo,
                hi,
                index,
            }
            .refined_to(target_width)
        })
        .collect())
}

/// Number of distinct real roots of `q` strictly greater than `a`.
pub fn count_roots_above(q: &IntPoly, a: &Rational) -> usize {
    let qr = q.to_rat();
    let seq = sturm_sequence(&qr);
    let b = root_bound(&qr).max(a.abs() + Rational::one());
    count_roots_in(&seq, a, &b)
}

pub fn count_real_roots(q: &IntPoly) -> usize {
    let qr = q.to_rat();
    if qr.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let seq = sturm_sequence(&qr);
    let b = root_bound(&qr);
    count_roots_in(&seq, &-b.clone(), &b)
}
