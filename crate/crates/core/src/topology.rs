//! Betti numbers of `X` from the Kunneth product `(1 + t + t^3 + t^4)^d` and,
//! independently, from the Chevalley-Eilenberg complex of `g = s^d`.
//!
//! Sign convention for the differential on `k`-cochains:
//! `(dw)(x_0, ..., x_k) = sum_{p<q} (-1)^(p+q) w([x_p, x_q], x_0, ..^p..^q.., x_k)`.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::matrix::RatMatrix;
use crate::arith::rational::{int, Rational};
use crate::error::Result;
pub use crate::lie::LieAlgebra as LieAlgebraSC;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BettiVector(pub Vec<u64>);

impl BettiVector {
    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn euler(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    pub fn convolve(&self, other: &BettiVector) -> BettiVector {
        if self.0.is_empty() || other.0.is_empty() {
            return BettiVector(Vec::new());
        }
        let mut out = vec![0; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BettiVector(out)
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Betti numbers of one factor `s`.
pub fn factor_betti() -> BettiVector {
    BettiVector(vec![1, 1, 0, 1, 1])
}

pub fn kunneth_betti(d: usize) -> BettiVector {
    (0..d).fold(BettiVector(vec![1]), |acc, _| acc.convolve(&factor_betti()))
}

/// `s^d` with basis `T_i, X_i, Y_i, Z_i` per factor and brackets
/// `[T, X] = -X`, `[T, Y] = Y`, `[X, Y] = Z`.
pub fn solvable_factor_algebra(d: usize) -> LieAlgebraSC {
    let one = LieAlgebraSC::from_brackets(
        4,
        &[
            (0, 1, vec![int(0), int(-1), int(0), int(0)]),
            (0, 2, vec![int(0), int(0), int(1), int(0)]),
            (1, 2, vec![int(0), int(0), int(0), int(1)]),
        ],
    )
    .expect("factor brackets");
    (0..d).fold(LieAlgebraSC::abelian(0), |acc, _| acc.direct_sum(&one))
}

pub fn heisenberg_algebra() -> LieAlgebraSC {
    LieAlgebraSC::from_brackets(3, &[(0, 1, vec![int(0), int(0), int(1)])]).expect("h3")
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Matrix of `d: C^k -> C^{k+1}` in the bases of sorted index subsets.
pub fn ce_differential(l: &LieAlgebraSC, k: usize) -> RatMatrix {
    let n = l.dim();
    let src = subsets(n, k);
    let dst = subsets(n, k + 1);
    let index: HashMap<&[usize], usize> = src.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let mut m = RatMatrix::zeros(dst.len(), src.len());
    for (row, s) in dst.iter().enumerate() {
        for p in 0..s.len() {
            for q in p + 1..s.len() {
                let rest: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != p && i != q)
                    .map(|(_, &x)| x)
                    .collect();
                for (target, c) in l.bracket_basis(s[p], s[q]).iter().enumerate() {
                    if c.is_zero() || rest.contains(&target) {
                        continue;
                    }
                    let pos = rest.iter().filter(|&&x| x < target).count();
                    let mut t = rest.clone();
                    t.insert(pos, target);
                    let col = index[t.as_slice()];
                    let sign = if (p + q + pos) % 2 == 0 { Rational::one() } else { -Rational::one() };
                    let v = m.get(row, col) + sign * c;
                    m.set(row, col, v);
                }
            }
        }
    }
    m
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

pub fn ce_betti(l: &LieAlgebraSC) -> Result<BettiVector> {
    l.check_jacobi()?;
    let n = l.dim();
    let ranks: Vec<u64> = (0..n).map(|k| ce_differential(l, k).rank() as u64).collect();
    Ok(BettiVector(
        (0..=n)
            .map(|k| {
                let out = if k < n { ranks[k] } else { 0 };
                let inc = if k > 0 { ranks[k - 1] } else { 0 };
                binomial(n, k) - out - inc
            })
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use proptest::prelude::*;

    #[test]
    fn factor_and_kunneth() {
        let b = factor_betti();
        assert_eq!((b.euler(), b.total()), (0, 4));
        assert_eq!(kunneth_betti(1), b);
        assert_eq!(kunneth_betti(2).0, vec![1, 2, 1, 2, 4, 2, 1, 2, 1]);
        for d in 1..=8 {
            let k = kunneth_betti(d);
            assert_eq!(k.0.len(), 4 * d + 1);
            assert!(k.is_palindromic());
            assert_eq!(k.euler(), 0);
            assert_eq!(k.total(), 4u64.pow(d as u32));
        }
    }

    #[test]
    fn ce_small_cases() {
        assert_eq!(ce_betti(&LieAlgebraSC::abelian(4)).unwrap().0, vec![1, 4, 6, 4, 1]);
        assert_eq!(ce_betti(&heisenberg_algebra()).unwrap().0, vec![1, 2, 2, 1]);
        assert_eq!(ce_betti(&solvable_factor_algebra(1)).unwrap(), factor_betti());
        assert_eq!(ce_betti(&solvable_factor_algebra(2)).unwrap(), kunneth_betti(2));
        // The literal direct sum R + h3 has a larger first Betti number.
        let direct = LieAlgebraSC::abelian(1).direct_sum(&heisenberg_algebra());
        assert_eq!(ce_betti(&direct).unwrap().0, vec![1, 3, 4, 3, 1]);
    }

    #[test]
    fn differential_squares_to_zero() {
        let l = solvable_factor_algebra(2);
        for k in 0..7 {
            assert!((&ce_differential(&l, k + 1) * &ce_differential(&l, k)).is_zero());
        }
    }

    #[test]
    fn factor_algebra_shape() {
        let s = solvable_factor_algebra(1);
        assert_eq!(s.dim(), 4);
        assert_eq!(s.nonzero_brackets().len(), 3);
        s.check_jacobi().unwrap();
        let s2 = solvable_factor_algebra(2);
        assert_eq!(s2.dim(), 8);
        assert_eq!(s2.nonzero_brackets().len(), 6);
        assert!(s2.nonzero_brackets().iter().all(|(i, j, _)| i / 4 == j / 4));
    }

    #[test]
    fn jacobi_failure_propagates() {
        let bad = LieAlgebraSC::from_brackets(
            3,
            &[
                (0, 1, vec![int(0), int(0), int(1)]),
                (1, 2, vec![int(1), int(0), int(0)]),
                (0, 2, vec![int(1), int(0), int(0)]),
            ],
        )
        .unwrap();
        assert_eq!(ce_betti(&bad), Err(Error::Jacobi(0, 1, 2)));
    }

    /// `R x_A R^k`: `[T, e_j] = A e_j`, always a Lie algebra.
    pub(crate) fn semidirect(a: &[i64], k: usize) -> LieAlgebraSC {
        let brackets: Vec<_> = (0..k)
            .map(|j| {
                let mut v = vec![int(0); k + 1];
                for i in 0..k {
                    v[i + 1] = int(a[i * k + j]);
                }
                (0, j + 1, v)
            })
            .collect();
        LieAlgebraSC::from_brackets(k + 1, &brackets).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn kunneth_for_direct_sums(
            k1 in 1usize..3, a1 in proptest::collection::vec(-2i64..3, 4),
            k2 in 1usize..3, a2 in proptest::collection::vec(-2i64..3, 4),
        ) {
            let l1 = semidirect(&a1, k1);
            let l2 = semidirect(&a2, k2);
            let b1 = ce_betti(&l1).unwrap();
            let b2 = ce_betti(&l2).unwrap();
            prop_assert_eq!(ce_betti(&l1.direct_sum(&l2)).unwrap(), b1.convolve(&b2));
            prop_assert_eq!(b1.euler(), 0);
        }
    }
}
