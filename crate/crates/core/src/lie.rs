//! Finite-dimensional Lie algebras given by rational structure constants.

use num_traits::Zero;

use crate::arith::matrix::RatMatrix;
use crate::arith::rational::Rational;
use crate::error::{Error, Result};

/// Structure constants `c[i][j][k]` with `[e_i, e_j] = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    table: Vec<Rational>,
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            table: vec![Rational::zero(); dim * dim * dim],
        }
    }

    /// Sets `[e_i, e_j] = v` and `[e_j, e_i] = -v` for each listed triple.
    pub fn from_brackets(dim: usize, brackets: &[(usize, usize, Vec<Rational>)]) -> Result<Self> {
        let mut alg = LieAlgebra::abelian(dim);
        for (i, j, v) in brackets {
            if *i >= dim || *j >= dim || v.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "bracket ({i}, {j}) in dimension {dim}"
                )));
            }
            if i == j {
                if v.iter().any(|c| !c.is_zero()) {
                    return Err(Error::Invalid(format!("[e_{i}, e_{i}] must vanish")));
                }
                continue;
            }
            for k in 0..dim {
                alg.table[(i * dim + j) * dim + k] = v[k].clone();
                alg.table[(j * dim + i) * dim + k] = -v[k].clone();
            }
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.table[(i * self.dim + j) * self.dim + k]
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        let start = (i * self.dim + j) * self.dim;
        &self.table[start..start + self.dim]
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim;
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() || i == j {
                    continue;
                }
                let c = &x[i] * &y[j];
                for (k, s) in self.bracket_basis(i, j).iter().enumerate() {
                    if !s.is_zero() {
                        out[k] = &out[k] + &c * s;
                    }
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = num_traits::One::one();
        v
    }

    pub fn check_antisymmetry(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                self.bracket_basis(i, j)
                    .iter()
                    .zip(self.bracket_basis(j, i))
                    .all(|(a, b)| (a + b).is_zero())
            })
        })
    }

    /// Exhaustive Jacobi check over basis triples `i < j < k`.
    pub fn check_jacobi(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (a, b, c) = (self.unit(i), self.unit(j), self.unit(k));
                    let t1 = self.bracket(&a, &self.bracket(&b, &c));
                    let t2 = self.bracket(&b, &self.bracket(&c, &a));
                    let t3 = self.bracket(&c, &self.bracket(&a, &b));
                    if t1
                        .iter()
                        .zip(&t2)
                        .zip(&t3)
                        .any(|((x, y), z)| !(x + y + z).is_zero())
                    {
                        return Err(Error::Jacobi(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// Block-diagonal sum; basis of `self` first.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let n = self.dim + other.dim;
        let mut out = LieAlgebra::abelian(n);
        for (alg, off) in [(self, 0), (other, self.dim)] {
            for i in 0..alg.dim {
                for j in 0..alg.dim {
                    for k in 0..alg.dim {
                        out.table[((i + off) * n + j + off) * n + k + off] =
                            alg.structure_constant(i, j, k).clone();
                    }
                }
            }
        }
        out
    }

    /// Basis of `[g, g]` in reduced echelon form.
    pub fn derived_algebra(&self) -> Vec<Vec<Rational>> {
        let cols: Vec<Vec<Rational>> = (0..self.dim)
            .flat_map(|i| (i + 1..self.dim).map(move |j| (i, j)))
            .map(|(i, j)| self.bracket_basis(i, j).to_vec())
            .collect();
        if cols.is_empty() {
            return Vec::new();
        }
        RatMatrix::from_columns(self.dim, &cols)
            .expect("bracket columns")
            .column_space()
    }

    /// Basis of the center `{x : [x, e_i] = 0 for all i}`.
    pub fn center(&self) -> Vec<Vec<Rational>> {
        let n = self.dim;
        // Row (i, k) of the system: sum_j x_j c[j][i][k] = 0.
        let m = RatMatrix::from_fn(n * n, n, |r, j| {
            self.structure_constant(j, r / n, r % n).clone()
        });
        m.kernel()
    }

    /// Nonzero brackets `[e_i, e_j]` with `i < j`.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, Vec<Rational>)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = self.bracket_basis(i, j);
                if v.iter().any(|c| !c.is_zero()) {
                    out.push((i, j, v.to_vec()));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    fn heisenberg() -> LieAlgebra {
        LieAlgebra::from_brackets(3, &[(0, 1, vec![int(0), int(0), int(1)])]).unwrap()
    }

    #[test]
    fn heisenberg_basics() {
        let h = heisenberg();
        assert!(h.check_antisymmetry());
        h.check_jacobi().unwrap();
        assert_eq!(h.derived_algebra(), vec![vec![int(0), int(0), int(1)]]);
        assert_eq!(h.center(), vec![vec![int(0), int(0), int(1)]]);
        assert_eq!(h.nonzero_brackets().len(), 1);
    }

    #[test]
    fn jacobi_failure_is_reported() {
        // [e0,e1] = e2, [e1,e2] = e0, [e0,e2] = e0 violates Jacobi.
        let bad = LieAlgebra::from_brackets(
            3,
            &[
                (0, 1, vec![int(0), int(0), int(1)]),
                (1, 2, vec![int(1), int(0), int(0)]),
                (0, 2, vec![int(1), int(0), int(0)]),
            ],
        )
        .unwrap();
        assert_eq!(bad.check_jacobi(), Err(Error::Jacobi(0, 1, 2)));
    }

    #[test]
    fn direct_sum_blocks() {
        let s = heisenberg().direct_sum(&LieAlgebra::abelian(1));
        assert_eq!(s.dim(), 4);
        assert_eq!(s.center().len(), 2);
        s.check_jacobi().unwrap();
    }
}
