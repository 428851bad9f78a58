//! Dense exact matrices over the rationals, row-major.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::RatPoly;
use super::rational::{self, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Reduced row echelon form plus pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: RatMatrix,
    pub pivots: Vec<usize>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(RatMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        })
    }

    /// Builds a `len x columns.len()` matrix whose columns are the given vectors.
    pub fn from_columns(len: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != len) {
            return Err(Error::DimensionMismatch("column length".into()));
        }
        Ok(RatMatrix::from_fn(len, columns.len(), |i, j| {
            columns[j][i].clone()
        }))
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| rational::int(x)).collect())
            .collect();
        RatMatrix::from_rows(&rows).expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Rational> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        RatMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        *self == RatMatrix::identity(self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn checked_mul(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = &out.data[idx] + a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: usize) -> RatMatrix {
        let mut acc = RatMatrix::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Columns of `self` followed by the columns of `rhs`.
    pub fn hstack(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch("hstack row count".into()));
        }
        Ok(RatMatrix::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs.get(i, j - self.cols).clone()
            }
        }))
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Null space basis, one vector per free column, in reduced form.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -matrix.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    /// Column space basis: the nonzero rows of `rref(M^T)`.
    pub fn column_space(&self) -> Vec<Vec<Rational>> {
        let Rref { matrix, pivots } = self.transpose().rref();
        (0..pivots.len()).map(|r| matrix.row(r)).collect()
    }

    /// Determinant by Bareiss elimination on the integer matrix obtained by
    /// clearing denominators.
    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("det of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let den = rational::common_denominator(&self.data);
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (self.get(i, j) * rational::from_big(&den)).to_integer())
                    .collect()
            })
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(p) => {
                        a.swap(k, p);
                        sign = -sign;
                    }
                    None => return Ok(Rational::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let num = sign * &a[n - 1][n - 1];
        Ok(Rational::new(num, num_traits::pow(den, n)))
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&RatMatrix::identity(n))?;
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Invalid("singular matrix".into()));
        }
        Ok(RatMatrix::from_fn(n, n, |i, j| matrix.get(i, n + j).clone()))
    }

    /// Characteristic polynomial `det(X I - M)` by the Faddeev-LeVerrier
    /// recurrence.
    pub fn charpoly(&self) -> Result<RatPoly> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("charpoly of non-square matrix".into()));
        }
        let n = self.rows;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut aux = RatMatrix::zeros(n, n);
        for k in 1..=n {
            let shifted = &aux + &RatMatrix::identity(n).scale(&coeffs[n - k + 1]);
            aux = self * &shifted;
            coeffs[n - k] = -aux.trace() / rational::int(k as i64);
        }
        Ok(RatPoly::new(coeffs))
    }

    /// Minimal polynomial from the first linear dependency among
    /// `I, M, M^2, ...`.
    pub fn minpoly(&self) -> Result<RatPoly> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("minpoly of non-square matrix".into()));
        }
        let n = self.rows;
        let mut powers: Vec<Vec<Rational>> = vec![RatMatrix::identity(n).data];
        let mut current = RatMatrix::identity(n);
        for k in 1..=n {
            current = &current * self;
            powers.push(current.data.clone());
            let stacked = RatMatrix::from_columns(n * n, &powers)?;
            let kernel = stacked.kernel();
            if let Some(v) = kernel.first() {
                // Earlier powers are independent, so the kernel is a line
                // with nonzero last coordinate.
                let lead = v[k].clone();
                return Ok(RatPoly::new(v.iter().map(|c| c / &lead).collect()));
            }
        }
        unreachable!("Cayley-Hamilton bounds the minimal polynomial degree by n")
    }

    /// Evaluates a polynomial at this matrix.
    pub fn eval_poly(&self, p: &RatPoly) -> RatMatrix {
        let n = self.rows;
        p.coeffs().iter().rev().fold(RatMatrix::zeros(n, n), |acc, c| {
            &(&acc * self) + &RatMatrix::identity(n).scale(c)
        })
    }

    /// Solves `M x = b`; `None` when inconsistent. Free variables are zero.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let col = RatMatrix::from_columns(self.rows, &[b.to_vec()]).ok()?;
        let Rref { matrix, pivots } = self.hstack(&col).ok()?.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// True iff every column of `other` lies in the column span of `self`.
    pub fn spans(&self, other: &RatMatrix) -> bool {
        self.rank() == self.hstack(other).map(|m| m.rank()).unwrap_or(usize::MAX)
    }

    pub fn to_text_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(rational::to_text).collect())
            .collect()
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix add shape");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sub shape");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        self.checked_mul(rhs).expect("matrix product shape")
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(rational::to_text).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Hermite-style basis of the integer lattice spanned by `generators`
/// (row vectors). Returned rows are linearly independent and span the same
/// lattice.
pub fn lattice_basis(generators: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let Some(width) = generators.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut rows: Vec<Vec<BigInt>> = generators.to_vec();
    let mut basis = Vec::new();
    for c in 0..width {
        // Euclid on column c among the remaining rows.
        loop {
            let mut nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
            let p = nz[0];
            let pivot_row = rows[p].clone();
            for &i in &nz[1..] {
                let q = rows[i][c].div_floor(&pivot_row[c]);
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
            }
        }
        if let Some(p) = (0..rows.len()).find(|&i| !rows[i][c].is_zero()) {
            let mut r = rows.swap_remove(p);
            if r[c].is_negative() {
                r.iter_mut().for_each(|x| *x = -x.clone());
            }
            basis.push(r);
        }
    }
    basis
}
