use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::bareiss;
use super::rational::Rational;
use crate::error::{HilbError, Result};

/// Dense rational matrix in row-major order.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(HilbError::Dimension("ragged rows".into()));
        }
        let n = rows.len();
        Ok(ExactMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect())
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

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(HilbError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn scale_row(&mut self, i: usize, c: &Rational) {
        for j in 0..self.cols {
            let v = self.get(i, j) * c;
            self.set(i, j, v);
        }
    }

    /// Rows scaled to integers, and the product of the row scale factors.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut scale = BigInt::one();
        let rows = (0..self.rows)
            .map(|i| {
                let (r, s) = bareiss::clear_denominators(self.row(i));
                scale *= s;
                r
            })
            .collect();
        (rows, scale)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|q| q.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Rank over the rationals by fraction-free elimination.
pub fn rank_exact(m: &ExactMatrix) -> usize {
    let (rows, _) = m.integer_rows();
    bareiss::rank(rows, m.cols)
}

/// Determinant by fraction-free elimination after clearing row denominators.
pub fn det_exact(m: &ExactMatrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(HilbError::Dimension(format!("determinant of a {}x{} matrix", m.rows, m.cols)));
    }
    let (rows, scale) = m.integer_rows();
    Ok(Rational::new(bareiss::det(rows), scale))
}

/// Solves `m · x = rhs` exactly for square nonsingular `m`.
pub fn solve_exact(m: &ExactMatrix, rhs: &ExactMatrix) -> Result<ExactMatrix> {
    if !m.is_square() || rhs.rows != m.rows {
        return Err(HilbError::Dimension(format!(
            "system {}x{} with right-hand side {}x{}",
            m.rows, m.cols, rhs.rows, rhs.cols
        )));
    }
    let n = m.rows;
    let k = rhs.cols;
    let augmented: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let row: Vec<Rational> = m.row(i).iter().chain(rhs.row(i)).cloned().collect();
            bareiss::clear_denominators(&row).0
        })
        .collect();
    let form = bareiss::gauss_jordan(augmented, n);
    if form.pivots.len() < n {
        return Err(HilbError::Singular { rank: form.pivots.len(), size: n });
    }
    let mut x = ExactMatrix::zeros(n, k);
    for i in 0..n {
        for j in 0..k {
            x.set(i, j, Rational::new(form.rows[i][n + j].clone(), form.scale.clone()));
        }
    }
    Ok(x)
}

/// Inverse of a square nonsingular matrix.
pub fn inverse_exact(m: &ExactMatrix) -> Result<ExactMatrix> {
    solve_exact(m, &ExactMatrix::identity(m.rows))
}
