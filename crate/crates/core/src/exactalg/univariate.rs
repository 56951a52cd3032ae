//! Dense univariate polynomials over the rationals, used for coordinates along
//! a one-parameter family of configurations.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{HilbError, Result};

/// Coefficients from the constant term upwards; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly(Vec<Rational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `a + b·u`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::new(vec![a, b])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    /// Multiplicity of the root `u = 0`; `None` for the zero polynomial.
    pub fn order_at_zero(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.0.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, u: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * u + c)
    }

    /// Exact quotient; an error if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &UniPoly) -> Result<UniPoly> {
        let Some(dd) = divisor.degree() else {
            return Err(HilbError::Domain("division by the zero polynomial".into()));
        };
        let Some(nd) = self.degree() else {
            return Ok(UniPoly::zero());
        };
        if nd < dd {
            return Err(HilbError::Domain("inexact polynomial division".into()));
        }
        let lead = &divisor.0[dd];
        let mut rem = self.0.clone();
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = &rem[k + dd] / lead;
            if !q.is_zero() {
                for (i, c) in divisor.0.iter().enumerate() {
                    rem[k + i] -= &q * c;
                }
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(HilbError::Domain("inexact polynomial division".into()));
        }
        Ok(UniPoly::new(quot))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;

    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.0.len().max(rhs.0.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;

    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.0.len().max(rhs.0.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;

    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;

    fn neg(self) -> UniPoly {
        UniPoly(self.0.iter().map(|c| -c).collect())
    }
}

/// Determinant of a square matrix over `Q[u]` by fraction-free elimination.
pub fn det_poly(mut a: Vec<Vec<UniPoly>>) -> Result<UniPoly> {
    let n = a.len();
    let mut prev = UniPoly::constant(Rational::one());
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(UniPoly::zero());
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev)?;
            }
            a[i][k] = UniPoly::zero();
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return Ok(UniPoly::constant(Rational::one()));
    }
    Ok(if negate { -&prev } else { prev })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::int;

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn arithmetic_and_division() {
        let a = up(&[1, 1]);
        let b = up(&[-1, 1]);
        let prod = &a * &b;
        assert_eq!(prod, up(&[-1, 0, 1]));
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(up(&[1, 0, 1]).div_exact(&a).is_err());
        assert_eq!(up(&[0, 0, 3, 1]).order_at_zero(), Some(2));
        assert_eq!(up(&[2, 0, 1]).eval(&int(3)), int(11));
    }

    #[test]
    fn polynomial_determinant() {
        // [[u, 1], [1, u]] has determinant u^2 - 1
        let m = vec![vec![up(&[0, 1]), up(&[1])], vec![up(&[1]), up(&[0, 1])]];
        assert_eq!(det_poly(m).unwrap(), up(&[-1, 0, 1]));
    }
}
