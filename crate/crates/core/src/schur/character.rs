//! Characters of polynomial representations as symmetric polynomials, and the
//! decomposition of symmetric squares by peeling off Schur polynomials.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::partition::Partition;
use crate::error::{HilbError, Result};

/// Largest number of variables accepted by the character method.
pub const MAX_VARS: usize = 4;

/// Integer polynomial in `d` variables keyed by exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricPolynomial {
    d: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl SymmetricPolynomial {
    pub fn zero(d: usize) -> Self {
        SymmetricPolynomial { d, terms: BTreeMap::new() }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn add_term(&mut self, exp: Vec<u32>, c: BigInt) {
        debug_assert_eq!(exp.len(), self.d);
        let e = self.terms.entry(exp.clone()).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Schur polynomial `s_λ(x_1, …, x_d)` as a sum over semistandard tableaux.
    pub fn schur(lambda: &Partition, d: usize) -> Self {
        let mut out = Self::zero(d);
        if lambda.len() > d {
            return out;
        }
        let shape = lambda.parts().to_vec();
        let cells: Vec<(usize, usize)> =
            shape.iter().enumerate().flat_map(|(i, &row)| (0..row as usize).map(move |j| (i, j))).collect();
        let mut filling: Vec<Vec<u32>> = shape.iter().map(|&r| vec![0; r as usize]).collect();
        fill(&cells, 0, &mut filling, d as u32, &mut |t| {
            let mut exp = vec![0u32; d];
            for row in t {
                for &v in row {
                    exp[v as usize - 1] += 1;
                }
            }
            *out.terms.entry(exp).or_insert_with(BigInt::zero) += 1;
        });
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.d);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let exp: Vec<u32> = a.iter().zip(b).map(|(u, v)| u + v).collect();
                *out.terms.entry(exp).or_insert_with(BigInt::zero) += x * y;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    /// `f(x_1^k, …, x_d^k)`.
    pub fn adams(&self, k: u32) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.iter().map(|x| x * k).collect(), c.clone())).collect();
        SymmetricPolynomial { d: self.d, terms }
    }

    pub fn sub_scaled(&mut self, other: &Self, c: &BigInt) {
        for (e, x) in &other.terms {
            *self.terms.entry(e.clone()).or_insert_with(BigInt::zero) -= c * x;
        }
        self.terms.retain(|_, v| !v.is_zero());
    }

    /// Invariance under every adjacent transposition of variables.
    pub fn is_symmetric(&self) -> bool {
        (0..self.d.saturating_sub(1)).all(|i| {
            self.terms.iter().all(|(e, c)| {
                let mut f = e.clone();
                f.swap(i, i + 1);
                self.terms.get(&f) == Some(c)
            })
        })
    }

    /// Value at `x = (1, …, 1)`, i.e. the dimension of the representation.
    pub fn dimension(&self) -> BigInt {
        self.terms.values().sum()
    }
}

fn fill(cells: &[(usize, usize)], idx: usize, t: &mut Vec<Vec<u32>>, max: u32, emit: &mut impl FnMut(&Vec<Vec<u32>>)) {
    if idx == cells.len() {
        emit(t);
        return;
    }
    let (i, j) = cells[idx];
    let mut lo = 1;
    if j > 0 {
        lo = lo.max(t[i][j - 1]);
    }
    if i > 0 {
        lo = lo.max(t[i - 1][j] + 1);
    }
    for v in lo..=max {
        t[i][j] = v;
        fill(cells, idx + 1, t, max, emit);
    }
    t[i][j] = 0;
}

/// Multiplicities of the irreducible summands of a polynomial character, found
/// by repeatedly removing the Schur polynomial of the lexicographically largest
/// surviving exponent.
pub fn decompose_character(chi: &SymmetricPolynomial) -> Result<BTreeMap<Partition, u64>> {
    if !chi.is_symmetric() {
        return Err(HilbError::Decomposition("character is not symmetric".into()));
    }
    let d = chi.d;
    let mut rest = chi.clone();
    let mut out = BTreeMap::new();
    while let Some((exp, c)) = rest.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
        if c.is_negative() {
            return Err(HilbError::Decomposition(format!("negative multiplicity {c} at {exp:?}")));
        }
        let lambda = Partition::new(exp.clone())
            .map_err(|_| HilbError::Decomposition(format!("leading exponent {exp:?} is not a partition")))?;
        rest.sub_scaled(&SymmetricPolynomial::schur(&lambda, d), &c);
        if !rest.is_symmetric() {
            return Err(HilbError::Decomposition("intermediate polynomial lost symmetry".into()));
        }
        let m: u64 = c.try_into().map_err(|_| HilbError::Capacity("multiplicity exceeds u64".into()))?;
        out.insert(lambda, m);
    }
    Ok(out)
}

/// `Sym²(𝕊_λ W)` for `dim W = d ≤ 4`, from `(χ(x)² + χ(x²)) / 2`.
pub fn sym2_decompose_by_character(lambda: &Partition, d: usize) -> Result<BTreeMap<Partition, u64>> {
    if d > MAX_VARS {
        return Err(HilbError::Capacity(format!("character method limited to d <= {MAX_VARS}")));
    }
    let chi = SymmetricPolynomial::schur(lambda, d);
    let mut sym2 = chi.mul(&chi);
    for (e, c) in chi.adams(2).terms {
        *sym2.terms.entry(e).or_insert_with(BigInt::zero) += c;
    }
    let two = BigInt::from(2);
    for c in sym2.terms.values_mut() {
        debug_assert!((&*c % &two).is_zero());
        *c /= &two;
    }
    sym2.terms.retain(|_, c| !c.is_zero());
    decompose_character(&sym2)
}
