//! Dimension bookkeeping for the representations spanned by the generators.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::Serialize;

use super::character::sym2_decompose_by_character;
use super::lr::{lr_coefficients, lr_product};
use super::partition::{binomial, hook_content_dim, Partition};
use crate::error::{HilbError, Result};
use crate::exactalg::sparse::SparseVec;
use crate::exactalg::Monomial;
use crate::projector::all_generators;

/// `(3, 1, …, 1, 0)` of length `d`: the coordinate representation.
pub fn coordinate_partition(d: usize) -> Partition {
    Partition::template(&[3], 1, &[0], d).expect("d >= 2")
}

/// `(2, 1, …, 1)` of length `d`.
pub fn complement_partition(d: usize) -> Partition {
    Partition::template(&[2], 1, &[], d).expect("d >= 1")
}

/// The summands of `Sym²𝕊_{(3,1,…,1,0)}W` for `dim W = d`; the second is
/// absent when `d = 3`.
pub fn sym2_summands(d: usize) -> Vec<Partition> {
    let templates: [(&[u32], u32, &[u32]); 6] = [
        (&[6], 2, &[0]),
        (&[5, 3], 2, &[1, 1]),
        (&[5], 2, &[1]),
        (&[4, 4], 2, &[0]),
        (&[4, 3], 2, &[1]),
        (&[4], 2, &[]),
    ];
    templates.iter().filter_map(|(h, m, t)| Partition::template(h, *m, t, d)).collect()
}

/// The two summands spanned by the generators with `a ≥ 1`:
/// `(3, 2, 1, …, 1, 0)` and `(3, 1, …, 1, 1)`.
pub fn generator_summands(d: usize) -> [Partition; 2] {
    [Partition::template(&[3, 2], 1, &[0], d).expect("d >= 3"), Partition::template(&[3], 1, &[], d).expect("d >= 1")]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerCheck {
    pub name: String,
    pub left: String,
    pub right: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerReport {
    pub d: usize,
    pub checks: Vec<LedgerCheck>,
}

impl LedgerReport {
    fn push(&mut self, name: &str, left: impl ToString, right: impl ToString) {
        let (left, right) = (left.to_string(), right.to_string());
        let passed = left == right;
        self.checks.push(LedgerCheck { name: name.to_string(), left, right, passed });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn ensure(self) -> Result<Self> {
        if let Some(c) = self.checks.iter().find(|c| !c.passed) {
            return Err(HilbError::Ledger { check: c.name.clone(), left: c.left.clone(), right: c.right.clone() });
        }
        Ok(self)
    }
}

fn dim(lambda: &Partition, d: usize) -> BigUint {
    hook_content_dim(lambda, d)
}

/// Rank over ℚ of the coefficient vectors of the generators with `a ≥ 1`.
pub fn generator_rank(d: u8) -> Result<usize> {
    let set = all_generators(d)?;
    let mut columns: BTreeMap<Monomial, usize> = BTreeMap::new();
    let mut echelon = crate::exactalg::sparse::Echelon::new();
    for (_, g) in set.iter().filter(|(idx, _)| idx.a >= 1) {
        let mut v = SparseVec::new();
        for (m, c) in g.terms() {
            let next = columns.len();
            let col = *columns.entry(m.clone()).or_insert(next);
            v.insert(col, c.clone());
        }
        echelon.insert(v);
    }
    Ok(echelon.rank())
}

/// Checks the coordinate count `d(C(d+1,2) − 1)`, (a) the `Λ^{d−1} ⊗ Sym²`
/// split, (b) the `Sym²` dimension count and, when `with_rank` is set, (c) the
/// rank of the generators with `a ≥ 1`.
pub fn verify_dimension_ledger_with(d: usize, with_rank: bool) -> Result<LedgerReport> {
    if !(3..=8).contains(&d) {
        return Err(HilbError::Domain(format!("ledger covers 3 <= d <= 8, got {d}")));
    }
    let mut report = LedgerReport { d, checks: Vec::new() };
    let coord = coordinate_partition(d);
    let coord_dim = dim(&coord, d);

    let ambient = BigUint::from(d) * (binomial(d as u64 + 1, 2) - 1u32);
    report.push("coordinate representation", &coord_dim, ambient);

    let ext = Partition::template(&[], 1, &[], d - 1).expect("d >= 2");
    let sym = Partition::new(vec![2])?;
    let left = binomial(d as u64, d as u64 - 1) * binomial(d as u64 + 1, 2);
    let right = dim(&complement_partition(d), d) + &coord_dim;
    report.push("(a) exterior times symmetric square", left, right);
    let split = lr_coefficients(&ext, &sym, d)?;
    let expected = BTreeMap::from([(complement_partition(d), 1), (coord.clone(), 1)]);
    report.push("(a) Littlewood-Richardson split", format!("{split:?}"), format!("{expected:?}"));

    let left = (&coord_dim + 1u32) * &coord_dim / 2u32;
    let right: BigUint = sym2_summands(d).iter().map(|l| dim(l, d)).sum();
    report.push("(b) symmetric square dimension", left, right);

    if with_rank {
        let rank = generator_rank(d as u8)?;
        let [x, y] = generator_summands(d);
        report.push("(c) generator rank", rank, dim(&x, d) + dim(&y, d));
    }
    Ok(report)
}

pub fn verify_dimension_ledger(d: usize) -> Result<LedgerReport> {
    verify_dimension_ledger_with(d, true)
}

/// Full character-level decomposition of `Sym²𝕊_{(3,1,…,1,0)}W` against the
/// listed summands, each with multiplicity one.
pub fn verify_sym2_decomposition(d: usize) -> Result<LedgerReport> {
    let mut report = LedgerReport { d, checks: Vec::new() };
    let found = sym2_decompose_by_character(&coordinate_partition(d), d)?;
    let expected: BTreeMap<Partition, u64> = sym2_summands(d).into_iter().map(|l| (l, 1)).collect();
    report.push("symmetric square by characters", format!("{found:?}"), format!("{expected:?}"));
    Ok(report)
}

/// `Λ^{d−1}W ⊗ W ⊗ Λ²W` contains `(3,2,1,…,1,0)`, `(3,1,…,1,1)`,
/// `(2,2,1,…,1,1)` twice and, for `d ≥ 4`, `(2,2,2,1,…,1,0)` once.
pub fn verify_four_factor(d: usize) -> Result<LedgerReport> {
    let mut report = LedgerReport { d, checks: Vec::new() };
    let factors = [
        Partition::template(&[], 1, &[], d - 1).expect("d >= 2"),
        Partition::new(vec![1])?,
        Partition::new(vec![1, 1])?,
    ];
    let product = lr_product(&factors, d)?;
    let [x, y] = generator_summands(d);
    let mut wanted = vec![(x, 1), (y, 1), (Partition::template(&[2, 2], 1, &[], d).expect("d >= 2"), 2)];
    if let Some(z) = Partition::template(&[2, 2, 2], 1, &[0], d) {
        wanted.push((z, 1));
    }
    for (lambda, m) in wanted {
        let found = product.get(&lambda).copied().unwrap_or(0);
        report.push(&format!("multiplicity of {lambda:?}"), found, m);
    }
    let total: BigUint = product.iter().map(|(l, m)| dim(l, d) * *m).sum();
    let expected = binomial(d as u64, d as u64 - 1) * d * binomial(d as u64, 2);
    report.push("dimension of the product", total, expected);
    Ok(report)
}

/// Every `λ` in `𝕊_{(4,3,2,…,2,1)}W ⊗ (𝕊_{(3,1,…,1,0)}W)^{⊗(r−2)}` at `d = 8`
/// satisfies `λ_{8−k} + ⋯ + λ_8 ≥ rk + 1` for `k = 0, …, 7`. Returns the number
/// of summands checked.
pub fn verify_tail_sums(r: usize) -> Result<usize> {
    if !(2..=3).contains(&r) {
        return Err(HilbError::Capacity(format!("tail-sum check implemented for r = 2, 3, got {r}")));
    }
    let d = 8;
    let mut factors = vec![Partition::template(&[4, 3], 2, &[1], d).expect("d = 8")];
    factors.extend(std::iter::repeat_n(coordinate_partition(d), r - 2));
    let product = lr_product(&factors, d)?;
    for lambda in product.keys() {
        let parts = lambda.padded(d);
        for k in 0..d {
            let tail: u32 = parts[d - 1 - k..].iter().sum();
            if (tail as usize) < r * k + 1 {
                return Err(HilbError::Ledger {
                    check: format!("tail sum of {lambda:?} at k = {k}"),
                    left: tail.to_string(),
                    right: format!(">= {}", r * k + 1),
                });
            }
        }
    }
    Ok(product.len())
}
