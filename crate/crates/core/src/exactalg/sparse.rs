//! Sparse rational row reduction for tall, very sparse systems.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::rational::Rational;

/// Sparse rational vector keyed by column.
pub type SparseVec = BTreeMap<usize, Rational>;

/// `x += c · y`, dropping entries that cancel.
pub fn axpy(x: &mut SparseVec, c: &Rational, y: &SparseVec) {
    for (k, v) in y {
        let e = x.entry(*k).or_insert_with(Rational::zero);
        *e += c * v;
        if e.is_zero() {
            x.remove(k);
        }
    }
}

/// Echelon basis built one vector at a time. Each stored vector has leading
/// entry 1 at its key and nothing to the left of it.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    basis: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Reduces `v` against the basis; returns what remains.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut from = 0;
        loop {
            let Some((&lead, c)) = v.range(from..).find(|(k, _)| self.basis.contains_key(k)) else {
                return v;
            };
            let c = -c.clone();
            axpy(&mut v, &c, &self.basis[&lead]);
            from = lead + 1;
        }
    }

    /// Inserts `v`; returns whether it was independent of the basis.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        let Some((&lead, c)) = v.iter().next() else {
            return false;
        };
        let inv = Rational::one() / c;
        let normalized = v.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        // older vectors with this column are unaffected: their leads are distinct
        self.basis.insert(lead, normalized);
        true
    }
}

/// Rank of a family of sparse rational vectors.
pub fn sparse_rank(vectors: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}
