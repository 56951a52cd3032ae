//! Littlewood–Richardson coefficients by enumeration of LR tableaux, filled
//! one row at a time.

use std::collections::BTreeMap;

use super::partition::Partition;
use crate::error::{HilbError, Result};

/// Largest `|μ| + |ν|` accepted.
pub const MAX_WEIGHT: u32 = 30;

struct Search<'a> {
    mu: &'a Partition,
    nu: &'a Partition,
    maxlen: usize,
    out: BTreeMap<Vec<u32>, u64>,
}

impl Search<'_> {
    /// `rows` holds the lengths of the finished rows, `above` the labels of the
    /// previous row by column (0 for cells of `μ`), `used[t]` the count of
    /// label `t + 1` placed so far.
    fn row(&mut self, i: usize, rows: &mut Vec<u32>, above: &[u32], used: &mut Vec<u32>) {
        let done = used.iter().zip(self.nu.parts()).all(|(u, n)| u == n);
        if done && self.mu.part(i) == 0 {
            let lambda = rows.clone();
            *self.out.entry(lambda).or_insert(0) += 1;
            return;
        }
        if i == self.maxlen {
            return;
        }
        let cap = if i == 0 { u32::MAX } else { rows[i - 1] };
        let labels = (i + 1).min(self.nu.len());
        let mut counts = vec![0u32; labels];
        self.choose(i, 0, &mut counts, rows, above, used, cap);
    }

    #[allow(clippy::too_many_arguments)]
    fn choose(
        &mut self,
        i: usize,
        t: usize,
        counts: &mut Vec<u32>,
        rows: &mut Vec<u32>,
        above: &[u32],
        used: &mut Vec<u32>,
        cap: u32,
    ) {
        let base = self.mu.part(i);
        if t == counts.len() {
            let len = base + counts.iter().sum::<u32>();
            if len > cap {
                return;
            }
            // labels of this row by column, increasing left to right
            let mut here = vec![0u32; len as usize];
            let mut col = base as usize;
            for (l, &c) in counts.iter().enumerate() {
                for _ in 0..c {
                    here[col] = l as u32 + 1;
                    col += 1;
                }
            }
            // column strictness against the row above
            for (c, &label) in here.iter().enumerate().skip(base as usize) {
                if i > 0 && c < above.len() && above[c] != 0 && above[c] >= label {
                    return;
                }
            }
            for (l, &c) in counts.iter().enumerate() {
                used[l] += c;
            }
            rows.push(len);
            self.row(i + 1, rows, &here, used);
            rows.pop();
            for (l, &c) in counts.iter().enumerate() {
                used[l] -= c;
            }
            return;
        }
        // lattice: after this row, label t+1 may not outnumber label t from earlier rows
        let mut bound = self.nu.part(t) - used[t];
        if t > 0 {
            bound = bound.min(used[t - 1] - used[t]);
        }
        for c in 0..=bound {
            counts[t] = c;
            self.choose(i, t + 1, counts, rows, above, used, cap);
        }
        counts[t] = 0;
    }
}

/// `c^λ_{μν}` for every `λ` with at most `maxlen` rows.
pub fn lr_coefficients(mu: &Partition, nu: &Partition, maxlen: usize) -> Result<BTreeMap<Partition, u64>> {
    if mu.weight() + nu.weight() > MAX_WEIGHT {
        return Err(HilbError::Capacity(format!("|mu| + |nu| = {} exceeds {MAX_WEIGHT}", mu.weight() + nu.weight())));
    }
    let mut search = Search { mu, nu, maxlen, out: BTreeMap::new() };
    let mut used = vec![0u32; nu.len()];
    search.row(0, &mut Vec::new(), &[], &mut used);
    search.out.into_iter().map(|(parts, m)| Ok((Partition::new(parts)?, m))).collect()
}

/// Decomposition of `𝕊_{λ_1} ⊗ ⋯ ⊗ 𝕊_{λ_n}` by repeated LR products.
pub fn lr_product(factors: &[Partition], maxlen: usize) -> Result<BTreeMap<Partition, u64>> {
    let mut acc: BTreeMap<Partition, u64> = BTreeMap::from([(Partition::default(), 1)]);
    for f in factors {
        let mut next = BTreeMap::new();
        for (lambda, m) in &acc {
            for (nu, c) in lr_coefficients(lambda, f, maxlen)? {
                *next.entry(nu).or_insert(0) += m * c;
            }
        }
        acc = next;
    }
    Ok(acc)
}
