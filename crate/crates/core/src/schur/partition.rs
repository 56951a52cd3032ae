use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{HilbError, Result};

/// Weakly decreasing parts with trailing zeros removed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(into = "Vec<u32>", try_from = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Partition> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(HilbError::Domain(format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    /// `head`, then `middle` repeated, then `tail`, for a total length `d`;
    /// e.g. `(3, 1, …, 1, 0)` is `template(&[3], 1, &[0], d)`. `None` when the
    /// fixed parts alone are longer than `d`.
    pub fn template(head: &[u32], middle: u32, tail: &[u32], d: usize) -> Option<Partition> {
        let fill = d.checked_sub(head.len() + tail.len())?;
        let mut parts = head.to_vec();
        parts.extend(std::iter::repeat_n(middle, fill));
        parts.extend_from_slice(tail);
        Partition::new(parts).ok()
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Parts padded with zeros to length `d` (or longer if needed).
    pub fn padded(&self, d: usize) -> Vec<u32> {
        let mut v = self.0.clone();
        if v.len() < d {
            v.resize(d, 0);
        }
        v
    }

    /// Length of column `j` (0-based).
    pub fn column(&self, j: u32) -> usize {
        self.0.iter().take_while(|&&p| p > j).count()
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = HilbError;

    fn try_from(v: Vec<u32>) -> Result<Partition> {
        Partition::new(v)
    }
}

impl std::str::FromStr for Partition {
    type Err = HilbError;

    /// Accepts `3,1,1,0`, `(3,1,1,0)` or `[3,1,1,0]`.
    fn from_str(s: &str) -> Result<Partition> {
        let inner = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let parts = inner
            .split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(|x| x.parse::<u32>().map_err(|e| HilbError::Parse(format!("bad part {x:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `dim 𝕊_λ(ℂ^d) = ∏_{cells (i,j)} (d + j − i) / hook(i,j)`; zero exactly when
/// `λ` has more than `d` rows.
pub fn hook_content_dim(lambda: &Partition, d: usize) -> BigUint {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row {
            let content = d as i64 + j as i64 - i as i64;
            let arm = (row - j - 1) as i64;
            let leg = (lambda.column(j) - i - 1) as i64;
            num *= content;
            den *= arm + leg + 1;
        }
    }
    if num.is_zero() {
        return BigUint::zero();
    }
    debug_assert!(num.is_positive());
    let (q, r) = (&num / &den, &num % &den);
    debug_assert!(r.is_zero(), "hook-content quotient must be integral");
    q.magnitude().clone()
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut out = BigUint::one();
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}
