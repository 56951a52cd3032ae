//! Arithmetic modulo a word-sized prime, used only to choose which rows and
//! columns an exact computation should look at. Nothing computed here is a
//! certificate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::rational::Rational;

/// The Mersenne prime 2^61 − 1.
pub const PRIME: u64 = (1 << 61) - 1;

/// Fallback primes tried when a denominator vanishes modulo `PRIME`.
pub const PRIMES: [u64; 3] = [PRIME, 4_611_686_018_427_387_847, 1_000_000_007];

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut out = 1;
    while e > 0 {
        if e & 1 == 1 {
            out = mul_mod(out, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    out
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn int_mod(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

/// `q mod p`, or `None` when the denominator is divisible by `p`.
pub fn rational_mod(q: &Rational, p: u64) -> Option<u64> {
    let den = int_mod(q.denom(), p);
    if den == 0 {
        return None;
    }
    Some(mul_mod(int_mod(q.numer(), p), inv_mod(den, p), p))
}

/// Rows chosen greedily in input order, each independent of the earlier ones
/// modulo `p`, with one pivot column per chosen row. The square submatrix on
/// `rows × pivot_cols` is nonsingular modulo `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection {
    pub prime: u64,
    pub rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
}

impl Selection {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Greedy independent-row selection over `F_p` for sparse rational rows.
///
/// Stops early once `stop_at` rows are chosen. Tries the primes in `PRIMES`
/// until one divides no denominator.
pub fn select_rows(rows: &[Vec<(usize, Rational)>], ncols: usize, stop_at: Option<usize>) -> Selection {
    for p in PRIMES {
        if let Some(sel) = select_rows_mod(rows, ncols, stop_at, p) {
            return sel;
        }
    }
    panic!("every fallback prime divides some denominator");
}

fn select_rows_mod(rows: &[Vec<(usize, Rational)>], ncols: usize, stop_at: Option<usize>, p: u64) -> Option<Selection> {
    // basis row k is zero at the pivots of rows 0..k and 1 at its own pivot
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut sel = Selection { prime: p, rows: Vec::new(), pivot_cols: Vec::new() };
    for (idx, row) in rows.iter().enumerate() {
        if stop_at.is_some_and(|s| sel.rank() >= s) {
            break;
        }
        let mut v = vec![0u64; ncols];
        for (c, q) in row {
            v[*c] = rational_mod(q, p)?;
        }
        for (pc, b) in &basis {
            let f = v[*pc];
            if f == 0 {
                continue;
            }
            let nf = p - f;
            for (x, y) in v.iter_mut().zip(b) {
                if *y != 0 {
                    *x = (*x + mul_mod(nf, *y, p)) % p;
                }
            }
        }
        let Some(pc) = v.iter().position(|x| *x != 0) else {
            continue;
        };
        let inv = inv_mod(v[pc], p);
        for x in v.iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        basis.push((pc, v));
        sel.rows.push(idx);
        sel.pivot_cols.push(pc);
    }
    Some(sel)
}

/// Rank modulo `p` of a dense integer matrix; a lower bound for the rank over
/// the rationals. Used as a cross-check only.
pub fn rank_mod(a: &[Vec<BigInt>], p: u64) -> usize {
    let rows: Vec<Vec<(usize, Rational)>> = a
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(c, x)| (c, Rational::from_integer(x.clone())))
                .collect()
        })
        .collect();
    let ncols = a.first().map_or(0, Vec::len);
    select_rows_mod(&rows, ncols, None, p).map_or(0, |s| s.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};

    #[test]
    fn inverse_and_rationals() {
        let p = PRIME;
        assert_eq!(mul_mod(inv_mod(12345, p), 12345, p), 1);
        let half = rational_mod(&rat(1, 2), p).unwrap();
        assert_eq!(mul_mod(half, 2, p), 1);
        assert_eq!(rational_mod(&int(-1), p), Some(p - 1));
        assert_eq!(rational_mod(&rat(1, 7), 7), None);
    }

    #[test]
    fn selection_skips_dependent_rows() {
        let rows = vec![
            vec![(0, int(1)), (1, int(2))],
            vec![(0, int(2)), (1, int(4))],
            vec![(2, int(3))],
            vec![],
            vec![(0, int(1)), (2, int(1))],
        ];
        let sel = select_rows(&rows, 3, None);
        assert_eq!(sel.rows, vec![0, 2, 4]);
        assert_eq!(sel.pivot_cols, vec![0, 2, 1]);
    }
}
