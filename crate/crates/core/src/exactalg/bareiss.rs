//! Fraction-free elimination over the integers.
//!
//! After step `k` every surviving entry is a `(k+1)×(k+1)` minor of the input,
//! so each division by the previous pivot is exact.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{common_denominator, Rational};

/// Scales a rational row to integers; returns the row and the scale factor.
pub fn clear_denominators(row: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let lcm = common_denominator(row);
    let ints =
        row.iter().map(|q| if lcm.is_one() { q.numer().clone() } else { q.numer() * (&lcm / q.denom()) }).collect();
    (ints, lcm)
}

/// One elimination step below (and optionally above) the pivot at `(prow, col)`.
fn eliminate(a: &mut [Vec<BigInt>], prow: usize, col: usize, prev: &BigInt, above: bool, from_col: usize) {
    let prev_is_one = prev.is_one();
    let pivot_row = std::mem::take(&mut a[prow]);
    let pivot = &pivot_row[col];
    let start = if above { 0 } else { prow + 1 };
    for (i, row) in a.iter_mut().enumerate().skip(start) {
        if i == prow {
            continue;
        }
        let f = std::mem::take(&mut row[col]);
        for j in from_col..row.len() {
            if j == col {
                continue;
            }
            let x = &mut row[j];
            let pj = &pivot_row[j];
            if x.is_zero() && (f.is_zero() || pj.is_zero()) {
                continue;
            }
            *x *= pivot;
            if !f.is_zero() && !pj.is_zero() {
                *x -= &f * pj;
            }
            if !prev_is_one {
                *x /= prev;
            }
        }
    }
    a[prow] = pivot_row;
}

/// Determinant of a square integer matrix.
pub fn det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        eliminate(&mut a, k, k, &prev, false, k + 1);
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    if negate {
        -prev
    } else {
        prev
    }
}

/// Determinant of a square sparse integer matrix.
///
/// Each step takes the column with the fewest nonzeros and, within it, the
/// row with the fewest nonzeros. A row with a zero in the pivot column only
/// needs scaling by `pivot_k / pivot_{k−1}`; that scaling is deferred and
/// applied, telescoped, when the row is next touched.
pub fn det_sparse(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    // pivots[t] is the pivot chosen at step t − 1, with pivots[0] = 1
    let mut pivots = vec![BigInt::one()];
    // row r holds its values as of step stamp[r]
    let mut stamp = vec![0usize; n];
    let mut rows: Vec<usize> = (0..n).collect();
    let mut cols: Vec<usize> = (0..n).collect();
    let mut negate = false;
    for k in 0..n {
        let col_weight = |c: usize| rows.iter().filter(|&&r| !a[r][c].is_zero()).count();
        let Some((ci, _)) =
            cols.iter().enumerate().map(|(ci, &c)| (ci, col_weight(c))).filter(|&(_, w)| w > 0).min_by_key(|&(_, w)| w)
        else {
            return BigInt::zero();
        };
        let col = cols[ci];
        let row_weight = |r: usize| cols.iter().filter(|&&c| !a[r][c].is_zero()).count();
        let (ri, _) = rows
            .iter()
            .enumerate()
            .filter(|&(_, &r)| !a[r][col].is_zero())
            .map(|(ri, &r)| (ri, row_weight(r)))
            .min_by_key(|&(_, w)| w)
            .expect("column has a nonzero entry");
        let prow = rows.remove(ri);
        cols.remove(ci);
        // moving the pivot to the leading position permutes by ri + ci transpositions
        negate ^= (ri + ci) % 2 == 1;
        let catch_up = |a: &mut Vec<Vec<BigInt>>, r: usize, s: usize, cols: &[usize]| {
            for &c in cols.iter().chain(std::iter::once(&col)) {
                let x = &mut a[r][c];
                if !x.is_zero() {
                    *x = &*x * &pivots[k] / &pivots[s];
                }
            }
        };
        if stamp[prow] != k {
            catch_up(&mut a, prow, stamp[prow], &cols);
            stamp[prow] = k;
        }
        let pivot_row = std::mem::take(&mut a[prow]);
        let pivot = &pivot_row[col];
        let prev = &pivots[k];
        for &r in &rows {
            if a[r][col].is_zero() {
                continue;
            }
            if stamp[r] != k {
                catch_up(&mut a, r, stamp[r], &cols);
            }
            let f = std::mem::take(&mut a[r][col]);
            for &c in &cols {
                let pj = &pivot_row[c];
                let x = &mut a[r][c];
                if x.is_zero() && pj.is_zero() {
                    continue;
                }
                let v = (&*x * pivot - &f * pj) / prev;
                *x = v;
            }
            stamp[r] = k + 1;
        }
        let next = pivot.clone();
        a[prow] = pivot_row;
        pivots.push(next);
    }
    let d = pivots.pop().expect("n >= 1");
    if negate {
        -d
    } else {
        d
    }
}

/// Rank of an integer matrix with `ncols` columns.
pub fn rank(mut a: Vec<Vec<BigInt>>, ncols: usize) -> usize {
    let mut r = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        eliminate(&mut a, r, col, &prev, false, col + 1);
        prev = a[r][col].clone();
        r += 1;
    }
    r
}

/// Fraction-free Gauss–Jordan form.
#[derive(Clone, Debug)]
pub struct ReducedForm {
    /// Pivot column of each of the first `pivots.len()` rows.
    pub pivots: Vec<usize>,
    /// Common value of every pivot entry (the last pivot).
    pub scale: BigInt,
    pub rows: Vec<Vec<BigInt>>,
}

/// Reduces `a` so that row `k` has its pivot at `pivots[k]`, all pivots equal
/// `scale`, and every pivot column is zero outside its pivot row. Pivots are
/// only sought in the first `pivot_limit` columns; later columns ride along.
pub fn gauss_jordan(mut a: Vec<Vec<BigInt>>, pivot_limit: usize) -> ReducedForm {
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    for col in 0..pivot_limit {
        let r = pivots.len();
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        eliminate(&mut a, r, col, &prev, true, 0);
        prev = a[r][col].clone();
        pivots.push(col);
    }
    ReducedForm { pivots, scale: prev, rows: a }
}

/// Integer basis of the right kernel of `a` (with `ncols` columns), one vector
/// per non-pivot column, together with the rank.
pub fn kernel(a: Vec<Vec<BigInt>>, ncols: usize) -> (usize, Vec<Vec<BigInt>>) {
    let form = gauss_jordan(a, ncols);
    let mut is_pivot = vec![false; ncols];
    for &c in &form.pivots {
        is_pivot[c] = true;
    }
    let basis = (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![BigInt::zero(); ncols];
            v[f] = form.scale.clone();
            for (k, &c) in form.pivots.iter().enumerate() {
                v[c] = -&form.rows[k][f];
            }
            v
        })
        .collect();
    (form.pivots.len(), basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det(m(&[&[2, 3], &[1, 4]])), BigInt::from(5));
        assert_eq!(det(m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(det(m(&[&[1, 2], &[2, 4]])), BigInt::zero());
        assert_eq!(det(m(&[&[0, 0, 1], &[0, 2, 0], &[3, 0, 0]])), BigInt::from(-6));
    }

    #[test]
    fn sparse_determinant_agrees_with_dense() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 0..12 {
            for _ in 0..20 {
                let a: Vec<Vec<BigInt>> =
                    (0..n)
                        .map(|_| {
                            (0..n)
                                .map(|_| {
                                    if rng.gen_bool(0.6) {
                                        BigInt::zero()
                                    } else {
                                        BigInt::from(rng.gen_range(-9..=9))
                                    }
                                })
                                .collect()
                        })
                        .collect();
                assert_eq!(det_sparse(a.clone()), det(a));
            }
        }
        assert_eq!(det_sparse(m(&[&[0, 0, 1], &[0, 2, 0], &[3, 0, 0]])), BigInt::from(-6));
        assert_eq!(det_sparse(m(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn rank_skips_zero_columns() {
        assert_eq!(rank(m(&[&[0, 1, 2], &[0, 2, 4], &[0, 0, 1]]), 3), 2);
        assert_eq!(rank(m(&[&[0, 0], &[0, 0]]), 2), 0);
    }

    #[test]
    fn gauss_jordan_pivots_share_scale() {
        let form = gauss_jordan(m(&[&[2, 1, 1], &[4, 3, 3], &[8, 7, 9]]), 3);
        assert_eq!(form.pivots, vec![0, 1, 2]);
        for k in 0..3 {
            for j in 0..3 {
                let expected = if j == k { form.scale.clone() } else { BigInt::zero() };
                assert_eq!(form.rows[k][j], expected);
            }
        }
        assert_eq!(form.scale, BigInt::from(4));
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 1]]);
        let (r, basis) = kernel(a.clone(), 4);
        assert_eq!(r, 2);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            for row in &a {
                let dot: BigInt = row.iter().zip(v).map(|(x, y)| x * y).sum();
                assert!(dot.is_zero());
            }
        }
    }
}
