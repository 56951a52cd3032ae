//! Exact linear algebra checked against independent oracles: Laplace
//! expansion for determinants and multiplication back for solves.

use std::collections::HashMap;

use hilb_core::exactalg::bareiss::{self, det_sparse};
use hilb_core::exactalg::{det_exact, inverse_exact, rank_exact, rat, solve_exact, ExactMatrix, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Laplace expansion along the first remaining row, memoized on the set of
/// remaining columns.
fn cofactor_det(a: &[Vec<Rational>]) -> Rational {
    fn expand(a: &[Vec<Rational>], row: usize, cols: u32, memo: &mut HashMap<u32, Rational>) -> Rational {
        if row == a.len() {
            return Rational::one();
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut total = Rational::zero();
        let mut sign = true;
        for c in 0..a.len() {
            if cols & (1 << c) == 0 {
                continue;
            }
            if !a[row][c].is_zero() {
                let minor = expand(a, row + 1, cols & !(1 << c), memo);
                let term = &a[row][c] * minor;
                if sign {
                    total += term;
                } else {
                    total -= term;
                }
            }
            sign = !sign;
        }
        memo.insert(cols, total.clone());
        total
    }
    let n = a.len();
    expand(a, 0, (1u32 << n) - 1, &mut HashMap::new())
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    if rng.gen_bool(0.25) {
        return Rational::zero();
    }
    rat(rng.gen_range(-12..=12), rng.gen_range(1..=5))
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Vec<Vec<Rational>> {
    (0..rows).map(|_| (0..cols).map(|_| random_rational(rng)).collect()).collect()
}

fn to_integers(a: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    a.iter().map(|r| r.iter().map(|q| q.numer().clone()).collect()).collect()
}

#[test]
fn determinant_matches_cofactor_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    for n in 1..=6 {
        for _ in 0..25 {
            let a = random_matrix(&mut rng, n, n);
            let m = ExactMatrix::from_rows(a.clone()).unwrap();
            assert_eq!(det_exact(&m).unwrap(), cofactor_det(&a), "n = {n}");
            checked += 1;
        }
    }
    assert!(checked >= 100);
}

#[test]
fn integer_determinants_match_cofactor_expansion_at_ten() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let a: Vec<Vec<Rational>> =
        (0..10).map(|_| (0..10).map(|_| Rational::from_integer(rng.gen_range(-99..=99).into())).collect()).collect();
    let expected = cofactor_det(&a);
    assert!(expected.is_integer());
    let ints = to_integers(&a);
    assert_eq!(Rational::from_integer(bareiss::det(ints.clone())), expected);
    assert_eq!(Rational::from_integer(det_sparse(ints)), expected);
}

#[test]
fn sparse_determinant_matches_cofactor_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for n in 1..=8 {
        for _ in 0..15 {
            let a: Vec<Vec<Rational>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            let x = if rng.gen_bool(0.7) { 0 } else { rng.gen_range(-20..=20) };
                            Rational::from_integer(x.into())
                        })
                        .collect()
                })
                .collect();
            assert_eq!(Rational::from_integer(det_sparse(to_integers(&a))), cofactor_det(&a));
        }
    }
}

#[test]
fn singular_matrices_have_zero_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for n in 3..=6 {
        let mut a = random_matrix(&mut rng, n, n);
        // last row is a combination of the first two
        let combo: Vec<Rational> = (0..n).map(|j| &a[0][j] * rat(3, 2) - &a[1][j]).collect();
        a[n - 1] = combo;
        assert!(cofactor_det(&a).is_zero());
        assert!(det_exact(&ExactMatrix::from_rows(a).unwrap()).unwrap().is_zero());
    }
}

#[test]
fn solve_multiplies_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut solved = 0;
    while solved < 20 {
        let a = ExactMatrix::from_rows(random_matrix(&mut rng, 6, 6)).unwrap();
        if det_exact(&a).unwrap().is_zero() {
            continue;
        }
        let b = ExactMatrix::from_rows(random_matrix(&mut rng, 6, 3)).unwrap();
        let x = solve_exact(&a, &b).unwrap();
        assert_eq!(a.mul(&x).unwrap(), b);
        let inv = inverse_exact(&a).unwrap();
        assert_eq!(a.mul(&inv).unwrap(), ExactMatrix::identity(6));
        solved += 1;
    }
}

#[test]
fn rank_agrees_with_largest_nonzero_minor() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..20 {
        // product of 4×k and k×5 factors has rank at most k
        let k = rng.gen_range(1..=4);
        let left = ExactMatrix::from_rows(random_matrix(&mut rng, 4, k)).unwrap();
        let right = ExactMatrix::from_rows(random_matrix(&mut rng, k, 5)).unwrap();
        let m = left.mul(&right).unwrap();
        let r = rank_exact(&m);
        assert!(r <= k);
        let rows: Vec<Vec<Rational>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
        let minor_nonzero = |size: usize| {
            subsets(4, size).into_iter().any(|ri| {
                subsets(5, size).into_iter().any(|ci| {
                    let sub: Vec<Vec<Rational>> =
                        ri.iter().map(|&i| ci.iter().map(|&j| rows[i][j].clone()).collect()).collect();
                    !cofactor_det(&sub).is_zero()
                })
            })
        };
        if r > 0 {
            assert!(minor_nonzero(r));
        }
        if r < 4 {
            assert!(!minor_nonzero(r + 1));
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|&i| m & (1 << i) != 0).collect())
        .collect()
}

#[test]
fn kernel_vectors_are_annihilated_and_count_matches_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..20 {
        let a: Vec<Vec<BigInt>> =
            (0..4).map(|_| (0..7).map(|_| BigInt::from(rng.gen_range(-3..=3))).collect()).collect();
        let (r, basis) = bareiss::kernel(a.clone(), 7);
        assert_eq!(r + basis.len(), 7);
        assert_eq!(r, bareiss::rank(a.clone(), 7));
        for v in &basis {
            assert!(v.iter().any(|x| !x.is_zero()));
            for row in &a {
                let dot: BigInt = row.iter().zip(v).map(|(x, y)| x * y).sum();
                assert!(dot.is_zero());
            }
        }
    }
}
