//! Representation dimensions against the Weyl product formula and against
//! characters, and the dimension ledger at small `d`.

use hilb_core::schur::{
    coordinate_partition, hook_content_dim, lr_coefficients, verify_dimension_ledger, verify_sym2_decomposition,
    Partition, SymmetricPolynomial,
};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;

/// `Π_{i<j} (λ_i − λ_j + j − i)/(j − i)`.
fn weyl_dim(lambda: &Partition, d: usize) -> BigUint {
    let l = lambda.padded(d);
    let mut q = BigRational::from_integer(1.into());
    for i in 0..d {
        for j in i + 1..d {
            let num = l[i] as i64 - l[j] as i64 + (j - i) as i64;
            q *= BigRational::new(num.into(), ((j - i) as i64).into());
        }
    }
    assert!(q.is_integer());
    q.to_integer().to_biguint().expect("dimensions are positive")
}

fn partition(max_len: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0u32..6, 1..=max_len).prop_map(|mut parts| {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).unwrap()
    })
}

proptest! {
    #[test]
    fn hook_content_matches_weyl(lambda in partition(8), extra in 0usize..3) {
        let d = lambda.len().max(1) + extra;
        prop_assert_eq!(hook_content_dim(&lambda, d), weyl_dim(&lambda, d));
    }

    #[test]
    fn littlewood_richardson_preserves_dimension(mu in partition(3), nu in partition(3)) {
        let d = 4;
        prop_assume!(mu.weight() + nu.weight() <= 14);
        let product = lr_coefficients(&mu, &nu, d).unwrap();
        let total: BigUint = product.iter().map(|(l, m)| hook_content_dim(l, d) * *m).sum();
        prop_assert_eq!(total, hook_content_dim(&mu, d) * hook_content_dim(&nu, d));
    }
}

#[test]
fn character_dimension_matches_hook_content() {
    for d in 1..=4 {
        for parts in [vec![1], vec![2, 1], vec![3, 1, 1], vec![2, 2], vec![3, 1]] {
            let lambda = Partition::new(parts).unwrap();
            if lambda.len() > d {
                continue;
            }
            let chi = SymmetricPolynomial::schur(&lambda, d).dimension();
            assert_eq!(chi.to_u64(), hook_content_dim(&lambda, d).to_u64(), "{lambda:?} at d = {d}");
        }
    }
}

#[test]
fn coordinate_representation_has_the_ambient_dimension() {
    for d in 3..=8usize {
        let expected = d * (d * (d + 1) / 2 - 1);
        assert_eq!(hook_content_dim(&coordinate_partition(d), d), BigUint::from(expected));
    }
    assert_eq!(hook_content_dim(&coordinate_partition(8), 8), BigUint::from(280u32));
}

#[test]
fn ledger_at_small_d() {
    for d in 3..=4 {
        assert!(verify_dimension_ledger(d).unwrap().passed());
        assert!(verify_sym2_decomposition(d).unwrap().passed());
    }
}
