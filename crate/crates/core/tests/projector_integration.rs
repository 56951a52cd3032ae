//! Generators against hand-expanded formulas, their relations, and the
//! reduction to quadrics.

use hilb_core::exactalg::{int, Coord, SparsePolynomial};
use hilb_core::projector::{
    all_generators, build_generator, generators_at, off_diagonal_coords, vanishes_on_in_set_locus, verify_antisymmetry,
    verify_c0_generation_all, verify_cyclic_identity, verify_trace_identity, GeneratorIndex, GeneratorJson,
    GeneratorSet, Stage,
};

fn q(d: u8, r: u8, s: u8, t: u8) -> SparsePolynomial {
    SparsePolynomial::var(d, Coord::new(r, s, t))
}

/// `Σ_m (p_{m,ij} p_{a,km} − p_{m,kj} p_{a,im})`, written out term by term.
fn quadratic_part(d: u8, a: u8, j: u8, i: u8, k: u8) -> SparsePolynomial {
    let mut out = SparsePolynomial::zero(d);
    for m in 1..=d {
        out = &out + &(&q(d, m, i, j) * &q(d, a, k, m));
        out = &out - &(&q(d, m, k, j) * &q(d, a, i, m));
    }
    out
}

#[test]
fn first_factorization_row_by_hand() {
    // C(1;4,(5,6)) has no linear part: a differs from both i and k
    let d = 8;
    let g = build_generator(d, GeneratorIndex::new(1, 4, 5, 6)).unwrap();
    assert_eq!(g, quadratic_part(d, 1, 4, 5, 6));
    assert_eq!(g.len(), 16);
    assert!(g.is_homogeneous_of_degree(2));
}

#[test]
fn linear_terms_by_hand() {
    let d = 3;
    // a = k: + p_{0,ij}
    let g = build_generator(d, GeneratorIndex::new(1, 2, 3, 1)).unwrap();
    assert_eq!(g, &q(d, 0, 3, 2) + &quadratic_part(d, 1, 2, 3, 1));
    // a = i: − p_{0,kj}
    let g = build_generator(d, GeneratorIndex::new(2, 1, 2, 3)).unwrap();
    assert_eq!(g, &quadratic_part(d, 2, 1, 2, 3) - &q(d, 0, 3, 1));
}

#[test]
fn constant_index_generators_by_hand() {
    // a = 0: Σ_m (p_{m,ij} p_{0,km} − p_{m,kj} p_{0,im}), no linear part
    let d = 3;
    let g = build_generator(d, GeneratorIndex::new(0, 1, 2, 3)).unwrap();
    assert_eq!(g, quadratic_part(d, 0, 1, 2, 3));
}

#[test]
fn relations_hold_for_small_d() {
    for d in 3..=4 {
        assert!(verify_antisymmetry(d).unwrap().passed());
        assert!(verify_trace_identity(d).unwrap().passed());
        assert!(verify_cyclic_identity(d).unwrap().passed());
        assert!(verify_c0_generation_all(d).unwrap().passed());
    }
}

#[test]
fn in_set_locus_lies_in_the_chart() {
    assert_eq!(vanishes_on_in_set_locus(&all_generators(8).unwrap()), Ok(()));
}

#[test]
fn generator_json_round_trip() {
    let set = all_generators(3).unwrap();
    let text = serde_json::to_string(&set.to_json()).unwrap();
    let back: Vec<GeneratorJson> = serde_json::from_str(&text).unwrap();
    assert_eq!(&GeneratorSet::from_json(3, Stage::Raw, &back).unwrap(), set.as_ref());
}

#[test]
fn quadratic_presentation_uses_exactly_the_off_diagonal_variables() {
    for d in 3..=4 {
        let set = generators_at(d, Stage::Q).unwrap();
        let expected: std::collections::BTreeSet<Coord> = off_diagonal_coords(d).into_iter().collect();
        let dd = d as usize;
        assert_eq!(expected.len(), dd * (dd * (dd + 1) / 2 - 1));
        let mut used = std::collections::BTreeSet::new();
        for (_, g) in set.iter() {
            assert!(g.is_zero() || g.is_homogeneous_of_degree(2));
            used.extend(g.variables());
        }
        assert_eq!(used, expected);
        assert!(used.iter().all(|c| !c.is_diagonal() && !c.is_constant_term()));
    }
}

#[test]
fn scaling_a_generator_commutes_with_building() {
    let g = build_generator(4, GeneratorIndex::new(2, 3, 1, 4)).unwrap();
    let h = build_generator(4, GeneratorIndex::new(2, 3, 4, 1)).unwrap();
    assert_eq!(g.scale(&int(-1)), h);
}
