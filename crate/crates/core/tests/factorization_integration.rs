//! The 90×115 factorization checked pointwise against freshly built
//! generators, and its maximal minors at in-set and principal points.

use std::collections::BTreeMap;

use hilb_core::exactalg::bareiss::clear_denominators;
use hilb_core::exactalg::{det_exact, int, Coord, CoordSpace, ExactMatrix, Rational};
use hilb_core::factorization::{
    assignment_from, enumerate_rows, enumerate_shifted, factorization_matrix, find_nonsingular_minor, in_set_variables,
    minor_at_configuration, minor_det_at, random_assignment, FactorizationMatrix, MatrixJson, MinorSelection, COLS, D,
    IN_SET, ROWS,
};
use hilb_core::principal::{base_configuration, interpolate, sample_configuration, DEFAULT_HEIGHT};
use hilb_core::projector::{build_generator, is_in_set, GeneratorIndex};
use num_traits::Zero;
use rand::{Rng, SeedableRng};

#[test]
fn shapes_and_frozen_order() {
    let rows = enumerate_rows().unwrap();
    assert_eq!(rows.len(), ROWS);
    assert_eq!(rows.first(), Some(&GeneratorIndex::new(1, 4, 5, 6)));
    assert_eq!(rows.last(), Some(&GeneratorIndex::new(3, 6, 5, 6)));
    let cols = enumerate_shifted().unwrap();
    assert_eq!(cols.len(), COLS);
    assert!(cols.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(in_set_variables().len(), IN_SET);
}

#[test]
fn product_matches_generators_at_random_points() {
    let m = factorization_matrix().unwrap();
    let space = CoordSpace::new(D);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(90);
    for _ in 0..3 {
        let point: BTreeMap<Coord, Rational> =
            space.coords().into_iter().map(|c| (c, int(rng.gen_range(-30..=30)))).collect();
        let at = |p: &hilb_core::exactalg::SparsePolynomial| p.eval_with(|c| point.get(&c)).unwrap();
        let numeric = m.evaluate(&point).unwrap();
        let u: Vec<Rational> = m.cols.iter().map(|s| at(&s.expression())).collect();
        for (r, idx) in m.rows.iter().enumerate() {
            let lhs: Rational = numeric[r].iter().zip(&u).map(|(x, y)| x * y).sum();
            let g = build_generator(D, *idx).unwrap();
            assert_eq!(lhs, at(&g), "row {r}");
        }
    }
}

#[test]
fn entries_are_signed_in_set_variables() {
    let m = factorization_matrix().unwrap();
    for r in 0..ROWS {
        for c in 0..COLS {
            if let Some(e) = m.entry(r, c) {
                assert!(e.sign == 1 || e.sign == -1);
                assert!(is_in_set(e.var));
            }
        }
    }
}

#[test]
fn matrix_json_round_trip() {
    let m = factorization_matrix().unwrap();
    let text = serde_json::to_string(&m.to_json()).unwrap();
    let back: MatrixJson = serde_json::from_str(&text).unwrap();
    assert_eq!(back.rows, 90);
    assert_eq!(back.cols, 115);
    assert_eq!(&FactorizationMatrix::from_json(&back).unwrap(), m.as_ref());
}

#[test]
fn scaling_one_row_scales_the_minor() {
    let search = find_nonsingular_minor(1).unwrap();
    let values = random_assignment(search.assignment_seed);
    let m = factorization_matrix().unwrap();
    let full = m.evaluate(&values).unwrap();
    let sub: Vec<Vec<Rational>> =
        full.iter().map(|row| search.selection.columns().iter().map(|&c| row[c].clone()).collect()).collect();
    let base = det_exact(&ExactMatrix::from_rows(sub.clone()).unwrap()).unwrap();
    assert!(!base.is_zero());
    assert_eq!(base, minor_det_at(&search.selection, &values).unwrap());
    let mut scaled = ExactMatrix::from_rows(sub).unwrap();
    scaled.scale_row(17, &int(-7));
    assert_eq!(det_exact(&scaled).unwrap(), base * int(-7));
    // integer rows need no denominators
    assert!(full.iter().all(|row| clear_denominators(row).1 == 1.into()));
}

#[test]
fn found_minor_separates_in_set_points_from_principal_points() {
    let search = find_nonsingular_minor(2).unwrap();
    let sel = &search.selection;
    assert!(!minor_det_at(sel, &random_assignment(12345)).unwrap().is_zero());
    let cfg = sample_configuration(D, 77, DEFAULT_HEIGHT).unwrap();
    assert!(minor_det_at(sel, &assignment_from(&interpolate(&cfg).unwrap())).unwrap().is_zero());
    assert!(minor_at_configuration(sel, &base_configuration(D)).unwrap().zero);
}

#[test]
fn selection_json_is_a_plain_array() {
    let sel = MinorSelection::new((10..100).collect()).unwrap();
    let text = serde_json::to_string(&sel).unwrap();
    assert!(text.starts_with("[10,11,"));
    assert_eq!(serde_json::from_str::<MinorSelection>(&text).unwrap(), sel);
    assert!(serde_json::from_str::<MinorSelection>("[1,2,3]").is_err());
}
