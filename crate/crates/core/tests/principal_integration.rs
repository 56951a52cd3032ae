//! Interpolated coordinates checked against the points they came from, the
//! affine actions, membership sampling and Jacobian ranks.

use hilb_core::exactalg::{int, rat, Coord, ExactMatrix, Rational, SparsePolynomial};
use hilb_core::principal::{
    base_configuration, center_map, center_of_mass, gl_act, interpolate, jacobian_rank_at, membership_sample_test,
    sample_configuration, transform_coordinates, verify_on_chart, PointConfiguration, ProjectorCoordinates,
    DEFAULT_HEIGHT,
};
use hilb_core::projector::{build_generator, is_in_set, GeneratorIndex};
use num_traits::Zero;
use rand::{Rng, SeedableRng};

/// `p_{0,ij} + Σ_m p_{m,ij} x_m = x_i x_j` at every point: the defining
/// property of the coordinates, checked without solving anything.
fn reproduces_products(coords: &ProjectorCoordinates, cfg: &PointConfiguration) -> bool {
    let d = cfg.d;
    cfg.points.iter().all(|x| {
        (1..=d).all(|i| {
            (i..=d).all(|j| {
                let mut v = coords.get(Coord::constant(i, j)).clone();
                for m in 1..=d {
                    v += coords.get(Coord::new(m, i, j)) * &x[m as usize - 1];
                }
                v == &x[i as usize - 1] * &x[j as usize - 1]
            })
        })
    })
}

#[test]
fn interpolation_reproduces_products_at_the_points() {
    for d in 2..=6 {
        for seed in 0..3 {
            let cfg = sample_configuration(d, seed, DEFAULT_HEIGHT).unwrap();
            let coords = interpolate(&cfg).unwrap();
            assert!(reproduces_products(&coords, &cfg), "d = {d}, seed = {seed}");
            assert!(verify_on_chart(&coords).unwrap().passed());
        }
    }
}

#[test]
fn reordering_points_does_not_change_coordinates() {
    let cfg = sample_configuration(4, 5, DEFAULT_HEIGHT).unwrap();
    let mut points = cfg.points.clone();
    points.reverse();
    points.swap(0, 2);
    let shuffled = PointConfiguration::new(4, points).unwrap();
    assert_eq!(interpolate(&cfg).unwrap(), interpolate(&shuffled).unwrap());
}

#[test]
fn base_configuration_is_invariant_under_axis_permutations() {
    let d = 3;
    let coords = interpolate(&base_configuration(d)).unwrap();
    assert_eq!(center_map(&coords), vec![Rational::zero(); d as usize]);
    for perm in [[1, 0, 2], [1, 2, 0], [2, 1, 0]] {
        let mut g = ExactMatrix::zeros(3, 3);
        for (i, &j) in perm.iter().enumerate() {
            g.set(i, j, int(1));
        }
        assert_eq!(transform_coordinates(&coords, &g).unwrap(), coords, "{perm:?}");
    }
}

#[test]
fn linear_action_on_coordinates_matches_action_on_points() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for seed in 0..4 {
        let cfg = sample_configuration(3, seed, DEFAULT_HEIGHT).unwrap();
        let g = loop {
            let rows: Vec<Vec<Rational>> =
                (0..3).map(|_| (0..3).map(|_| rat(rng.gen_range(-5..=5), rng.gen_range(1..=3))).collect()).collect();
            let g = ExactMatrix::from_rows(rows).unwrap();
            if !hilb_core::exactalg::det_exact(&g).unwrap().is_zero() {
                break g;
            }
        };
        let moved = interpolate(&gl_act(&g, &cfg).unwrap()).unwrap();
        assert_eq!(transform_coordinates(&interpolate(&cfg).unwrap(), &g).unwrap(), moved);
    }
}

#[test]
fn center_map_is_the_center_of_mass() {
    for d in [3, 5, 8] {
        let cfg = sample_configuration(d, 21, DEFAULT_HEIGHT).unwrap();
        assert_eq!(center_map(&interpolate(&cfg).unwrap()), center_of_mass(&cfg));
    }
}

#[test]
fn in_set_points_satisfy_the_chart_equations() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
    let mut coords = ProjectorCoordinates::zeros(8);
    for c in hilb_core::exactalg::CoordSpace::new(8).coords() {
        if is_in_set(c) {
            coords.set(c, int(rng.gen_range(-50..=50)));
        }
    }
    assert!(verify_on_chart(&coords).unwrap().passed());
}

#[test]
fn membership_separates_generators_from_coordinates() {
    let d = 3;
    let g = build_generator(d, GeneratorIndex::new(2, 1, 3, 2)).unwrap();
    assert!(membership_sample_test(&g, d, 10, 4, DEFAULT_HEIGHT).unwrap().vanishes());
    let v = SparsePolynomial::var(d, Coord::new(1, 1, 2));
    assert!(!membership_sample_test(&v, d, 10, 4, DEFAULT_HEIGHT).unwrap().vanishes());
}

#[test]
fn jacobian_rank_is_generic_at_d3() {
    for seed in 0..5 {
        let coords = interpolate(&sample_configuration(3, seed, DEFAULT_HEIGHT).unwrap()).unwrap();
        let r = jacobian_rank_at(&coords).unwrap();
        assert_eq!((r.rank, r.columns), (12, 24));
    }
}
