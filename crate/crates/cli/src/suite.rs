//! The acceptance checks, each an exact computation with a runtime budget.
//! A check passes only if the mathematics holds and it finishes in budget.

use std::collections::BTreeSet;
use std::time::Instant;

use hilb_core::exactalg::{rat, Coord, Rational};
use hilb_core::factorization::{
    enumerate_rows, enumerate_shifted, extract_m, find_nonsingular_minor, minor89_evidence, nonvanishing_in_set,
    vanish_on_principal, verify_factorization, COLS, D, ROWS,
};
use hilb_core::principal::{
    center_map, curve_eval, curve_limit, expected_generic_rank, interpolate, jacobian_rank_at, sample_indexed,
    scale_action, scale_coordinates, translate_coordinates, verify_on_chart, CurveSpec, Projective, DEFAULT_HEIGHT,
};
use hilb_core::projector::{
    all_generators, c0_literal_counts, generators_at, off_diagonal_coords, vanishes_on_in_set_locus,
    verify_antisymmetry, verify_c0_generation_all, verify_cyclic_identity, verify_trace_identity, Stage,
};
use hilb_core::schur::{
    binomial, coordinate_partition, hook_content_dim, verify_dimension_ledger_with, verify_sym2_decomposition,
};
use hilb_core::{seed, Result};
use num_bigint::BigUint;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Sampled points of the principal component per `d` in the chart check.
pub const CHART_SAMPLES: usize = 50;
/// Jacobian seeds per `d`.
pub const JACOBIAN_SEEDS: u64 = 20;
/// Points of the principal component where the found minor must vanish.
pub const VANISHING_SAMPLES: usize = 20;
/// In-set assignments where the found minor must not vanish.
pub const NONVANISHING_SAMPLES: usize = 5;
/// Budget for one 90×90 determinant.
pub const DETERMINANT_BUDGET_MS: u128 = 60_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    /// Report-only checks never fail a run.
    pub required: bool,
    pub passed: bool,
    pub detail: String,
    /// Not serialized, so summaries of repeated runs compare equal.
    #[serde(skip)]
    pub millis: u128,
    pub budget_secs: u64,
}

struct Criterion {
    id: u8,
    name: &'static str,
    required: bool,
    budget_secs: u64,
    run: fn(u64) -> Result<(bool, String)>,
}

const CRITERIA: [Criterion; 10] = [
    Criterion { id: 1, name: "identity suite", required: true, budget_secs: 120, run: identities },
    Criterion { id: 2, name: "chart closure", required: true, budget_secs: 300, run: chart_closure },
    Criterion { id: 3, name: "dimension ledger", required: true, budget_secs: 600, run: ledger },
    Criterion { id: 4, name: "quadratic reduction", required: true, budget_secs: 300, run: quadratic_reduction },
    Criterion { id: 5, name: "factorization certificate", required: true, budget_secs: 300, run: factorization },
    Criterion { id: 6, name: "degree-90 separation", required: true, budget_secs: 2700, run: separation },
    Criterion { id: 7, name: "in-set locus", required: true, budget_secs: 60, run: in_set_locus },
    Criterion { id: 8, name: "jacobian rank", required: true, budget_secs: 1200, run: jacobian },
    Criterion { id: 9, name: "averaging map and curves", required: true, budget_secs: 300, run: geometry },
    Criterion { id: 10, name: "minimality evidence", required: false, budget_secs: 600, run: minimality },
];

pub fn criterion_ids() -> Vec<u8> {
    CRITERIA.iter().map(|c| c.id).collect()
}

/// Runs one check; errors become failures with the error as detail.
pub fn run_criterion(id: u8, seed: u64) -> Option<CriterionResult> {
    let spec = CRITERIA.iter().find(|c| c.id == id)?;
    let start = Instant::now();
    let (mut passed, mut detail) = match (spec.run)(seed) {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    let millis = start.elapsed().as_millis();
    if millis > spec.budget_secs as u128 * 1000 {
        passed = false;
        detail = format!("{detail}; over the {} s budget", spec.budget_secs);
    }
    Some(CriterionResult {
        id,
        name: spec.name.to_string(),
        required: spec.required,
        passed,
        detail,
        millis,
        budget_secs: spec.budget_secs,
    })
}

fn identities(_seed: u64) -> Result<(bool, String)> {
    let mut checks = 0;
    for d in 3..=8u8 {
        let reports = [
            verify_antisymmetry(d)?,
            verify_trace_identity(d)?,
            verify_cyclic_identity(d)?,
            verify_c0_generation_all(d)?,
        ];
        for r in &reports {
            if let Some(f) = r.failures().next() {
                return Ok((false, format!("{} fails at d = {d}, {}", r.identity, f.location)));
            }
            checks += r.checks.len();
        }
        // the combination is C(0) itself exactly when u != j
        let (_, scaled) = c0_literal_counts(&reports[3]);
        let expected = d as usize * (d as usize * (d as usize - 1) / 2);
        if scaled != expected {
            return Ok((
                false,
                format!("d = {d}: {scaled} reconstructions needed the multiplier, expected {expected}"),
            ));
        }
    }
    Ok((true, format!("{checks} exact identities, d = 3..8")))
}

fn chart_closure(seed: u64) -> Result<(bool, String)> {
    for d in 3..=8u8 {
        let bad = (0..CHART_SAMPLES as u64)
            .into_par_iter()
            .map(|i| {
                let coords = interpolate(&sample_indexed(d, seed, i, DEFAULT_HEIGHT)?)?;
                Ok((i, verify_on_chart(&coords)?.passed()))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .find(|(_, ok)| !ok);
        if let Some((i, _)) = bad {
            return Ok((false, format!("sample {i} at d = {d} is off the chart")));
        }
    }
    Ok((true, format!("{CHART_SAMPLES} samples per d, d = 3..8, all generators zero")))
}

fn ledger(_seed: u64) -> Result<(bool, String)> {
    for d in 3..=8usize {
        let expected = BigUint::from(d) * (binomial(d as u64 + 1, 2) - 1u32);
        if hook_content_dim(&coordinate_partition(d), d) != expected {
            return Ok((false, format!("coordinate representation at d = {d}")));
        }
        let report = verify_dimension_ledger_with(d, d <= 6)?;
        if let Some(c) = report.checks.iter().find(|c| !c.passed) {
            return Ok((false, format!("d = {d}, {}: {} != {}", c.name, c.left, c.right)));
        }
    }
    if hook_content_dim(&coordinate_partition(8), 8) != BigUint::from(280u32) {
        return Ok((false, "ambient dimension at d = 8 is not 280".into()));
    }
    for d in 3..=4 {
        if !verify_sym2_decomposition(d)?.passed() {
            return Ok((false, format!("character decomposition at d = {d}")));
        }
    }
    Ok((true, "dimensions d = 3..8, generator rank d = 3..6, characters d = 3, 4".into()))
}

fn quadratic_reduction(_seed: u64) -> Result<(bool, String)> {
    for d in 3..=8u8 {
        let set = generators_at(d, Stage::Q)?;
        let mut used = BTreeSet::new();
        for (idx, g) in set.iter() {
            if !(g.is_zero() || g.is_homogeneous_of_degree(2)) {
                return Ok((false, format!("{idx:?} at d = {d} is not a homogeneous quadric")));
            }
            used.extend(g.variables());
        }
        if let Some(v) = used.iter().find(|c| c.is_diagonal() || c.is_constant_term()) {
            return Ok((false, format!("{v:?} survives at d = {d}")));
        }
        let expected: BTreeSet<Coord> = off_diagonal_coords(d).into_iter().collect();
        let n = d as usize;
        if used != expected || used.len() != n * (n * (n + 1) / 2 - 1) {
            return Ok((false, format!("d = {d} uses {} variables", used.len())));
        }
    }
    Ok((true, "homogeneous quadrics in d(C(d+1,2)-1) off-diagonal variables, d = 3..8".into()))
}

fn factorization(_seed: u64) -> Result<(bool, String)> {
    let rows = enumerate_rows()?.len();
    let cols = enumerate_shifted()?.len();
    let m = extract_m()?;
    let report = verify_factorization(&m)?;
    let passed = rows == ROWS && cols == COLS && report.passed();
    Ok((
        passed,
        format!(
            "{rows}x{cols}, {} entries, all in-set: {}, mismatched rows: {}",
            report.nonzero_entries,
            report.entries_in_set,
            report.mismatched_rows.len()
        ),
    ))
}

fn separation(seed: u64) -> Result<(bool, String)> {
    let search = find_nonsingular_minor(seed)?;
    let sel = &search.selection;
    let nonzero = nonvanishing_in_set(sel, NONVANISHING_SAMPLES, seed)?;
    let zero = vanish_on_principal(sel, VANISHING_SAMPLES, seed)?;
    let slowest = nonzero.samples.iter().chain(&zero.samples).map(|s| s.millis).max().unwrap_or(0);
    let passed = nonzero.all_nonzero() && zero.all_zero() && slowest < DETERMINANT_BUDGET_MS;
    Ok((
        passed,
        format!(
            "nonzero at {}/{} in-set points, zero at {}/{} principal points, slowest determinant {} ms",
            nonzero.samples.iter().filter(|s| !s.zero).count(),
            nonzero.samples.len(),
            zero.samples.iter().filter(|s| s.zero).count(),
            zero.samples.len(),
            slowest
        ),
    ))
}

fn in_set_locus(_seed: u64) -> Result<(bool, String)> {
    let set = all_generators(D)?;
    Ok(match vanishes_on_in_set_locus(&set) {
        Ok(()) => (true, format!("every monomial of all {} generators leaves the in-set", set.len())),
        Err(idx) => (false, format!("{idx:?} has a monomial in in-set variables only")),
    })
}

fn jacobian(seed: u64) -> Result<(bool, String)> {
    let mut parts = Vec::new();
    for d in [3u8, 8] {
        let ranks = (0..JACOBIAN_SEEDS)
            .into_par_iter()
            .map(|i| {
                let coords = interpolate(&sample_indexed(d, seed, i, DEFAULT_HEIGHT)?)?;
                jacobian_rank_at(&coords)
            })
            .collect::<Result<Vec<_>>>()?;
        let expected = expected_generic_rank(d);
        if let Some((i, r)) = ranks.iter().enumerate().find(|(_, r)| r.rank != expected) {
            return Ok((false, format!("d = {d}, seed index {i}: rank {} != {expected}", r.rank)));
        }
        parts.push(format!("d = {d}: rank {expected} of {} at {JACOBIAN_SEEDS} seeds", ranks[0].columns));
    }
    Ok((true, parts.join("; ")))
}

fn geometry(seed: u64) -> Result<(bool, String)> {
    let lambdas = [rat(2, 1), rat(-1, 1), rat(-3, 5), rat(7, 2)];
    for i in 0..20u64 {
        let d = 3 + (i % 6) as u8;
        let cfg = sample_indexed(d, seed, i, DEFAULT_HEIGHT)?;
        let coords = interpolate(&cfg)?;
        let mut rng = seed::rng(seed::derive(seed ^ 0x5, i));
        let t: Vec<Rational> = (0..d).map(|_| rat(rng.gen_range(-20..=20), rng.gen_range(1..=6))).collect();
        let moved = translate_coordinates(&coords, &t)?;
        if moved != interpolate(&cfg.translate(&t)?)? {
            return Ok((false, format!("sample {i}: translation formula disagrees with interpolation")));
        }
        let shifted: Vec<Rational> = center_map(&coords).iter().zip(&t).map(|(c, x)| c + x).collect();
        if center_map(&moved) != shifted {
            return Ok((false, format!("sample {i}: center map is not translation-equivariant")));
        }
        let lambda = &lambdas[i as usize % lambdas.len()];
        if scale_coordinates(&coords, lambda) != interpolate(&scale_action(&cfg, lambda)?)? {
            return Ok((false, format!("sample {i}: scaling weights fail")));
        }
    }
    let specs = [
        vec![Projective::from_i64(0, 1)?, Projective::from_i64(1, 0)?, Projective::from_i64(2, 1)?],
        vec![Projective::from_i64(-1, 1)?, Projective::from_i64(3, 2)?, Projective::from_i64(1, 2)?],
    ];
    let params = [(5, 1), (-2, 3), (3, -1), (4, 7)];
    for anchors in specs {
        let spec = CurveSpec::new(3, anchors)?;
        for (a, b) in params {
            let coords = interpolate(&curve_eval(&spec, &Projective::from_i64(a, b)?)?)?;
            if center_map(&coords).iter().any(|x| !num_traits::Zero::is_zero(x)) {
                return Ok((false, format!("center off the origin at [{a}:{b}]")));
            }
        }
        for j in 1..=3 {
            let limit = curve_limit(&spec, j)?;
            if !verify_on_chart(&limit)?.passed() {
                return Ok((false, format!("limit at anchor {j} is off the chart")));
            }
            if center_map(&limit).iter().any(|x| !num_traits::Zero::is_zero(x)) {
                return Ok((false, format!("limit at anchor {j} has its center off the origin")));
            }
        }
    }
    Ok((true, "20 samples equivariant, scaling weights exact, curve centers at 0, 6 finite limits on the chart".into()))
}

fn minimality(seed: u64) -> Result<(bool, String)> {
    let search = find_nonsingular_minor(seed)?;
    let report = minor89_evidence(&search.selection, VANISHING_SAMPLES, 1, seed)?;
    let nonzero = report.minors.iter().filter(|m| m.nonzero).count();
    Ok((
        report.positive(),
        format!("{nonzero} of {} sampled 89x89 minors nonzero on the principal component", report.minors.len()),
    ))
}
