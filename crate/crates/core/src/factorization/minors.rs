//! Maximal minors of the factorization matrix, evaluated exactly at in-set
//! assignments and at sampled points of the principal component. The
//! degree-90 determinants are never expanded.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::matrix::{factorization_matrix, in_set_variables, FactorizationMatrix, COLS, D, ROWS};
use crate::error::{HilbError, Result};
use crate::exactalg::bareiss::{clear_denominators, det, gauss_jordan};
use crate::exactalg::{format_rational, int, Coord, Rational};
use crate::principal::{interpolate, sample_indexed, ConfigJson, PointConfiguration, DEFAULT_HEIGHT};
use crate::seed;

/// Half-width of the integer box for in-set assignments.
pub const ASSIGNMENT_HEIGHT: i64 = 50;
/// Attempts allowed when searching for a nonsingular minor.
pub const MINOR_ATTEMPTS: u64 = 10;

/// Sorted columns of a 90×90 minor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct MinorSelection(Vec<usize>);

impl MinorSelection {
    pub fn new(mut cols: Vec<usize>) -> Result<Self> {
        cols.sort_unstable();
        cols.dedup();
        if cols.len() != ROWS || cols.iter().any(|&c| c >= COLS) {
            return Err(HilbError::Domain(format!("a minor needs {ROWS} distinct columns below {COLS}")));
        }
        Ok(MinorSelection(cols))
    }

    pub fn columns(&self) -> &[usize] {
        &self.0
    }
}

impl TryFrom<Vec<usize>> for MinorSelection {
    type Error = HilbError;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        MinorSelection::new(v)
    }
}

impl From<MinorSelection> for Vec<usize> {
    fn from(s: MinorSelection) -> Vec<usize> {
        s.0
    }
}

/// Values for the 45 in-set variables.
pub type Assignment = BTreeMap<Coord, Rational>;

/// Integers in `[−50, 50]` for every in-set variable.
pub fn random_assignment(seed: u64) -> Assignment {
    let mut rng = seed::rng(seed);
    in_set_variables().into_iter().map(|c| (c, int(rng.gen_range(-ASSIGNMENT_HEIGHT..=ASSIGNMENT_HEIGHT)))).collect()
}

/// In-set values of a coordinate point.
pub fn assignment_from(coords: &crate::principal::ProjectorCoordinates) -> Assignment {
    in_set_variables().into_iter().map(|c| (c, coords.get(c).clone())).collect()
}

fn integer_rows(rows: &[Vec<Rational>]) -> (Vec<Vec<BigInt>>, Rational) {
    let mut scale = Rational::one();
    let ints = rows
        .iter()
        .map(|r| {
            let (ints, lcm) = clear_denominators(r);
            scale *= Rational::from_integer(lcm);
            ints
        })
        .collect();
    (ints, scale)
}

/// Exact determinant of the rows and columns given, at an assignment.
fn det_of(m: &FactorizationMatrix, rows: &[usize], cols: &[usize], values: &Assignment) -> Result<Rational> {
    let full = m.evaluate(values)?;
    let sub: Vec<Vec<Rational>> = rows.iter().map(|&r| cols.iter().map(|&c| full[r][c].clone()).collect()).collect();
    let (ints, scale) = integer_rows(&sub);
    Ok(Rational::from_integer(det(ints)) / scale)
}

/// Determinant of the selected 90×90 minor at an assignment.
pub fn minor_det_at(sel: &MinorSelection, values: &Assignment) -> Result<Rational> {
    let m = factorization_matrix()?;
    let rows: Vec<usize> = (0..ROWS).collect();
    det_of(&m, &rows, sel.columns(), values)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorSearch {
    pub selection: MinorSelection,
    /// Seed of the assignment at which the minor is nonsingular.
    pub assignment_seed: u64,
    pub attempts: u64,
    pub determinant: String,
}

/// Columns of a nonsingular 90×90 minor: pivot columns of `𝐌` at a seeded
/// in-set assignment, confirmed by an exact determinant.
pub fn find_nonsingular_minor(seed: u64) -> Result<MinorSearch> {
    let m = factorization_matrix()?;
    let mut best = 0;
    for attempt in 0..MINOR_ATTEMPTS {
        let assignment_seed = seed::derive(seed, attempt);
        let values = random_assignment(assignment_seed);
        let (ints, _) = integer_rows(&m.evaluate(&values)?);
        let form = gauss_jordan(ints, COLS);
        best = best.max(form.pivots.len());
        if form.pivots.len() < ROWS {
            continue;
        }
        let selection = MinorSelection::new(form.pivots)?;
        let det = minor_det_at(&selection, &values)?;
        if det.is_zero() {
            return Err(HilbError::RankDeficient("pivot columns gave a singular minor".into()));
        }
        return Ok(MinorSearch {
            selection,
            assignment_seed,
            attempts: attempt + 1,
            determinant: format_rational(&det),
        });
    }
    Err(HilbError::RankDeficient(format!(
        "rank of the factorization matrix is at most {best} < {ROWS} at {MINOR_ATTEMPTS} assignments"
    )))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleDeterminant {
    pub sample: u64,
    pub seed: u64,
    pub config: Option<ConfigJson>,
    pub determinant: String,
    pub zero: bool,
    /// Wall time; kept out of the serialized form so certificates are reproducible.
    #[serde(skip)]
    pub millis: u128,
}

/// Determinants of one minor at a list of points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorCertificate {
    pub columns: Vec<usize>,
    pub samples: Vec<SampleDeterminant>,
}

impl MinorCertificate {
    pub fn all_zero(&self) -> bool {
        self.samples.iter().all(|s| s.zero)
    }

    pub fn all_nonzero(&self) -> bool {
        !self.samples.is_empty() && self.samples.iter().all(|s| !s.zero)
    }

    /// First sample with a nonzero determinant.
    pub fn counterexample(&self) -> Option<&SampleDeterminant> {
        self.samples.iter().find(|s| !s.zero)
    }
}

fn timed_det(sel: &MinorSelection, values: &Assignment) -> Result<(String, bool, u128)> {
    let start = Instant::now();
    let det = minor_det_at(sel, values)?;
    Ok((format_rational(&det), det.is_zero(), start.elapsed().as_millis()))
}

/// The minor at `n_samples` interpolated points of the principal component;
/// passes iff every determinant is exactly zero.
pub fn vanish_on_principal(sel: &MinorSelection, n_samples: usize, seed: u64) -> Result<MinorCertificate> {
    let samples = (0..n_samples as u64)
        .into_par_iter()
        .map(|i| {
            let cfg = sample_indexed(D, seed, i, DEFAULT_HEIGHT)?;
            let values = assignment_from(&interpolate(&cfg)?);
            let (determinant, zero, millis) = timed_det(sel, &values)?;
            Ok(SampleDeterminant {
                sample: i,
                seed: seed::derive(seed, i),
                config: Some(cfg.to_json()),
                determinant,
                zero,
                millis,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MinorCertificate { columns: sel.columns().to_vec(), samples })
}

/// The minor at one given configuration.
pub fn minor_at_configuration(sel: &MinorSelection, cfg: &PointConfiguration) -> Result<SampleDeterminant> {
    let values = assignment_from(&interpolate(cfg)?);
    let (determinant, zero, millis) = timed_det(sel, &values)?;
    Ok(SampleDeterminant { sample: 0, seed: 0, config: Some(cfg.to_json()), determinant, zero, millis })
}

/// The minor at `n` seeded in-set-only assignments, where every other
/// coordinate is zero.
pub fn nonvanishing_in_set(sel: &MinorSelection, n: usize, seed: u64) -> Result<MinorCertificate> {
    let samples = (0..n as u64)
        .into_par_iter()
        .map(|i| {
            let s = seed::derive(seed, i);
            let (determinant, zero, millis) = timed_det(sel, &random_assignment(s))?;
            Ok(SampleDeterminant { sample: i, seed: s, config: None, determinant, zero, millis })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MinorCertificate { columns: sel.columns().to_vec(), samples })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Minor89 {
    pub sample: u64,
    pub dropped_row: usize,
    pub dropped_col: usize,
    pub nonzero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Minor89Report {
    pub columns: Vec<usize>,
    pub minors: Vec<Minor89>,
}

impl Minor89Report {
    /// Some sampled 89×89 minor is nonzero on the principal component.
    pub fn positive(&self) -> bool {
        self.minors.iter().any(|m| m.nonzero)
    }
}

/// At each of `n_samples` points of the principal component, evaluates
/// `per_sample` 89×89 minors obtained from `sel` by dropping a seeded row and
/// column.
pub fn minor89_evidence(sel: &MinorSelection, n_samples: usize, per_sample: usize, seed: u64) -> Result<Minor89Report> {
    let m = factorization_matrix()?;
    let jobs: Vec<(u64, usize, usize)> = (0..n_samples as u64)
        .flat_map(|i| {
            // a stream separate from the one that draws the configurations
            let mut rng = seed::rng(seed::derive(seed ^ 0x89, i));
            (0..per_sample).map(|_| (i, rng.gen_range(0..ROWS), rng.gen_range(0..ROWS))).collect::<Vec<_>>()
        })
        .collect();
    let minors = jobs
        .into_par_iter()
        .map(|(i, dr, dc)| {
            let cfg = sample_indexed(D, seed, i, DEFAULT_HEIGHT)?;
            let values = assignment_from(&interpolate(&cfg)?);
            let rows: Vec<usize> = (0..ROWS).filter(|&r| r != dr).collect();
            let cols: Vec<usize> =
                sel.columns().iter().enumerate().filter(|&(k, _)| k != dc).map(|(_, &c)| c).collect();
            let det = det_of(&m, &rows, &cols, &values)?;
            Ok(Minor89 { sample: i, dropped_row: dr, dropped_col: sel.columns()[dc], nonzero: !det.is_zero() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Minor89Report { columns: sel.columns().to_vec(), minors })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection_validation() {
        assert!(MinorSelection::new((0..89).collect()).is_err());
        assert!(MinorSelection::new((25..115).collect()).is_ok());
        assert!(MinorSelection::new((26..116).collect()).is_err());
    }

    #[test]
    fn zero_assignment_gives_zero() {
        let sel = MinorSelection::new((0..90).collect()).unwrap();
        let zero: Assignment = in_set_variables().into_iter().map(|c| (c, int(0))).collect();
        assert!(minor_det_at(&sel, &zero).unwrap().is_zero());
    }
}
