//! Evaluation of the chart equations at explicit coordinates, and sampled
//! membership tests for polynomials vanishing on the principal component.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::config::{interpolate, sample_indexed, ConfigJson, ProjectorCoordinates};
use crate::error::{HilbError, Result};
use crate::exactalg::{format_rational, SparsePolynomial};
use crate::projector::{all_generators, GeneratorIndex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Residual {
    pub generator: GeneratorIndex,
    pub value: String,
}

/// Outcome of evaluating every generator at one point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartReport {
    pub d: u8,
    pub evaluated: usize,
    /// Nonzero residuals in generator order.
    pub failures: Vec<Residual>,
}

impl ChartReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn ensure(self) -> Result<Self> {
        match self.failures.first() {
            None => Ok(self),
            Some(f) => Err(HilbError::Precondition(format!(
                "point is off the chart: {:?} evaluates to {}",
                f.generator, f.value
            ))),
        }
    }
}

/// Evaluates every raw generator at `coords`; passes iff all are exactly zero.
pub fn verify_on_chart(coords: &ProjectorCoordinates) -> Result<ChartReport> {
    let set = all_generators(coords.d)?;
    let mut failures = Vec::new();
    for (idx, g) in set.iter() {
        let v = g.eval_with(|c| coords.lookup(c))?;
        if !v.is_zero() {
            failures.push(Residual { generator: *idx, value: format_rational(&v) });
        }
    }
    Ok(ChartReport { d: coords.d, evaluated: set.len(), failures })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// Zero at every sampled point: evidence, not proof, of membership.
    Vanishes { samples: usize },
    /// The first sample (by index) where the polynomial is nonzero.
    Counterexample { sample: u64, config: ConfigJson, value: String },
}

impl Verdict {
    pub fn vanishes(&self) -> bool {
        matches!(self, Verdict::Vanishes { .. })
    }
}

/// Evaluates `poly` at the interpolated coordinates of `n_samples` seeded
/// spanning configurations, in parallel.
pub fn membership_sample_test(
    poly: &SparsePolynomial,
    d: u8,
    n_samples: usize,
    seed: u64,
    height: i64,
) -> Result<Verdict> {
    if poly.d() != d {
        return Err(HilbError::Dimension(format!("polynomial is in the d = {} chart, expected {d}", poly.d())));
    }
    let values = (0..n_samples as u64)
        .into_par_iter()
        .map(|i| {
            let cfg = sample_indexed(d, seed, i, height)?;
            let coords = interpolate(&cfg)?;
            let v = poly.eval_with(|c| coords.lookup(c))?;
            Ok((i, cfg, v))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(match values.into_iter().find(|(_, _, v)| !v.is_zero()) {
        None => Verdict::Vanishes { samples: n_samples },
        Some((sample, cfg, v)) => Verdict::Counterexample { sample, config: cfg.to_json(), value: format_rational(&v) },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, Coord};
    use crate::principal::config::{sample_configuration, DEFAULT_HEIGHT};

    #[test]
    fn interpolated_points_lie_on_the_chart() {
        for d in 2..=5 {
            let coords = interpolate(&sample_configuration(d, 3, DEFAULT_HEIGHT).unwrap()).unwrap();
            let r = verify_on_chart(&coords).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn perturbation_names_a_generator() {
        let mut coords = interpolate(&sample_configuration(3, 4, DEFAULT_HEIGHT).unwrap()).unwrap();
        let c = Coord::new(1, 2, 3);
        coords.set(c, coords.get(c) + int(1));
        let r = verify_on_chart(&coords).unwrap();
        assert!(!r.passed());
        assert!(r.ensure().is_err());
    }

    #[test]
    fn membership_verdicts() {
        let d = 4;
        let g = all_generators(d).unwrap().get(2, 1, 3, 4);
        assert!(membership_sample_test(&g, d, 5, 1, DEFAULT_HEIGHT).unwrap().vanishes());
        assert!(membership_sample_test(&SparsePolynomial::zero(d), d, 3, 1, DEFAULT_HEIGHT).unwrap().vanishes());
        let x = SparsePolynomial::var(d, Coord::new(1, 1, 1));
        let v = membership_sample_test(&x, d, 5, 1, DEFAULT_HEIGHT).unwrap();
        assert!(matches!(v, Verdict::Counterexample { sample: 0, .. }), "{v:?}");
    }
}
