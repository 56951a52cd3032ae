//! Exact linear and quadratic relations among the raw generators.

use serde::Serialize;

use super::generators::{all_generators, GeneratorSet};
use crate::error::{HilbError, Result};
use crate::exactalg::{int, Coord, SparsePolynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub location: String,
    pub passed: bool,
    /// Display form of the nonzero residual, for failures only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub d: u8,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    fn new(identity: &str, d: u8) -> Self {
        IdentityReport { identity: identity.to_string(), d, checks: Vec::new() }
    }

    fn record(&mut self, location: String, residual: &SparsePolynomial) {
        let passed = residual.is_zero();
        let residual = (!passed).then(|| residual.to_string());
        self.checks.push(IdentityCheck { location, passed, residual, note: None });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// The report itself if every check passed, else the first violation.
    pub fn ensure(self) -> Result<Self> {
        let Some(f) = self.failures().next() else {
            return Ok(self);
        };
        Err(HilbError::IdentityViolation {
            location: format!("{} {}", self.identity, f.location),
            difference: f.residual.clone().unwrap_or_default(),
        })
    }
}

fn sum(d: u8, parts: impl IntoIterator<Item = SparsePolynomial>) -> SparsePolynomial {
    parts.into_iter().fold(SparsePolynomial::zero(d), |acc, p| &acc + &p)
}

/// `C(a;j,(i,k)) + C(a;j,(k,i)) = 0` for every index, built independently in
/// both orientations.
pub fn verify_antisymmetry(d: u8) -> Result<IdentityReport> {
    use super::generators::{build_generator, GeneratorIndex};
    let mut report = IdentityReport::new("antisymmetry", d);
    for a in 0..=d {
        for j in 1..=d {
            for i in 1..=d {
                for k in i + 1..=d {
                    let g = build_generator(d, GeneratorIndex::new(a, j, i, k))?;
                    let h = build_generator(d, GeneratorIndex::new(a, j, k, i))?;
                    report.record(format!("(a,j,i,k)=({a},{j},{i},{k})"), &(&g + &h));
                }
            }
        }
    }
    Ok(report)
}

/// `Σ_j C(j;j,(i,k)) = 0` for every `i < k`.
pub fn verify_trace_identity_in(set: &GeneratorSet) -> IdentityReport {
    let d = set.d;
    let mut report = IdentityReport::new("trace", d);
    for i in 1..=d {
        for k in i + 1..=d {
            let total = sum(d, (1..=d).map(|j| set.get(j, j, i, k)));
            report.record(format!("(i,k)=({i},{k})"), &total);
        }
    }
    report
}

pub fn verify_trace_identity(d: u8) -> Result<IdentityReport> {
    Ok(verify_trace_identity_in(all_generators(d)?.as_ref()))
}

/// `C(a;j,(i,k)) + C(a;k,(j,i)) + C(a;i,(k,j)) = 0` for `a ≥ 1`, `j < i < k`.
pub fn verify_cyclic_identity_in(set: &GeneratorSet) -> IdentityReport {
    let d = set.d;
    let mut report = IdentityReport::new("cyclic", d);
    for a in 1..=d {
        for j in 1..=d {
            for i in j + 1..=d {
                for k in i + 1..=d {
                    let total = sum(d, [set.get(a, j, i, k), set.get(a, k, j, i), set.get(a, i, k, j)]);
                    report.record(format!("(a,j,i,k)=({a},{j},{i},{k})"), &total);
                }
            }
        }
    }
    report
}

pub fn verify_cyclic_identity(d: u8) -> Result<IdentityReport> {
    Ok(verify_cyclic_identity_in(all_generators(d)?.as_ref()))
}

fn var_times(d: u8, c: Coord, g: &SparsePolynomial) -> SparsePolynomial {
    &SparsePolynomial::var(d, c) * g
}

/// The three blocks whose sum reconstructs `C(0;j,(i,k))` from generators with
/// `a ≥ 1`, using the auxiliary index `u`:
///
/// * `−Σ_t [p_{u,tu} C(t;j,(i,k)) − p_{t,ku} C(u;i,(j,t)) + p_{t,iu} C(u;k,(j,t))]`
/// * `Σ_m p_{u,jm} C(m;u,(k,i))`
/// * `Σ_m [p_{m,ij} C(u;k,(m,u)) − p_{m,kj} C(u;i,(m,u))]`
pub fn c0_combination(set: &GeneratorSet, j: u8, i: u8, k: u8, u: u8) -> [SparsePolynomial; 3] {
    let d = set.d;
    let p = Coord::new;
    let mut first = SparsePolynomial::zero(d);
    let mut middle = SparsePolynomial::zero(d);
    let mut last = SparsePolynomial::zero(d);
    for t in 1..=d {
        first = &first - &var_times(d, p(u, t, u), &set.get(t, j, i, k));
        first = &first + &var_times(d, p(t, k, u), &set.get(u, i, j, t));
        first = &first - &var_times(d, p(t, i, u), &set.get(u, k, j, t));
    }
    for m in 1..=d {
        middle = &middle + &var_times(d, p(u, j, m), &set.get(m, u, k, i));
        last = &last + &var_times(d, p(m, i, j), &set.get(u, k, m, u));
        last = &last - &var_times(d, p(m, k, j), &set.get(u, i, m, u));
    }
    [first, middle, last]
}

/// Multiple of `C(0;j,(i,k))` produced by `c0_combination`: the substitution
/// for `p_{0,km}` through `C(u;k,(m,u))` is unavailable at `m = u`, and the
/// linear terms of the generators put back that missing term, twice when
/// `u = j`.
pub fn c0_multiplier(j: u8, u: u8) -> i64 {
    if u == j {
        2
    } else {
        1
    }
}

fn record_c0(report: &mut IdentityReport, set: &GeneratorSet, j: u8, i: u8, k: u8, u: u8) {
    let [first, middle, last] = c0_combination(set, j, i, k, u);
    let rhs = &(&first + &middle) + &last;
    let c0 = set.get(0, j, i, k);
    let mult = c0_multiplier(j, u);
    let residual = &c0.scale(&int(mult)) - &rhs;
    report.record(format!("(j,i,k,u)=({j},{i},{k},{u})"), &residual);
    if mult != 1 && rhs != c0 {
        let last = report.checks.last_mut().expect("just recorded");
        last.note = Some(format!("combination equals {mult}·C(0;j,(i,k)), not C(0;j,(i,k))"));
    }
}

/// Number of `c0` checks where the combination reproduces `C(0;j,(i,k))`
/// itself, and where it needed the multiplier.
pub fn c0_literal_counts(report: &IdentityReport) -> (usize, usize) {
    let scaled = report.checks.iter().filter(|c| c.note.is_some()).count();
    (report.checks.len() - scaled, scaled)
}

/// Checks `c0_multiplier(j,u) · C(0;j,(i,k)) = c0_combination(..)` for one
/// choice of indices.
pub fn verify_c0_generation(d: u8, j: u8, i: u8, k: u8, u: u8) -> Result<IdentityReport> {
    for x in [j, i, k, u] {
        if !(1..=d).contains(&x) {
            return Err(HilbError::Index(format!("index {x} out of 1..={d}")));
        }
    }
    let set = all_generators(d)?;
    let mut report = IdentityReport::new("c0-generation", d);
    record_c0(&mut report, &set, j, i, k, u);
    Ok(report)
}

/// Checks the reconstruction for every `i < k`, every `j` and every `u`.
pub fn verify_c0_generation_all(d: u8) -> Result<IdentityReport> {
    let set = all_generators(d)?;
    let mut report = IdentityReport::new("c0-generation", d);
    for j in 1..=d {
        for i in 1..=d {
            for k in i + 1..=d {
                for u in 1..=d {
                    record_c0(&mut report, &set, j, i, k, u);
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Monomial;

    #[test]
    fn identities_hold_for_small_d() {
        for d in 3..=5u8 {
            assert!(verify_antisymmetry(d).unwrap().passed());
            assert!(verify_trace_identity(d).unwrap().passed());
            assert!(verify_cyclic_identity(d).unwrap().passed());
            assert!(verify_c0_generation_all(d).unwrap().passed());
        }
        let r = verify_trace_identity(3).unwrap();
        assert_eq!(r.checks.len(), 3);
        assert_eq!(r.checks[0].location, "(i,k)=(1,2)");
    }

    #[test]
    fn perturbed_generator_breaks_trace() {
        let mut set = all_generators(3).unwrap().as_ref().clone();
        let idx = *set.generators.keys().find(|g| g.a == 2 && g.j == 2).unwrap();
        set.generators.get_mut(&idx).unwrap().add_term(Monomial::var(Coord::new(1, 1, 1)), int(1));
        let report = verify_trace_identity_in(&set);
        assert!(!report.passed());
        assert_eq!(report.failures().count(), 1);
        assert!(report.ensure().is_err());
    }

    #[test]
    fn two_cyclic_terms_do_not_cancel() {
        let set = all_generators(3).unwrap();
        let partial = &set.get(1, 1, 2, 3) + &set.get(1, 3, 1, 2);
        assert!(!partial.is_zero());
    }

    #[test]
    fn u_equal_to_j_doubles() {
        let set = all_generators(3).unwrap();
        let [first, middle, last] = c0_combination(&set, 1, 2, 3, 1);
        let rhs = &first + &(&middle + &last);
        assert_eq!(rhs, set.get(0, 1, 2, 3).scale(&int(2)));
        let report = verify_c0_generation(3, 1, 2, 3, 1).unwrap();
        assert!(report.passed());
        assert!(report.checks[0].note.is_some());
        let all = verify_c0_generation_all(4).unwrap();
        // one scaled check per (j, i < k) with u = j
        assert_eq!(c0_literal_counts(&all), (96 - 24, 24));
    }

    #[test]
    fn dropping_the_middle_block_is_detected() {
        let set = all_generators(3).unwrap();
        let [first, middle, last] = c0_combination(&set, 1, 2, 3, 2);
        assert!(!middle.is_zero());
        assert_eq!(&first + &(&middle + &last), set.get(0, 1, 2, 3));
        assert_ne!(&first + &last, set.get(0, 1, 2, 3));
        assert!(verify_c0_generation(3, 1, 2, 3, 2).unwrap().passed());
        assert!(verify_c0_generation(3, 1, 2, 3, 4).is_err());
    }
}
