//! The center-of-mass map, the affine group actions on configurations and on
//! coordinates, and the rational curve through the base configuration whose
//! limits collide two points.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::config::{PointConfiguration, ProjectorCoordinates};
use crate::error::{HilbError, Result};
use crate::exactalg::{
    det_exact, det_poly, format_rational, int, inverse_exact, parse_rational, Coord, ExactMatrix, Rational, UniPoly,
};

/// `(Σ_r p_{r,jr}) / (d+1)` for `j = 1..d`: the trace of multiplication by
/// `x_j` over `d+1`, which is the center of mass of the points.
pub fn center_map(coords: &ProjectorCoordinates) -> Vec<Rational> {
    let d = coords.d;
    let n = int(d as i64 + 1);
    (1..=d).map(|j| (1..=d).map(|r| coords.get(Coord::new(r, j, r)).clone()).sum::<Rational>() / &n).collect()
}

/// Center of mass of the points themselves.
pub fn center_of_mass(cfg: &PointConfiguration) -> Vec<Rational> {
    let n = int(cfg.points.len() as i64);
    (0..cfg.d as usize).map(|j| cfg.points.iter().map(|p| p[j].clone()).sum::<Rational>() / &n).collect()
}

pub fn scale_action(cfg: &PointConfiguration, lambda: &Rational) -> Result<PointConfiguration> {
    if lambda.is_zero() {
        return Err(HilbError::Domain("scaling factor must be nonzero".into()));
    }
    let points = cfg.points.iter().map(|p| p.iter().map(|x| x * lambda).collect()).collect();
    PointConfiguration::new(cfg.d, points)
}

/// `p_{0,ij} ↦ λ²p_{0,ij}`, `p_{r,st} ↦ λp_{r,st}`.
pub fn scale_coordinates(coords: &ProjectorCoordinates, lambda: &Rational) -> ProjectorCoordinates {
    let sq = lambda * lambda;
    let values = coords.values().iter().map(|(c, v)| (*c, if c.is_constant_term() { v * &sq } else { v * lambda }));
    ProjectorCoordinates::from_values(coords.d, values).expect("same coordinates")
}

/// Coordinates of the translated points `x_l + t`:
/// `p_{0,ij} ↦ p_{0,ij} − Σ_m p_{m,ij}t_m − t_it_j` and
/// `p_{m,ij} ↦ p_{m,ij} + δ_{mj}t_i + δ_{mi}t_j`.
pub fn translate_coordinates(coords: &ProjectorCoordinates, t: &[Rational]) -> Result<ProjectorCoordinates> {
    let d = coords.d;
    if t.len() != d as usize {
        return Err(HilbError::Dimension("translation vector length".into()));
    }
    let tv = |i: u8| &t[i as usize - 1];
    let mut out = coords.clone();
    for i in 1..=d {
        for j in i..=d {
            let mut p0 = coords.get(Coord::constant(i, j)) - tv(i) * tv(j);
            for m in 1..=d {
                p0 -= coords.get(Coord::new(m, i, j)) * tv(m);
            }
            out.set(Coord::constant(i, j), p0);
            for m in 1..=d {
                let mut v = coords.get(Coord::new(m, i, j)).clone();
                if m == j {
                    v += tv(i);
                }
                if m == i {
                    v += tv(j);
                }
                out.set(Coord::new(m, i, j), v);
            }
        }
    }
    Ok(out)
}

fn check_invertible(g: &ExactMatrix, d: u8) -> Result<()> {
    if g.rows() != d as usize || g.cols() != d as usize {
        return Err(HilbError::Dimension(format!("group element must be {d}x{d}")));
    }
    if det_exact(g)?.is_zero() {
        return Err(HilbError::Domain("group element is singular".into()));
    }
    Ok(())
}

/// `x_l ↦ g·x_l` for every point.
pub fn gl_act(g: &ExactMatrix, cfg: &PointConfiguration) -> Result<PointConfiguration> {
    check_invertible(g, cfg.d)?;
    let n = cfg.d as usize;
    let points =
        cfg.points.iter().map(|p| (0..n).map(|i| (0..n).map(|a| g.get(i, a) * &p[a]).sum()).collect()).collect();
    PointConfiguration::new(cfg.d, points)
}

/// The induced action on coordinates:
/// `p'_{0,ij} = Σ g_{ia}g_{jb}p_{0,ab}` and
/// `p'_{n,ij} = Σ g_{ia}g_{jb}p_{m,ab}(g⁻¹)_{mn}`.
pub fn transform_coordinates(coords: &ProjectorCoordinates, g: &ExactMatrix) -> Result<ProjectorCoordinates> {
    let d = coords.d;
    check_invertible(g, d)?;
    let ginv = inverse_exact(g)?;
    let n = d as usize;
    let gi = |i: u8, a: usize| g.get(i as usize - 1, a);
    let mut out = ProjectorCoordinates::zeros(d);
    for i in 1..=d {
        for j in i..=d {
            // q[m] = Σ_{a,b} g_{ia} g_{jb} p_{m,ab}
            let mut q = vec![Rational::zero(); n + 1];
            for a in 0..n {
                for b in 0..n {
                    let w = gi(i, a) * gi(j, b);
                    if w.is_zero() {
                        continue;
                    }
                    for (m, qm) in q.iter_mut().enumerate() {
                        let p = coords.get(Coord::new(m as u8, a as u8 + 1, b as u8 + 1));
                        if !p.is_zero() {
                            *qm += &w * p;
                        }
                    }
                }
            }
            out.set(Coord::constant(i, j), q[0].clone());
            for nn in 0..n {
                let v: Rational = (0..n).map(|m| &q[m + 1] * ginv.get(m, nn)).sum();
                out.set(Coord::new(nn as u8 + 1, i, j), v);
            }
        }
    }
    Ok(out)
}

/// Point `[α : β]` of the projective line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projective {
    pub alpha: Rational,
    pub beta: Rational,
}

impl Projective {
    pub fn new(alpha: Rational, beta: Rational) -> Result<Self> {
        if alpha.is_zero() && beta.is_zero() {
            return Err(HilbError::Domain("[0:0] is not a projective point".into()));
        }
        Ok(Projective { alpha, beta })
    }

    pub fn from_i64(alpha: i64, beta: i64) -> Result<Self> {
        Self::new(int(alpha), int(beta))
    }

    pub fn same_point(&self, other: &Projective) -> bool {
        &self.alpha * &other.beta == &self.beta * &other.alpha
    }
}

impl std::str::FromStr for Projective {
    type Err = HilbError;

    /// `a:b` with rational entries.
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s.split_once(':').ok_or_else(|| HilbError::Parse(format!("expected a:b, got {s:?}")))?;
        Self::new(parse_rational(a.trim())?, parse_rational(b.trim())?)
    }
}

impl std::fmt::Display for Projective {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", format_rational(&self.alpha), format_rational(&self.beta))
    }
}

impl Serialize for Projective {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Projective {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The curve `[α:β] ↦` base configuration with coordinate `j` scaled by
/// `(b_jα − a_jβ)/(b_j − a_j)`. The base configuration has
/// `x_{l,j} = −d` for `l = j` and `1` otherwise, so point `d+1` is all ones
/// and every column sums to zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub d: u8,
    pub anchors: Vec<Projective>,
}

impl CurveSpec {
    pub fn new(d: u8, anchors: Vec<Projective>) -> Result<Self> {
        if anchors.len() != d as usize {
            return Err(HilbError::Dimension(format!("need {d} anchors, got {}", anchors.len())));
        }
        let one = Projective::from_i64(1, 1)?;
        for (k, a) in anchors.iter().enumerate() {
            if a.same_point(&one) {
                return Err(HilbError::Domain(format!("anchor {} is [1:1]", k + 1)));
            }
            if anchors[..k].iter().any(|b| b.same_point(a)) {
                return Err(HilbError::Domain(format!("anchor {} repeats an earlier anchor", k + 1)));
            }
        }
        Ok(CurveSpec { d, anchors })
    }

    pub fn base_configuration(&self) -> PointConfiguration {
        base_configuration(self.d)
    }

    /// `(b_jα − a_jβ)/(b_j − a_j)` for each coordinate `j`.
    fn factors(&self, t: &Projective) -> Vec<Rational> {
        self.anchors.iter().map(|a| (&a.beta * &t.alpha - &a.alpha * &t.beta) / (&a.beta - &a.alpha)).collect()
    }

    fn scaled(&self, f: &[Rational]) -> PointConfiguration {
        let base = self.base_configuration();
        let points = base.points.iter().map(|p| p.iter().zip(f).map(|(x, y)| x * y).collect()).collect();
        PointConfiguration::new(self.d, points).expect("same shape")
    }

    /// The (possibly degenerate) configuration at any parameter, anchors included.
    pub fn configuration_at(&self, t: &Projective) -> PointConfiguration {
        self.scaled(&self.factors(t))
    }

    fn anchor(&self, j: usize) -> Result<&Projective> {
        if j == 0 || j > self.anchors.len() {
            return Err(HilbError::Index(format!("anchor {j} not in 1..={}", self.anchors.len())));
        }
        Ok(&self.anchors[j - 1])
    }
}

pub fn base_configuration(d: u8) -> PointConfiguration {
    let n = d as i64;
    let points: Vec<Vec<i64>> =
        (0..=d as usize).map(|l| (0..d as usize).map(|j| if l == j { -n } else { 1 }).collect()).collect();
    PointConfiguration::from_i64(d, &points).expect("d+1 points in Q^d")
}

/// The configuration at a parameter that is not an anchor.
pub fn curve_eval(spec: &CurveSpec, t: &Projective) -> Result<PointConfiguration> {
    if let Some(j) = spec.anchors.iter().position(|a| a.same_point(t)) {
        return Err(HilbError::Domain(format!("parameter {t} is anchor {}; use the limit at that anchor", j + 1)));
    }
    Ok(spec.configuration_at(t))
}

/// Coordinates along the line `anchor_j + u·direction` as exact quotients of
/// polynomials in `u`, by Cramer's rule.
pub struct CurveGerm {
    pub d: u8,
    pub denominator: UniPoly,
    pub numerators: Vec<(Coord, UniPoly)>,
}

impl CurveGerm {
    pub fn eval(&self, u: &Rational) -> Result<ProjectorCoordinates> {
        let den = self.denominator.eval(u);
        if den.is_zero() {
            return Err(HilbError::Domain(format!("configuration degenerates at u = {}", format_rational(u))));
        }
        ProjectorCoordinates::from_values(self.d, self.numerators.iter().map(|(c, p)| (*c, p.eval(u) / &den)))
    }

    /// Value at `u = 0`; an error if some quotient has a pole there.
    pub fn limit(&self, anchor: usize) -> Result<ProjectorCoordinates> {
        let k = self
            .denominator
            .order_at_zero()
            .ok_or_else(|| HilbError::Domain("denominator vanishes identically".into()))?;
        let lead = self.denominator.coeff(k);
        let mut values = Vec::with_capacity(self.numerators.len());
        for (c, p) in &self.numerators {
            match p.order_at_zero() {
                Some(o) if o < k => return Err(HilbError::Extension { anchor, coordinate: *c }),
                _ => values.push((*c, p.coeff(k) / &lead)),
            }
        }
        ProjectorCoordinates::from_values(self.d, values)
    }
}

/// The germ of the curve at anchor `j` (1-based), with `u = 0` at the anchor.
pub fn curve_germ(spec: &CurveSpec, j: usize) -> Result<CurveGerm> {
    let anchor = spec.anchor(j)?;
    let d = spec.d;
    let n = d as usize;
    let (da, db) =
        if anchor.beta.is_zero() { (Rational::zero(), Rational::one()) } else { (Rational::one(), Rational::zero()) };
    // f_m(u) = (b_m(α_j + u·da) − a_m(β_j + u·db)) / (b_m − a_m)
    let f: Vec<UniPoly> = spec
        .anchors
        .iter()
        .map(|a| {
            let den = &a.beta - &a.alpha;
            UniPoly::linear(
                (&a.beta * &anchor.alpha - &a.alpha * &anchor.beta) / &den,
                (&a.beta * &da - &a.alpha * &db) / &den,
            )
        })
        .collect();
    let base = spec.base_configuration();
    let x: Vec<Vec<UniPoly>> = base
        .points
        .iter()
        .map(|p| p.iter().zip(&f).map(|(b, fm)| fm * &UniPoly::constant(b.clone())).collect())
        .collect();
    let a: Vec<Vec<UniPoly>> = x
        .iter()
        .map(|p| std::iter::once(UniPoly::constant(Rational::one())).chain(p.iter().cloned()).collect())
        .collect();
    let denominator = det_poly(a.clone())?;
    let mut numerators = Vec::new();
    for i in 1..=d {
        for jj in i..=d {
            let rhs: Vec<UniPoly> = x.iter().map(|p| &p[i as usize - 1] * &p[jj as usize - 1]).collect();
            for r in 0..=n {
                let mut m = a.clone();
                for (row, v) in m.iter_mut().zip(&rhs) {
                    row[r] = v.clone();
                }
                numerators.push((Coord::new(r as u8, i, jj), det_poly(m)?));
            }
        }
    }
    Ok(CurveGerm { d, denominator, numerators })
}

/// Coordinates of the limit of the curve at anchor `j` (1-based), where
/// points `j` and `d+1` collide.
pub fn curve_limit(spec: &CurveSpec, j: usize) -> Result<ProjectorCoordinates> {
    curve_germ(spec, j)?.limit(j)
}
