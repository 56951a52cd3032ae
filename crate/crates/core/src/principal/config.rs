use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{HilbError, Result};
use crate::exactalg::{
    det_exact, format_rational, int, parse_rational, solve_exact, Coord, CoordSpace, ExactMatrix, Rational,
};
use crate::seed;

/// Default half-width of the integer sampling box.
pub const DEFAULT_HEIGHT: i64 = 20;
/// Redraws allowed before sampling gives up.
pub const MAX_TRIES: usize = 100;

/// `d + 1` points in `ℚ^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    pub d: u8,
    pub points: Vec<Vec<Rational>>,
}

impl PointConfiguration {
    pub fn new(d: u8, points: Vec<Vec<Rational>>) -> Result<Self> {
        if points.len() != d as usize + 1 || points.iter().any(|p| p.len() != d as usize) {
            return Err(HilbError::Dimension(format!("need {} points in Q^{d}", d as usize + 1)));
        }
        Ok(PointConfiguration { d, points })
    }

    pub fn from_i64(d: u8, points: &[Vec<i64>]) -> Result<Self> {
        Self::new(d, points.iter().map(|p| p.iter().map(|&x| int(x)).collect()).collect())
    }

    /// Rows `(1, x_1, …, x_d)`, one per point.
    pub fn affine_matrix(&self) -> ExactMatrix {
        let rows =
            self.points.iter().map(|p| std::iter::once(Rational::one()).chain(p.iter().cloned()).collect()).collect();
        ExactMatrix::from_rows(rows).expect("rows have equal length")
    }

    /// Whether `{1, x_1, …, x_d}` restricted to the points is a basis.
    pub fn is_spanning(&self) -> bool {
        !det_exact(&self.affine_matrix()).expect("square").is_zero()
    }

    pub fn translate(&self, t: &[Rational]) -> Result<Self> {
        if t.len() != self.d as usize {
            return Err(HilbError::Dimension("translation vector length".into()));
        }
        let points = self.points.iter().map(|p| p.iter().zip(t).map(|(x, y)| x + y).collect()).collect();
        Ok(PointConfiguration { d: self.d, points })
    }

    pub fn to_json(&self) -> ConfigJson {
        ConfigJson { d: self.d, points: self.points.iter().map(|p| p.iter().map(format_rational).collect()).collect() }
    }

    pub fn from_json(json: &ConfigJson) -> Result<Self> {
        let points = json
            .points
            .iter()
            .map(|p| p.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(json.d, points)
    }
}

/// Wire form `{"d": int, "points": [["num/den", ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigJson {
    pub d: u8,
    pub points: Vec<Vec<String>>,
}

/// Values of every chart coordinate `p_{0,ij}`, `p_{r,st}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectorCoordinates {
    pub d: u8,
    values: BTreeMap<Coord, Rational>,
}

impl ProjectorCoordinates {
    /// Coordinates from explicit values; unlisted coordinates are zero.
    pub fn from_values(d: u8, values: impl IntoIterator<Item = (Coord, Rational)>) -> Result<Self> {
        let mut out = Self::zeros(d);
        for (c, v) in values {
            out.set(c.check(d)?, v);
        }
        Ok(out)
    }

    pub fn zeros(d: u8) -> Self {
        let values = CoordSpace::new(d).coords().into_iter().map(|c| (c, Rational::zero())).collect();
        ProjectorCoordinates { d, values }
    }

    pub fn get(&self, c: Coord) -> &Rational {
        &self.values[&c]
    }

    /// Lookup that never fails for in-range coordinates; for polynomial evaluation.
    pub fn lookup(&self, c: Coord) -> Option<&Rational> {
        self.values.get(&c)
    }

    pub fn set(&mut self, c: Coord, v: Rational) {
        debug_assert!(c.in_range(self.d));
        self.values.insert(c, v);
    }

    pub fn values(&self) -> &BTreeMap<Coord, Rational> {
        &self.values
    }

    pub fn to_json(&self) -> CoordsJson {
        CoordsJson {
            d: self.d,
            values: self
                .values
                .iter()
                .map(|(c, v)| CoordValue { coord: (*c).into(), value: format_rational(v) })
                .collect(),
        }
    }

    pub fn from_json(json: &CoordsJson) -> Result<Self> {
        let values = json
            .values
            .iter()
            .map(|cv| Ok((Coord::try_from(cv.coord)?, parse_rational(&cv.value)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_values(json.d, values)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordsJson {
    pub d: u8,
    pub values: Vec<CoordValue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordValue {
    pub coord: [u8; 3],
    pub value: String,
}

/// Projector coordinates of the ideal of the points: for each `i ≤ j`,
/// `x_i x_j − p_{0,ij} − Σ_m p_{m,ij} x_m` vanishes at every point.
pub fn interpolate(cfg: &PointConfiguration) -> Result<ProjectorCoordinates> {
    let d = cfg.d;
    let n = d as usize;
    let a = cfg.affine_matrix();
    let mut pairs = Vec::new();
    for i in 1..=d {
        for j in i..=d {
            pairs.push((i, j));
        }
    }
    let mut rhs = ExactMatrix::zeros(n + 1, pairs.len());
    for (l, p) in cfg.points.iter().enumerate() {
        for (col, &(i, j)) in pairs.iter().enumerate() {
            rhs.set(l, col, &p[i as usize - 1] * &p[j as usize - 1]);
        }
    }
    let sol = solve_exact(&a, &rhs)?;
    let mut out = ProjectorCoordinates::zeros(d);
    for (col, &(i, j)) in pairs.iter().enumerate() {
        for r in 0..=d {
            out.set(Coord::new(r, i, j), sol.get(r as usize, col).clone());
        }
    }
    Ok(out)
}

/// A spanning configuration with integer coordinates in `[−height, height]`,
/// redrawn until spanning.
pub fn sample_configuration(d: u8, seed: u64, height: i64) -> Result<PointConfiguration> {
    let mut rng = seed::rng(seed);
    for _ in 0..MAX_TRIES {
        let points = (0..=d).map(|_| (0..d).map(|_| int(rng.gen_range(-height..=height))).collect()).collect();
        let cfg = PointConfiguration::new(d, points)?;
        if cfg.is_spanning() {
            return Ok(cfg);
        }
    }
    Err(HilbError::Sampling { tries: MAX_TRIES })
}

/// Configuration number `index` of a run seeded with `seed`.
pub fn sample_indexed(d: u8, seed: u64, index: u64, height: i64) -> Result<PointConfiguration> {
    sample_configuration(d, seed::derive(seed, index), height)
}
