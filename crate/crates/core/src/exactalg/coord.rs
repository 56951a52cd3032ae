use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{HilbError, Result};

/// A chart coordinate: `p_{0,st}` when `r == 0`, otherwise `p_{r,st}`.
///
/// Coordinates are symmetric in the lower pair, so the canonical form keeps
/// `s <= t`. The derived order is lexicographic on `(r, s, t)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[u8; 3]", try_from = "[u8; 3]")]
pub struct Coord {
    pub r: u8,
    pub s: u8,
    pub t: u8,
}

impl Coord {
    pub fn new(r: u8, s: u8, t: u8) -> Coord {
        if s <= t {
            Coord { r, s, t }
        } else {
            Coord { r, s: t, t: s }
        }
    }

    /// `p_{0,ij}`.
    pub fn constant(i: u8, j: u8) -> Coord {
        Coord::new(0, i, j)
    }

    pub fn is_constant_term(self) -> bool {
        self.r == 0
    }

    /// `p_{s,ss}` (or `q_{s,ss}` in the shifted presentation).
    pub fn is_diagonal(self) -> bool {
        self.r != 0 && self.r == self.s && self.s == self.t
    }

    pub fn in_range(self, d: u8) -> bool {
        self.r <= d && self.s >= 1 && self.s <= self.t && self.t <= d
    }

    pub fn check(self, d: u8) -> Result<Coord> {
        if self.in_range(d) {
            Ok(self)
        } else {
            Err(HilbError::Index(format!("{self:?} is not a coordinate for d = {d}")))
        }
    }
}

impl From<Coord> for [u8; 3] {
    fn from(c: Coord) -> [u8; 3] {
        [c.r, c.s, c.t]
    }
}

impl TryFrom<[u8; 3]> for Coord {
    type Error = HilbError;

    fn try_from(v: [u8; 3]) -> Result<Coord> {
        if v[1] == 0 || v[2] == 0 {
            return Err(HilbError::Parse(format!("coordinate {v:?} has a zero lower index")));
        }
        Ok(Coord::new(v[0], v[1], v[2]))
    }
}

impl fmt::Debug for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p_{{{},{}{}}}", self.r, self.s, self.t)
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Dense indexing of all `(d+1)·C(d+1,2)` coordinates for a fixed `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordSpace {
    d: u8,
    pairs: usize,
}

impl CoordSpace {
    pub fn new(d: u8) -> CoordSpace {
        let n = d as usize;
        CoordSpace { d, pairs: n * (n + 1) / 2 }
    }

    pub fn d(&self) -> u8 {
        self.d
    }

    pub fn len(&self) -> usize {
        (self.d as usize + 1) * self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn pair_index(&self, s: u8, t: u8) -> usize {
        let (s, t) = if s <= t { (s, t) } else { (t, s) };
        let (n, s, t) = (self.d as usize, s as usize, t as usize);
        // rows of the upper triangle before row s, then offset within the row
        (s - 1) * (2 * n - s + 2) / 2 + (t - s)
    }

    pub fn index(&self, c: Coord) -> usize {
        debug_assert!(c.in_range(self.d), "{c:?} out of range for d = {}", self.d);
        c.r as usize * self.pairs + self.pair_index(c.s, c.t)
    }

    pub fn coord(&self, index: usize) -> Coord {
        self.coords()[index]
    }

    /// All coordinates in index order (which is also their `Ord` order).
    pub fn coords(&self) -> Vec<Coord> {
        let d = self.d;
        let mut out = Vec::with_capacity(self.len());
        for r in 0..=d {
            for s in 1..=d {
                for t in s..=d {
                    out.push(Coord::new(r, s, t));
                }
            }
        }
        out
    }
}
