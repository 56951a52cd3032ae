//! The 90 quadratic generators at `d = 8` with `a ≤ 3` and indices in
//! `4..=8`, written as a 90×115 matrix of signed in-set variables times a
//! vector of shifted coordinates.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{HilbError, Result};
use crate::exactalg::{int, rat, Coord, Monomial, Rational, SparsePolynomial};
use crate::projector::{all_generators, is_in_set, GeneratorIndex};

pub const D: u8 = 8;
pub const ROWS: usize = 90;
pub const COLS: usize = 115;
/// In-set variables `p_{r,st}` with `1 ≤ r ≤ 3`, `4 ≤ s ≤ t ≤ 8`.
pub const IN_SET: usize = 45;

/// Row indices: for each `a = 1, 2, 3` the classes
/// `4 ≤ j < i < k`, `4 ≤ k < j < i`, `4 = i = j < k`, `4 = i < j = k`,
/// `5 = i = j < k ≤ 6`, `5 = i < j = k ≤ 6`, each in lexicographic `(j, i, k)`
/// order. Indices in the second class are taken as written, with `i > k`.
pub fn enumerate_rows() -> Result<Vec<GeneratorIndex>> {
    let mut out = Vec::new();
    let range = 4..=D;
    for a in 1..=3u8 {
        let mut classes: [Vec<(u8, u8, u8)>; 6] = Default::default();
        for j in range.clone() {
            for i in range.clone() {
                for k in range.clone() {
                    if j < i && i < k {
                        classes[0].push((j, i, k));
                    }
                    if k < j && j < i {
                        classes[1].push((j, i, k));
                    }
                    if i == 4 && j == 4 && k > 4 {
                        classes[2].push((j, i, k));
                    }
                    if i == 4 && j > 4 && j == k {
                        classes[3].push((j, i, k));
                    }
                    if i == 5 && j == 5 && k > 5 && k <= 6 {
                        classes[4].push((j, i, k));
                    }
                    if i == 5 && j > 5 && j == k && k <= 6 {
                        classes[5].push((j, i, k));
                    }
                }
            }
        }
        for class in classes {
            out.extend(class.into_iter().map(|(j, i, k)| GeneratorIndex::new(a, j, i, k)));
        }
    }
    if out.len() != ROWS {
        return Err(HilbError::Enumeration { what: "factorization rows".into(), found: out.len(), expected: ROWS });
    }
    Ok(out)
}

/// Column `(r', s', t')` stands for
/// `p_{r',s't'} − δ_{r',t'}p_{s',s's'}/2 − δ_{r',s'}p_{t',t't'}/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ShiftedCoordinate {
    pub r: u8,
    pub s: u8,
    pub t: u8,
}

impl ShiftedCoordinate {
    pub fn head(self) -> Coord {
        Coord::new(self.r, self.s, self.t)
    }

    pub fn expression(self) -> SparsePolynomial {
        let half = rat(1, 2);
        let mut e = SparsePolynomial::var(D, self.head());
        if self.r == self.t {
            e.add_term(Monomial::var(Coord::new(self.s, self.s, self.s)), -half.clone());
        }
        if self.r == self.s {
            e.add_term(Monomial::var(Coord::new(self.t, self.t, self.t)), -half);
        }
        e
    }
}

/// `1 ≤ r', s' ≤ 3 < t' ≤ 8`, then `4 ≤ r' ≤ 8`, `4 ≤ s' ≤ t' ≤ 8` not all
/// equal; sorted lexicographically.
pub fn enumerate_shifted() -> Result<Vec<ShiftedCoordinate>> {
    let mut out = Vec::new();
    for r in 1..=D {
        for s in 1..=D {
            for t in s..=D {
                let low = r <= 3 && s <= 3 && t > 3;
                let high = r >= 4 && s >= 4 && !(r == s && s == t);
                if low || high {
                    out.push(ShiftedCoordinate { r, s, t });
                }
            }
        }
    }
    if out.len() != COLS {
        return Err(HilbError::Enumeration { what: "shifted coordinates".into(), found: out.len(), expected: COLS });
    }
    Ok(out)
}

/// The 45 in-set variables in coordinate order.
pub fn in_set_variables() -> Vec<Coord> {
    let mut out = Vec::new();
    for r in 1..=3 {
        for s in 4..=D {
            for t in s..=D {
                out.push(Coord::new(r, s, t));
            }
        }
    }
    debug_assert_eq!(out.len(), IN_SET);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub sign: i8,
    pub var: Coord,
}

/// Sparse 90×115 matrix whose entries are signed in-set variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationMatrix {
    pub rows: Vec<GeneratorIndex>,
    pub cols: Vec<ShiftedCoordinate>,
    pub entries: BTreeMap<(usize, usize), Entry>,
}

/// Row polynomial for a row index, in the orientation given.
fn row_polynomial(idx: GeneratorIndex) -> Result<SparsePolynomial> {
    Ok(all_generators(D)?.get(idx.a, idx.j, idx.i, idx.k))
}

/// Splits every monomial of every row into its in-set factor and the head of
/// a shifted coordinate. Diagonal out-factors `p_{t,tt}` are skipped here;
/// they must be reproduced by the shifts, which [`verify_factorization`]
/// checks.
pub fn extract_m() -> Result<FactorizationMatrix> {
    let rows = enumerate_rows()?;
    let cols = enumerate_shifted()?;
    let col_of: BTreeMap<Coord, usize> = cols.iter().enumerate().map(|(c, s)| (s.head(), c)).collect();
    let mut entries = BTreeMap::new();
    for (ri, idx) in rows.iter().enumerate() {
        let poly = row_polynomial(*idx)?;
        let mut acc: BTreeMap<usize, BTreeMap<Coord, Rational>> = BTreeMap::new();
        for (m, c) in poly.terms() {
            let vars = m.vars();
            let fail = |reason: String| HilbError::Extraction { row: ri, col: usize::MAX, reason };
            if vars.len() != 2 {
                return Err(fail(format!("monomial {m:?} is not quadratic")));
            }
            let inside: Vec<Coord> = vars.iter().copied().filter(|&v| is_in_set(v)).collect();
            if inside.len() != 1 {
                return Err(fail(format!("monomial {m:?} has {} in-set factors", inside.len())));
            }
            let v = inside[0];
            let w = if vars[0] == v { vars[1] } else { vars[0] };
            if w.is_diagonal() {
                continue;
            }
            let Some(&col) = col_of.get(&w) else {
                return Err(fail(format!("factor {w:?} of {m:?} is not a shifted coordinate")));
            };
            *acc.entry(col).or_default().entry(v).or_insert_with(Rational::zero) += c;
        }
        for (col, combo) in acc {
            let combo: Vec<(Coord, Rational)> = combo.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            match combo.as_slice() {
                [] => {}
                [(v, c)] if c.is_one() || (-c).is_one() => {
                    entries.insert((ri, col), Entry { sign: if c.is_one() { 1 } else { -1 }, var: *v });
                }
                _ => {
                    let text: Vec<String> = combo.iter().map(|(v, c)| format!("{c}*{v:?}")).collect();
                    return Err(HilbError::Extraction {
                        row: ri,
                        col,
                        reason: format!("entry {} is not a single signed variable", text.join(" + ")),
                    });
                }
            }
        }
    }
    Ok(FactorizationMatrix { rows, cols, entries })
}

/// The extracted matrix, built once per process.
pub fn factorization_matrix() -> Result<Arc<FactorizationMatrix>> {
    static CACHE: OnceLock<Arc<FactorizationMatrix>> = OnceLock::new();
    if let Some(m) = CACHE.get() {
        return Ok(m.clone());
    }
    let m = Arc::new(extract_m()?);
    Ok(CACHE.get_or_init(|| m).clone())
}

impl FactorizationMatrix {
    pub fn entry(&self, row: usize, col: usize) -> Option<Entry> {
        self.entries.get(&(row, col)).copied()
    }

    /// Row `row` of `𝐌·u` as a polynomial.
    pub fn row_product(&self, row: usize) -> SparsePolynomial {
        let mut out = SparsePolynomial::zero(D);
        for (&(_, col), e) in self.entries.range((row, 0)..(row + 1, 0)) {
            let factor = SparsePolynomial::monomial(D, Monomial::var(e.var), int(e.sign as i64));
            out = &out + &(&factor * &self.cols[col].expression());
        }
        out
    }

    /// Numeric matrix at an assignment of the in-set variables.
    pub fn evaluate(&self, values: &BTreeMap<Coord, Rational>) -> Result<Vec<Vec<Rational>>> {
        let mut m = vec![vec![Rational::zero(); self.cols.len()]; self.rows.len()];
        for (&(r, c), e) in &self.entries {
            let v = values.get(&e.var).ok_or(HilbError::Substitution(e.var))?;
            m[r][c] = if e.sign > 0 { v.clone() } else { -v.clone() };
        }
        Ok(m)
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows.len(),
            cols: self.cols.len(),
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), e)| EntryJson { r, c, sign: e.sign, var: e.var.into() })
                .collect(),
            row_legend: self.rows.clone(),
            col_legend: self.cols.iter().map(|s| [s.r, s.s, s.t]).collect(),
        }
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self> {
        let rows = json.row_legend.clone();
        let cols: Vec<ShiftedCoordinate> =
            json.col_legend.iter().map(|&[r, s, t]| ShiftedCoordinate { r, s, t }).collect();
        if rows.len() != json.rows || cols.len() != json.cols {
            return Err(HilbError::Parse("legend sizes disagree with the declared shape".into()));
        }
        let mut entries = BTreeMap::new();
        for e in &json.entries {
            if e.r >= json.rows || e.c >= json.cols || e.sign.abs() != 1 {
                return Err(HilbError::Parse(format!("bad entry {e:?}")));
            }
            entries.insert((e.r, e.c), Entry { sign: e.sign, var: Coord::try_from(e.var)? });
        }
        Ok(FactorizationMatrix { rows, cols, entries })
    }
}

/// Wire form `{"rows", "cols", "entries": [{"r","c","sign","var"}], ...}`
/// with row and column legends.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<EntryJson>,
    pub row_legend: Vec<GeneratorIndex>,
    pub col_legend: Vec<[u8; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub r: usize,
    pub c: usize,
    pub sign: i8,
    pub var: [u8; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationReport {
    pub rows: usize,
    pub cols: usize,
    pub nonzero_entries: usize,
    /// Every entry variable has `r ≤ 3` and `s, t ≥ 4`.
    pub entries_in_set: bool,
    /// Rows where `𝐌·u` differs from the generator.
    pub mismatched_rows: Vec<usize>,
}

impl FactorizationReport {
    pub fn passed(&self) -> bool {
        self.rows == ROWS && self.cols == COLS && self.entries_in_set && self.mismatched_rows.is_empty()
    }
}

/// Checks `𝐌·u = C` row by row as polynomials, and the entry pattern.
pub fn verify_factorization(m: &FactorizationMatrix) -> Result<FactorizationReport> {
    let mut mismatched_rows = Vec::new();
    for (ri, idx) in m.rows.iter().enumerate() {
        if m.row_product(ri) != row_polynomial(*idx)? {
            mismatched_rows.push(ri);
        }
    }
    Ok(FactorizationReport {
        rows: m.rows.len(),
        cols: m.cols.len(),
        nonzero_entries: m.entries.len(),
        entries_in_set: m.entries.values().all(|e| is_in_set(e.var)),
        mismatched_rows,
    })
}
