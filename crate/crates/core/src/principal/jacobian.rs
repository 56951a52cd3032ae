//! Rank of the Jacobian of the chart equations at a point.
//!
//! Both bounds are certified by exact integer determinants; arithmetic modulo
//! a prime only chooses which rows and columns to look at. The lower bound is
//! a nonsingular square submatrix of the Jacobian. The upper bound comes from
//! the tangent vectors of the affine group action, which preserves the chart
//! equations: each is checked to lie in the kernel exactly, and a nonsingular
//! square submatrix of them bounds the kernel dimension from below. When the
//! bounds meet the rank is certified; otherwise it is computed by exact
//! elimination.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::chart::verify_on_chart;
use super::config::ProjectorCoordinates;
use crate::error::{HilbError, Result};
use crate::exactalg::bareiss::{clear_denominators, det_sparse};
use crate::exactalg::modp::select_rows;
use crate::exactalg::sparse::sparse_rank;
use crate::exactalg::{Coord, CoordSpace, Rational};
use crate::projector::all_generators;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RankMethod {
    /// Lower and upper bounds agree.
    Bounds,
    /// Full exact elimination.
    Elimination,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobianRank {
    pub rank: usize,
    pub columns: usize,
    pub generators: usize,
    pub lower_bound: usize,
    pub upper_bound: usize,
    pub method: RankMethod,
}

/// Gradient of every raw generator at `coords`, as sparse rows over the
/// dense coordinate indexing.
pub fn jacobian_rows(coords: &ProjectorCoordinates) -> Result<Vec<Vec<(usize, Rational)>>> {
    let space = CoordSpace::new(coords.d);
    let set = all_generators(coords.d)?;
    set.iter()
        .map(|(_, g)| {
            let grad = g.gradient_with(|c| coords.lookup(c))?;
            Ok(grad.into_iter().map(|(c, v)| (space.index(c), v)).collect())
        })
        .collect()
}

/// Infinitesimal translations along `e_c` followed by the infinitesimal
/// linear maps `E_{uv}`, as dense vectors over the coordinate indexing.
pub fn tangent_vectors(coords: &ProjectorCoordinates) -> Vec<Vec<Rational>> {
    let d = coords.d;
    let space = CoordSpace::new(d);
    let p = |r: u8, s: u8, t: u8| coords.get(Coord::new(r, s, t));
    let mut out = Vec::new();
    for c in 1..=d {
        let mut v = vec![Rational::zero(); space.len()];
        for i in 1..=d {
            for j in i..=d {
                v[space.index(Coord::constant(i, j))] = -p(c, i, j).clone();
                for m in 1..=d {
                    let hits = (i == c && m == j) as i64 + (j == c && m == i) as i64;
                    if hits != 0 {
                        v[space.index(Coord::new(m, i, j))] = Rational::from_integer(hits.into());
                    }
                }
            }
        }
        out.push(v);
    }
    // E_{uv}: δp_{r,ij} = δ_{iu} p_{r,vj} + δ_{ju} p_{r,iv} − [r ≥ 1] δ_{rv} p_{u,ij}
    for u in 1..=d {
        for w in 1..=d {
            let mut v = vec![Rational::zero(); space.len()];
            for i in 1..=d {
                for j in i..=d {
                    for r in 0..=d {
                        let mut x = Rational::zero();
                        if i == u {
                            x += p(r, w, j);
                        }
                        if j == u {
                            x += p(r, i, w);
                        }
                        if r == w {
                            x -= p(u, i, j);
                        }
                        v[space.index(Coord::new(r, i, j))] = x;
                    }
                }
            }
            out.push(v);
        }
    }
    out
}

fn dense_to_sparse(v: &[Rational]) -> Vec<(usize, Rational)> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// Whether every row annihilates every vector, in exact integer arithmetic.
fn annihilates(rows: &[Vec<(usize, Rational)>], vectors: &[Vec<Rational>]) -> bool {
    let vs: Vec<Vec<BigInt>> = vectors.iter().map(|v| clear_denominators(v).0).collect();
    rows.par_iter().all(|row| {
        let vals: Vec<Rational> = row.iter().map(|(_, x)| x.clone()).collect();
        let (ints, _) = clear_denominators(&vals);
        vs.iter().all(|v| {
            let mut acc = BigInt::zero();
            for ((c, _), x) in row.iter().zip(&ints) {
                if !v[*c].is_zero() {
                    acc += x * &v[*c];
                }
            }
            acc.is_zero()
        })
    })
}

/// Exact rank lower bound: the size of a square submatrix, chosen modulo a
/// prime, whose integer determinant is nonzero. Zero if the chosen
/// submatrix turns out singular over ℚ.
fn certified_rank_lower_bound(rows: &[Vec<(usize, Rational)>], ncols: usize) -> usize {
    let sel = select_rows(rows, ncols, None);
    let position: BTreeMap<usize, usize> = sel.pivot_cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let minor: Vec<Vec<BigInt>> = sel
        .rows
        .iter()
        .map(|&r| {
            let mut dense = vec![Rational::zero(); sel.rank()];
            for (c, x) in &rows[r] {
                if let Some(&k) = position.get(c) {
                    dense[k] = x.clone();
                }
            }
            clear_denominators(&dense).0
        })
        .collect();
    if det_sparse(minor).is_zero() {
        0
    } else {
        sel.rank()
    }
}

/// Rank over ℚ of the Jacobian of all raw generators at `coords`.
pub fn jacobian_rank_at(coords: &ProjectorCoordinates) -> Result<JacobianRank> {
    verify_on_chart(coords)?.ensure()?;
    let columns = CoordSpace::new(coords.d).len();
    let rows = jacobian_rows(coords)?;
    let lower = certified_rank_lower_bound(&rows, columns);
    let tangents = tangent_vectors(coords);
    let upper = if annihilates(&rows, &tangents) {
        let sparse: Vec<_> = tangents.iter().map(|v| dense_to_sparse(v)).collect();
        columns - certified_rank_lower_bound(&sparse, columns)
    } else {
        columns
    };
    let (rank, method) = if lower == upper {
        (lower, RankMethod::Bounds)
    } else {
        let exact = sparse_rank(rows.iter().map(|r| r.iter().cloned().collect()));
        (exact, RankMethod::Elimination)
    };
    if rank < lower || rank > upper {
        return Err(HilbError::RankDeficient(format!("rank {rank} outside the bounds [{lower}, {upper}]")));
    }
    Ok(JacobianRank { rank, columns, generators: rows.len(), lower_bound: lower, upper_bound: upper, method })
}

/// `(d+1)·C(d+1,2) − d(d+1)`: the codimension of the principal component in
/// the chart, i.e. the expected rank at generic points.
pub fn expected_generic_rank(d: u8) -> usize {
    let n = d as usize;
    (n + 1) * (n + 1) * n / 2 - n * (n + 1)
}

/// Exact rank by elimination only, without the bounds.
pub fn jacobian_rank_by_elimination(coords: &ProjectorCoordinates) -> Result<usize> {
    let rows = jacobian_rows(coords)?;
    Ok(sparse_rank(rows.iter().map(|r| r.iter().cloned().collect())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;
    use crate::principal::config::{interpolate, sample_configuration, DEFAULT_HEIGHT};
    use crate::principal::geometry::{transform_coordinates, translate_coordinates};
    use num_traits::Signed;

    #[test]
    fn generic_rank_small_d() {
        for d in 2..=4 {
            let coords = interpolate(&sample_configuration(d, 1, DEFAULT_HEIGHT).unwrap()).unwrap();
            let r = jacobian_rank_at(&coords).unwrap();
            assert_eq!(r.method, RankMethod::Bounds);
            assert_eq!(r.rank, expected_generic_rank(d));
            assert_eq!(r.rank, jacobian_rank_by_elimination(&coords).unwrap());
        }
        assert_eq!(expected_generic_rank(3), 12);
        assert_eq!(expected_generic_rank(8), 252);
    }

    #[test]
    fn tangent_vectors_match_finite_group_actions() {
        // the actions are polynomial of degree ≤ 2 in the parameter, so a
        // symmetric difference quotient recovers the derivative exactly
        let d = 3;
        let coords = interpolate(&sample_configuration(d, 8, DEFAULT_HEIGHT).unwrap()).unwrap();
        let space = CoordSpace::new(d);
        let tv = tangent_vectors(&coords);
        let mut t = vec![int(0); d as usize];
        t[1] = int(1);
        let plus = translate_coordinates(&coords, &t).unwrap();
        t[1] = int(-1);
        let minus = translate_coordinates(&coords, &t).unwrap();
        for (c, v) in plus.values() {
            assert_eq!((v - minus.get(*c)) / int(2), tv[1][space.index(*c)]);
        }
        // E_{12} generates g = I + ε E_{12}; its derivative is the first-order part
        let eps = crate::exactalg::rat(1, 1_000_000);
        let mut g = crate::exactalg::ExactMatrix::identity(3);
        g.set(0, 1, eps.clone());
        let moved = transform_coordinates(&coords, &g).unwrap();
        let idx = d as usize + 1;
        for (c, v) in moved.values() {
            let diff = (v - coords.get(*c)) / &eps - &tv[idx][space.index(*c)];
            assert!(diff.abs() < crate::exactalg::rat(1, 1000), "{c:?}");
        }
    }

    #[test]
    fn off_chart_point_is_rejected() {
        let mut coords = interpolate(&sample_configuration(3, 2, DEFAULT_HEIGHT).unwrap()).unwrap();
        coords.set(Coord::new(1, 1, 1), int(1000));
        assert!(matches!(jacobian_rank_at(&coords), Err(HilbError::Precondition(_))));
    }
}
