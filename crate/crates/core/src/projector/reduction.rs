//! The two changes of variables: eliminating the constant-term coordinates,
//! then shifting to off-diagonal coordinates.

use std::collections::{BTreeMap, BTreeSet};

use super::generators::{all_generators, build_generator, GeneratorIndex, GeneratorSet, Stage};
use crate::error::{HilbError, Result};
use crate::exactalg::{int, Coord, SparsePolynomial};

/// Image of `p_{0,ij}` (`i ≤ j`): minus the quadratic part of
/// `C(i+1; j, (i, i+1))`, with `i+1` read as `1` when `i = d`.
pub fn constant_term_image(d: u8, i: u8, j: u8) -> Result<SparsePolynomial> {
    let next = if i == d { 1 } else { i + 1 };
    let g = build_generator(d, GeneratorIndex::new(next, j, i, next))?;
    Ok(-&g.homogeneous_part(2))
}

/// Substitution sending every `p_{0,ij}` to its image and fixing the rest.
pub fn elimination_map(d: u8) -> Result<BTreeMap<Coord, SparsePolynomial>> {
    let mut map = BTreeMap::new();
    for i in 1..=d {
        for j in i..=d {
            map.insert(Coord::constant(i, j), constant_term_image(d, i, j)?);
        }
    }
    Ok(map)
}

/// Applies the elimination to the generators with `a ≥ 1`. The generators with
/// `a = 0` lie in the ideal of those (see the `C(0)` reconstruction) and would
/// become cubic, so they are not carried over.
pub fn eliminate_linear(d: u8) -> Result<GeneratorSet> {
    if d < 3 {
        return Err(HilbError::Index(format!("elimination needs d >= 3, got {d}")));
    }
    let raw = all_generators(d)?;
    let map = elimination_map(d)?;
    let mut generators = BTreeMap::new();
    for (idx, g) in raw.iter().filter(|(idx, _)| idx.a >= 1) {
        let out = g.substitute(&map, true)?;
        if let Some(v) = out.variables().into_iter().find(|v| v.is_constant_term()) {
            return Err(HilbError::Elimination { generator: format!("{idx:?}"), reason: format!("{v} survives") });
        }
        if !out.is_zero() && !out.is_homogeneous_of_degree(2) {
            return Err(HilbError::Elimination {
                generator: format!("{idx:?}"),
                reason: "not homogeneous quadratic".into(),
            });
        }
        generators.insert(*idx, out);
    }
    Ok(GeneratorSet { d, stage: Stage::Eliminated, generators })
}

/// Image of `p_{r,st}` (`r ≥ 1`, `s ≤ t`) in the shifted coordinates, which
/// reuse `Coord` with the same indices.
pub fn shift_image(d: u8, c: Coord) -> SparsePolynomial {
    let q = |r, s, t| SparsePolynomial::var(d, Coord::new(r, s, t));
    let Coord { r, s, t } = c;
    if r == s && s == t {
        q(r, r, r).scale(&int(2))
    } else if r == t {
        &q(r, s, t) + &q(s, s, s)
    } else if r == s {
        &q(r, s, t) + &q(t, t, t)
    } else {
        q(r, s, t)
    }
}

/// The off-diagonal shifted coordinates, `d(C(d+1,2) − 1)` of them.
pub fn off_diagonal_coords(d: u8) -> Vec<Coord> {
    let mut out = Vec::new();
    for r in 1..=d {
        for s in 1..=d {
            for t in s..=d {
                let c = Coord::new(r, s, t);
                if !c.is_diagonal() {
                    out.push(c);
                }
            }
        }
    }
    out
}

/// Applies the shift to an eliminated set and checks that no diagonal
/// coordinate survives and that every off-diagonal coordinate is used.
pub fn substitute_q(d: u8, gens: &GeneratorSet) -> Result<GeneratorSet> {
    if gens.stage != Stage::Eliminated || gens.d != d {
        return Err(HilbError::Precondition("substitute_q expects the eliminated generators".into()));
    }
    let mut map = BTreeMap::new();
    for r in 1..=d {
        for s in 1..=d {
            for t in s..=d {
                let c = Coord::new(r, s, t);
                map.insert(c, shift_image(d, c));
            }
        }
    }
    let mut generators = BTreeMap::new();
    let mut used: BTreeSet<Coord> = BTreeSet::new();
    for (idx, g) in gens.iter() {
        let out = g.substitute(&map, false)?;
        for v in out.variables() {
            if v.is_diagonal() {
                return Err(HilbError::DiagonalSurvived { generator: format!("{idx:?}"), variable: v });
            }
            used.insert(v);
        }
        if !out.is_zero() && !out.is_homogeneous_of_degree(2) {
            return Err(HilbError::Elimination {
                generator: format!("{idx:?}"),
                reason: "shifted generator is not homogeneous quadratic".into(),
            });
        }
        generators.insert(*idx, out);
    }
    let expected: BTreeSet<Coord> = off_diagonal_coords(d).into_iter().collect();
    if used != expected {
        return Err(HilbError::Enumeration {
            what: "off-diagonal variables after the shift".into(),
            found: used.len(),
            expected: expected.len(),
        });
    }
    Ok(GeneratorSet { d, stage: Stage::Q, generators })
}

/// Generators at the requested stage.
pub fn generators_at(d: u8, stage: Stage) -> Result<GeneratorSet> {
    match stage {
        Stage::Raw => Ok(all_generators(d)?.as_ref().clone()),
        Stage::Eliminated => eliminate_linear(d),
        Stage::Q => substitute_q(d, &eliminate_linear(d)?),
    }
}

/// Canonical indices of the generators that define the elimination map; each
/// of them maps to zero.
pub fn defining_generators(d: u8) -> Vec<GeneratorIndex> {
    let mut out = Vec::new();
    for i in 1..=d {
        let next = if i == d { 1 } else { i + 1 };
        for j in i..=d {
            let (idx, _) = GeneratorIndex::new(next, j, i, next).canonical().expect("i != i+1");
            out.push(idx);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elimination_and_shift_at_d3() {
        let elim = eliminate_linear(3).unwrap();
        assert_eq!(elim.len(), 27);
        for (_, g) in elim.iter() {
            assert!(g.is_zero() || g.is_homogeneous_of_degree(2));
        }
        for idx in defining_generators(3) {
            assert!(elim.generators[&idx].is_zero(), "{idx:?}");
        }
        let q = substitute_q(3, &elim).unwrap();
        let vars: BTreeSet<Coord> = q.iter().flat_map(|(_, g)| g.variables()).collect();
        assert_eq!(vars.len(), 15);
        assert!(vars.iter().all(|v| !v.is_diagonal() && !v.is_constant_term()));
    }

    #[test]
    fn shift_images() {
        let d = 8;
        let q = |r, s, t| SparsePolynomial::var(d, Coord::new(r, s, t));
        assert_eq!(shift_image(d, Coord::new(2, 1, 3)), q(2, 1, 3));
        assert_eq!(shift_image(d, Coord::new(2, 1, 2)), &q(2, 1, 2) + &q(1, 1, 1));
        assert_eq!(shift_image(d, Coord::new(2, 2, 5)), &q(2, 2, 5) + &q(5, 5, 5));
        assert_eq!(shift_image(d, Coord::new(4, 4, 4)), q(4, 4, 4).scale(&int(2)));
        assert_eq!(off_diagonal_coords(8).len(), 280);
    }

    #[test]
    fn substitute_q_rejects_raw_input() {
        let raw = all_generators(3).unwrap();
        assert!(substitute_q(3, &raw).is_err());
    }
}
