use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{HilbError, Result};
use crate::exactalg::{Coord, PolyJson, Rational, SparsePolynomial};

/// Index `(a; j, (i, k))` of a chart generator: the coefficient of `x_a`
/// (of `1` when `a = 0`) in `P(x_k P(x_i x_j)) − P(x_i P(x_k x_j))`.
///
/// Field order gives the derived `Ord`, which is the storage order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratorIndex {
    pub a: u8,
    pub j: u8,
    pub i: u8,
    pub k: u8,
}

impl GeneratorIndex {
    pub fn new(a: u8, j: u8, i: u8, k: u8) -> Self {
        GeneratorIndex { a, j, i, k }
    }

    /// The `i < k` orientation and the sign relating it to `self`; `None` when
    /// `i == k`, where the generator vanishes.
    pub fn canonical(self) -> Option<(GeneratorIndex, i8)> {
        use std::cmp::Ordering::*;
        match self.i.cmp(&self.k) {
            Less => Some((self, 1)),
            Greater => Some((GeneratorIndex { i: self.k, k: self.i, ..self }, -1)),
            Equal => None,
        }
    }

    pub fn check(self, d: u8) -> Result<Self> {
        let ok = self.a <= d && [self.j, self.i, self.k].iter().all(|&x| (1..=d).contains(&x));
        if ok {
            Ok(self)
        } else {
            Err(HilbError::Index(format!("{self:?} is not a generator index for d = {d}")))
        }
    }
}

impl fmt::Debug for GeneratorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({};{},({},{}))", self.a, self.j, self.i, self.k)
    }
}

impl fmt::Display for GeneratorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn p(r: u8, s: u8, t: u8) -> Coord {
    Coord::new(r, s, t)
}

/// The generator polynomial, in any orientation (`i == k` gives zero).
pub fn build_generator(d: u8, idx: GeneratorIndex) -> Result<SparsePolynomial> {
    if d < 2 {
        return Err(HilbError::Index(format!("generators need d >= 2, got {d}")));
    }
    let GeneratorIndex { a, j, i, k } = idx.check(d)?;
    let one = Rational::one();
    let minus = -Rational::one();
    let mut out = SparsePolynomial::zero(d);
    if i == k {
        return Ok(out);
    }
    if a == k {
        out.add_term(crate::exactalg::Monomial::var(Coord::constant(i, j)), one.clone());
    }
    if a == i {
        out.add_term(crate::exactalg::Monomial::var(Coord::constant(k, j)), minus.clone());
    }
    // for a = 0 the second factor is p_{0,km}, which is p(0, k, m) as well
    for m in 1..=d {
        out = &out + &SparsePolynomial::product(d, p(m, i, j), p(a, k, m), one.clone());
        out = &out + &SparsePolynomial::product(d, p(m, k, j), p(a, i, m), minus.clone());
    }
    Ok(out)
}

/// Which change of variables a generator set has been through.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Raw,
    Eliminated,
    Q,
}

impl std::str::FromStr for Stage {
    type Err = HilbError;

    fn from_str(s: &str) -> Result<Stage> {
        match s {
            "raw" => Ok(Stage::Raw),
            "eliminated" => Ok(Stage::Eliminated),
            "q" => Ok(Stage::Q),
            _ => Err(HilbError::Parse(format!("unknown stage {s:?}"))),
        }
    }
}

/// Generators keyed by canonical index (`i < k`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub d: u8,
    pub stage: Stage,
    pub generators: BTreeMap<GeneratorIndex, SparsePolynomial>,
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GeneratorIndex, &SparsePolynomial)> {
        self.generators.iter()
    }

    /// Generator in any orientation; zero when `i == k` or when the index is
    /// absent from this stage.
    pub fn get(&self, a: u8, j: u8, i: u8, k: u8) -> SparsePolynomial {
        match GeneratorIndex::new(a, j, i, k).canonical() {
            None => SparsePolynomial::zero(self.d),
            Some((idx, sign)) => match self.generators.get(&idx) {
                None => SparsePolynomial::zero(self.d),
                Some(g) if sign > 0 => g.clone(),
                Some(g) => -g,
            },
        }
    }

    pub fn to_json(&self) -> Vec<GeneratorJson> {
        self.generators
            .iter()
            .map(|(idx, g)| GeneratorJson { index: *idx, stage: self.stage, poly: g.to_json() })
            .collect()
    }

    pub fn from_json(d: u8, stage: Stage, items: &[GeneratorJson]) -> Result<GeneratorSet> {
        let mut generators = BTreeMap::new();
        for item in items {
            let (idx, sign) = item
                .index
                .check(d)?
                .canonical()
                .ok_or_else(|| HilbError::Index(format!("{:?} has i = k", item.index)))?;
            let g = SparsePolynomial::from_json(&item.poly)?;
            generators.insert(idx, if sign > 0 { g } else { -g });
        }
        Ok(GeneratorSet { d, stage, generators })
    }
}

/// One array element of the generator JSON artifact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub index: GeneratorIndex,
    pub stage: Stage,
    #[serde(flatten)]
    pub poly: PolyJson,
}

/// Canonical indices `0 ≤ a ≤ d`, `1 ≤ j ≤ d`, `1 ≤ i < k ≤ d`, in `Ord` order.
pub fn canonical_indices(d: u8) -> Vec<GeneratorIndex> {
    let mut out = Vec::new();
    for a in 0..=d {
        for j in 1..=d {
            for i in 1..=d {
                for k in i + 1..=d {
                    out.push(GeneratorIndex::new(a, j, i, k));
                }
            }
        }
    }
    out
}

fn build_all(d: u8) -> Result<GeneratorSet> {
    let generators =
        canonical_indices(d).into_iter().map(|idx| Ok((idx, build_generator(d, idx)?))).collect::<Result<_>>()?;
    Ok(GeneratorSet { d, stage: Stage::Raw, generators })
}

/// All raw generators for `d`, built once per process.
pub fn all_generators(d: u8) -> Result<Arc<GeneratorSet>> {
    static CACHE: OnceLock<Mutex<HashMap<u8, Arc<GeneratorSet>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(set) = cache.lock().expect("generator cache poisoned").get(&d) {
        return Ok(set.clone());
    }
    let set = Arc::new(build_all(d)?);
    cache.lock().expect("generator cache poisoned").insert(d, set.clone());
    Ok(set)
}

/// Variables vanishing on the coordinate subspace where only `p_{r,st}` with
/// `1 ≤ r ≤ 3` and `4 ≤ s, t` may be nonzero are the complement of these.
pub fn is_in_set(c: Coord) -> bool {
    (1..=3).contains(&c.r) && c.s >= 4 && c.t >= 4
}

/// Whether every monomial of every generator contains a variable outside the
/// in-set, so that the whole set vanishes identically on the in-set subspace.
/// Returns the first offending generator otherwise.
pub fn vanishes_on_in_set_locus(set: &GeneratorSet) -> std::result::Result<(), GeneratorIndex> {
    for (idx, g) in set.iter() {
        if g.terms().any(|(m, _)| m.vars().iter().all(|&v| is_in_set(v))) {
            return Err(*idx);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, Monomial};

    #[test]
    fn counts() {
        assert_eq!(all_generators(3).unwrap().len(), 36);
        assert_eq!(all_generators(8).unwrap().len(), 2016);
    }

    #[test]
    fn orientation_flip_negates() {
        for d in 3..=5u8 {
            for idx in canonical_indices(d) {
                let flipped = GeneratorIndex { i: idx.k, k: idx.i, ..idx };
                let sum = &build_generator(d, idx).unwrap() + &build_generator(d, flipped).unwrap();
                assert!(sum.is_zero(), "{idx:?}");
            }
        }
    }

    #[test]
    fn linear_term_when_a_is_k() {
        // C(3;1,(2,3)) at d = 3 carries +p_{0,12}
        let g = build_generator(3, GeneratorIndex::new(3, 1, 2, 3)).unwrap();
        assert_eq!(g.coefficient(&Monomial::var(Coord::constant(1, 2))), int(1));
        assert_eq!(g.homogeneous_part(1).len(), 1);
        // and C(2;1,(2,3)) carries −p_{0,13}
        let g = build_generator(3, GeneratorIndex::new(2, 1, 2, 3)).unwrap();
        assert_eq!(g.coefficient(&Monomial::var(Coord::constant(1, 3))), int(-1));
    }

    #[test]
    fn distinct_indices_match_hand_expansion() {
        // C(1;2,(2,3)) at d = 3, a = 1 ∉ {i, k}: Σ_m p_{m,22} p_{1,3m} − p_{m,32} p_{1,2m}
        let g = build_generator(3, GeneratorIndex::new(1, 2, 2, 3)).unwrap();
        let mut expected = SparsePolynomial::zero(3);
        for m in 1..=3 {
            expected = &expected + &SparsePolynomial::product(3, p(m, 2, 2), p(1, 3, m), int(1));
            expected = &expected - &SparsePolynomial::product(3, p(m, 2, 3), p(1, 2, m), int(1));
        }
        assert_eq!(g, expected);
        assert!(g.is_homogeneous_of_degree(2));
    }

    #[test]
    fn out_of_range_is_an_error() {
        assert!(build_generator(3, GeneratorIndex::new(4, 1, 1, 2)).is_err());
        assert!(build_generator(3, GeneratorIndex::new(1, 0, 1, 2)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let set = all_generators(3).unwrap();
        let json = serde_json::to_string(&set.to_json()).unwrap();
        let items: Vec<GeneratorJson> = serde_json::from_str(&json).unwrap();
        let back = GeneratorSet::from_json(3, Stage::Raw, &items).unwrap();
        assert_eq!(&back, set.as_ref());
    }
}
