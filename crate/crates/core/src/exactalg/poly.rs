//! Sparse multivariate polynomials over the rationals in the chart coordinates.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], so iteration and
//! serialization follow the graded lexicographic order and are reproducible.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::coord::Coord;
use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{HilbError, Result};

/// Sorted multiset of coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[Coord; 4]>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(SmallVec::new())
    }

    pub fn var(c: Coord) -> Monomial {
        let mut v = SmallVec::new();
        v.push(c);
        Monomial(v)
    }

    pub fn from_vars(vars: impl IntoIterator<Item = Coord>) -> Monomial {
        let mut v: SmallVec<[Coord; 4]> = vars.into_iter().collect();
        v.sort_unstable();
        Monomial(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn vars(&self) -> &[Coord] {
        &self.0
    }

    pub fn contains(&self, c: Coord) -> bool {
        self.0.binary_search(&c).is_ok()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut v = SmallVec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] <= other.0[j] {
                v.push(self.0[i]);
                i += 1;
            } else {
                v.push(other.0[j]);
                j += 1;
            }
        }
        v.extend_from_slice(&self.0[i..]);
        v.extend_from_slice(&other.0[j..]);
        Monomial(v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Polynomial in the coordinates of the chart for a fixed `d`.
#[derive(Clone, PartialEq, Eq)]
pub struct SparsePolynomial {
    d: u8,
    terms: BTreeMap<Monomial, Rational>,
}

impl SparsePolynomial {
    pub fn zero(d: u8) -> Self {
        SparsePolynomial { d, terms: BTreeMap::new() }
    }

    pub fn constant(d: u8, c: Rational) -> Self {
        let mut p = Self::zero(d);
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(d: u8, c: Coord) -> Self {
        Self::monomial(d, Monomial::var(c), Rational::one())
    }

    pub fn monomial(d: u8, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(d);
        p.add_term(m, c);
        p
    }

    /// `a·b` for two coordinates; the building block of every chart generator.
    pub fn product(d: u8, a: Coord, b: Coord, c: Rational) -> Self {
        Self::monomial(d, Monomial::from_vars([a, b]), c)
    }

    pub fn d(&self) -> u8 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn is_homogeneous_of_degree(&self, k: usize) -> bool {
        self.terms.keys().all(|m| m.degree() == k)
    }

    pub fn variables(&self) -> BTreeSet<Coord> {
        self.terms.keys().flat_map(|m| m.vars().iter().copied()).collect()
    }

    /// Terms of exactly degree `k`.
    pub fn homogeneous_part(&self, k: usize) -> SparsePolynomial {
        SparsePolynomial {
            d: self.d,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == k).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> SparsePolynomial {
        if c.is_zero() {
            return Self::zero(self.d);
        }
        SparsePolynomial { d: self.d, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    fn check_same_d(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(HilbError::Dimension(format!("polynomials over d = {} and d = {}", self.d, other.d)));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_d(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_d(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_d(other)?;
        let mut out = Self::zero(self.d);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Replaces every variable by its image. Variables without an image are an
    /// error unless `pass_through` is set, in which case they map to themselves.
    pub fn substitute(
        &self,
        assignment: &BTreeMap<Coord, SparsePolynomial>,
        pass_through: bool,
    ) -> Result<SparsePolynomial> {
        for image in assignment.values() {
            self.check_same_d(image)?;
        }
        let mut out = Self::zero(self.d);
        let mut cache: BTreeMap<Coord, SparsePolynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut acc = Self::constant(self.d, c.clone());
            for &v in m.vars() {
                let image = match assignment.get(&v) {
                    Some(p) => p,
                    None if pass_through => cache.entry(v).or_insert_with(|| Self::var(self.d, v)),
                    None => return Err(HilbError::Substitution(v)),
                };
                acc = &acc * image;
                if acc.is_zero() {
                    break;
                }
            }
            for (mm, cc) in acc.terms {
                out.add_term(mm, cc);
            }
        }
        Ok(out)
    }

    /// Evaluates at a point given by `value`; missing values are an error.
    pub fn eval_with<'a, F>(&self, value: F) -> Result<Rational>
    where
        F: Fn(Coord) -> Option<&'a Rational>,
    {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for &v in m.vars() {
                let x = value(v).ok_or(HilbError::Substitution(v))?;
                if x.is_zero() {
                    term.set_zero();
                    break;
                }
                term *= x;
            }
            total += term;
        }
        Ok(total)
    }

    pub fn derivative(&self, v: Coord) -> SparsePolynomial {
        let mut out = Self::zero(self.d);
        for (m, c) in &self.terms {
            let k = m.vars().iter().filter(|&&x| x == v).count();
            if k == 0 {
                continue;
            }
            let pos = m.vars().iter().position(|&x| x == v).unwrap();
            let mut rest: SmallVec<[Coord; 4]> = m.0.clone();
            rest.remove(pos);
            out.add_term(Monomial(rest), c * Rational::from_integer(k.into()));
        }
        out
    }

    /// Gradient at a point, as `(variable, value)` pairs with nonzero value.
    pub fn gradient_with<'a, F>(&self, value: F) -> Result<BTreeMap<Coord, Rational>>
    where
        F: Fn(Coord) -> Option<&'a Rational>,
    {
        let mut grad: BTreeMap<Coord, Rational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let vars = m.vars();
            for (pos, &v) in vars.iter().enumerate() {
                // each occurrence contributes once, which accounts for multiplicity
                let mut term = c.clone();
                for (other, &w) in vars.iter().enumerate() {
                    if other != pos {
                        term *= value(w).ok_or(HilbError::Substitution(w))?;
                    }
                }
                if !term.is_zero() {
                    *grad.entry(v).or_insert_with(Rational::zero) += term;
                }
            }
        }
        grad.retain(|_, x| !x.is_zero());
        Ok(grad)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    coeff: format_rational(c),
                    vars: m.vars().iter().map(|&v| v.into()).collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<SparsePolynomial> {
        let mut p = Self::zero(json.d);
        for term in &json.terms {
            let vars = term
                .vars
                .iter()
                .map(|&v| Coord::try_from(v).and_then(|c| c.check(json.d)))
                .collect::<Result<Vec<_>>>()?;
            p.add_term(Monomial::from_vars(vars), parse_rational(&term.coeff)?);
        }
        Ok(p)
    }
}

/// Wire form: `{"d": int, "terms": [{"coeff": "num/den", "vars": [[r,s,t], ...]}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub d: u8,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub vars: Vec<[u8; 3]>,
}

/// Elementwise dispatch over the three ring operations.
pub fn poly_arith(a: &SparsePolynomial, b: &SparsePolynomial, op: PolyOp) -> Result<SparsePolynomial> {
    match op {
        PolyOp::Add => a.checked_add(b),
        PolyOp::Sub => a.checked_sub(b),
        PolyOp::Mul => a.checked_mul(b),
    }
}

macro_rules! forward_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&SparsePolynomial> for &SparsePolynomial {
            type Output = SparsePolynomial;

            /// Panics when the two operands live over different `d`.
            fn $method(self, rhs: &SparsePolynomial) -> SparsePolynomial {
                self.$checked(rhs).expect("polynomial operands over different d")
            }
        }

        impl $trait<SparsePolynomial> for SparsePolynomial {
            type Output = SparsePolynomial;

            fn $method(self, rhs: SparsePolynomial) -> SparsePolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn neg(self) -> SparsePolynomial {
        SparsePolynomial { d: self.d, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for SparsePolynomial {
    type Output = SparsePolynomial;

    fn neg(self) -> SparsePolynomial {
        -&self
    }
}

impl fmt::Debug for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{m:?}")?;
        }
        Ok(())
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};

    fn p(d: u8, r: u8, s: u8, t: u8) -> SparsePolynomial {
        SparsePolynomial::var(d, Coord::new(r, s, t))
    }

    #[test]
    fn additive_inverse_cancels() {
        let x = p(3, 1, 2, 3);
        assert!((&x + &(-&x)).is_zero());
    }

    #[test]
    fn product_of_two_variables() {
        let prod = &p(3, 1, 2, 3) * &p(3, 2, 1, 3);
        assert_eq!(prod.len(), 1);
        let m = Monomial::from_vars([Coord::new(1, 2, 3), Coord::new(2, 1, 3)]);
        assert_eq!(prod.coefficient(&m), int(1));
        assert_eq!(prod.degree(), Some(2));
    }

    #[test]
    fn square_of_binomial_by_hand() {
        let a = Coord::new(1, 1, 2);
        let b = Coord::new(2, 1, 1);
        let s = &p(3, 1, 1, 2) + &p(3, 2, 1, 1);
        let sq = &s * &s;
        let mut expected = SparsePolynomial::product(3, a, a, int(1));
        expected.add_term(Monomial::from_vars([a, b]), int(2));
        expected.add_term(Monomial::from_vars([b, b]), int(1));
        assert_eq!(sq, expected);
    }

    #[test]
    fn mismatched_dimension_is_an_error() {
        let err = poly_arith(&p(3, 1, 1, 1), &p(4, 1, 1, 1), PolyOp::Add).unwrap_err();
        assert!(matches!(err, HilbError::Dimension(_)));
    }

    #[test]
    fn substitution_requires_every_variable() {
        let f = &p(3, 1, 2, 3) * &p(3, 2, 1, 3);
        let mut assignment = BTreeMap::new();
        assignment.insert(Coord::new(1, 2, 3), SparsePolynomial::constant(3, int(5)));
        assert!(matches!(
            f.substitute(&assignment, false),
            Err(HilbError::Substitution(c)) if c == Coord::new(2, 1, 3)
        ));
        let g = f.substitute(&assignment, true).unwrap();
        assert_eq!(g, p(3, 2, 1, 3).scale(&int(5)));
    }

    #[test]
    fn derivative_and_gradient_agree() {
        let a = Coord::new(1, 1, 2);
        let b = Coord::new(2, 2, 2);
        let mut f = SparsePolynomial::product(3, a, a, rat(3, 2));
        f.add_term(Monomial::from_vars([a, b]), int(-1));
        let values: BTreeMap<Coord, Rational> = [(a, int(2)), (b, rat(1, 3))].into();
        let grad = f.gradient_with(|c| values.get(&c)).unwrap();
        for v in [a, b] {
            let direct = f.derivative(v).eval_with(|c| values.get(&c)).unwrap();
            assert_eq!(grad.get(&v).cloned().unwrap_or_default(), direct);
        }
        // d/da (3/2 a^2 - a b) = 3a - b
        assert_eq!(grad[&a], int(6) - rat(1, 3));
    }

    #[test]
    fn json_tolerates_unsorted_input() {
        let json = PolyJson {
            d: 3,
            terms: vec![
                TermJson { coeff: "1/2".into(), vars: vec![[2, 3, 1], [1, 2, 2]] },
                TermJson { coeff: "-3".into(), vars: vec![[0, 2, 1]] },
                TermJson { coeff: "1/2".into(), vars: vec![[1, 2, 2], [2, 1, 3]] },
            ],
        };
        let f = SparsePolynomial::from_json(&json).unwrap();
        assert_eq!(f.len(), 2);
        let written = f.to_json();
        assert_eq!(written.terms[0].vars, vec![[0, 1, 2]]);
        assert_eq!(written.terms[1].coeff, "1/1");
        assert_eq!(SparsePolynomial::from_json(&written).unwrap(), f);
    }

    #[test]
    fn graded_order_puts_lower_degree_first() {
        let lin = Monomial::var(Coord::new(3, 3, 3));
        let quad = Monomial::from_vars([Coord::new(0, 1, 1), Coord::new(0, 1, 1)]);
        assert!(lin < quad);
        assert!(Monomial::one() < lin);
    }
}
