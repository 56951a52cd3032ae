//! Exact arithmetic: reduced rationals, sparse polynomials in the chart
//! coordinates, and fraction-free linear algebra.

pub mod bareiss;
mod coord;
mod matrix;
pub mod modp;
mod poly;
mod rational;
pub mod sparse;
mod univariate;

pub use coord::{Coord, CoordSpace};
pub use matrix::{det_exact, inverse_exact, rank_exact, solve_exact, ExactMatrix};
pub use poly::{poly_arith, Monomial, PolyJson, PolyOp, SparsePolynomial, TermJson};
pub use rational::{common_denominator, format_rational, int, is_reduced, parse_rational, rat, Rational};
pub use univariate::{det_poly, UniPoly};
