//! Exact computations on the symmetric affine chart of the Hilbert scheme of
//! `d+1` points in affine `d`-space, in the projector coordinates
//! `p_{0,ij}`, `p_{r,st}`.

pub mod error;
pub mod exactalg;
pub mod factorization;
pub mod principal;
pub mod projector;
pub mod schur;
pub mod seed;

pub use error::{HilbError, Result};
