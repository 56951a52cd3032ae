//! Partitions, Schur-module dimensions, Littlewood–Richardson coefficients and
//! the dimension checks tying the generators to representations of `GL(W)`.

mod character;
mod ledger;
mod lr;
mod partition;

pub use character::{decompose_character, sym2_decompose_by_character, SymmetricPolynomial, MAX_VARS};
pub use ledger::{
    complement_partition, coordinate_partition, generator_rank, generator_summands, sym2_summands,
    verify_dimension_ledger, verify_dimension_ledger_with, verify_four_factor, verify_sym2_decomposition,
    verify_tail_sums, LedgerCheck, LedgerReport,
};
pub use lr::{lr_coefficients, lr_product, MAX_WEIGHT};
pub use partition::{binomial, hook_content_dim, Partition};
