//! Generators of the ideal cutting out the symmetric chart, their linear
//! relations, and the reduction to quadrics in off-diagonal coordinates.

mod generators;
mod identities;
mod reduction;

pub use generators::{
    all_generators, build_generator, canonical_indices, is_in_set, vanishes_on_in_set_locus, GeneratorIndex,
    GeneratorJson, GeneratorSet, Stage,
};
pub use identities::{
    c0_combination, c0_literal_counts, c0_multiplier, verify_antisymmetry, verify_c0_generation,
    verify_c0_generation_all, verify_cyclic_identity, verify_cyclic_identity_in, verify_trace_identity,
    verify_trace_identity_in, IdentityCheck, IdentityReport,
};
pub use reduction::{
    constant_term_image, defining_generators, eliminate_linear, elimination_map, generators_at, off_diagonal_coords,
    shift_image, substitute_q,
};
