//! The degree-90 equations at `d = 8`: a 90×115 matrix factorization of
//! quadratic generators and exact evaluation of its maximal minors.

mod matrix;
mod minors;

pub use matrix::{
    enumerate_rows, enumerate_shifted, extract_m, factorization_matrix, in_set_variables, verify_factorization, Entry,
    EntryJson, FactorizationMatrix, FactorizationReport, MatrixJson, ShiftedCoordinate, COLS, D, IN_SET, ROWS,
};
pub use minors::{
    assignment_from, find_nonsingular_minor, minor89_evidence, minor_at_configuration, minor_det_at,
    nonvanishing_in_set, random_assignment, vanish_on_principal, Assignment, Minor89, Minor89Report, MinorCertificate,
    MinorSearch, MinorSelection, SampleDeterminant, ASSIGNMENT_HEIGHT, MINOR_ATTEMPTS,
};
