//! Exact sampling of the principal component: coordinates of ideals of
//! `d+1` points, chart checks, Jacobian ranks, and the affine geometry of
//! configurations.

mod chart;
mod config;
mod geometry;
mod jacobian;

pub use chart::{membership_sample_test, verify_on_chart, ChartReport, Residual, Verdict};
pub use config::{
    interpolate, sample_configuration, sample_indexed, ConfigJson, CoordValue, CoordsJson, PointConfiguration,
    ProjectorCoordinates, DEFAULT_HEIGHT, MAX_TRIES,
};
pub use geometry::{
    base_configuration, center_map, center_of_mass, curve_eval, curve_germ, curve_limit, gl_act, scale_action,
    scale_coordinates, transform_coordinates, translate_coordinates, CurveGerm, CurveSpec, Projective,
};
pub use jacobian::{
    expected_generic_rank, jacobian_rank_at, jacobian_rank_by_elimination, jacobian_rows, tangent_vectors,
    JacobianRank, RankMethod,
};
