use thiserror::Error;

use crate::state::Chart;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("T_kappa pole: C_kappa({x}) vanishes for kappa = {kappa}")]
    Pole { kappa: f64, x: f64 },

    #[error("chart singularity: {0}")]
    Singularity(String),

    #[error("chart mismatch: expected {expected:?}, got {got:?}")]
    ChartMismatch { expected: Chart, got: Chart },

    #[error("chart {chart:?} is not available for {what}")]
    UnsupportedChart { chart: Chart, what: String },

    #[error("deformation mismatch: z = {left} vs z = {right}")]
    DeformationMismatch { left: f64, right: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
