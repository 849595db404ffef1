use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid partition {parts:?}: {reason}")]
    InvalidPartition { parts: Vec<i64>, reason: &'static str },

    #[error("invalid label: {0}")]
    InvalidLabel(String),

    #[error("rank mismatch: expected N = {expected}, got N = {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("invalid eigenvalue set: {0}")]
    InvalidEigenvalues(String),

    #[error("degenerate eigenvalues: min pairwise distance {min_distance:e} is below {threshold:e}")]
    DegenerateEigenvalues { min_distance: f64, threshold: f64 },

    #[error("singular input: {0}")]
    SingularInput(String),

    #[error("parameter {name} = {value} is outside the convergence domain {domain}")]
    ConvergenceDomain {
        name: &'static str,
        value: String,
        domain: &'static str,
    },

    #[error("unsupported support: {0}")]
    UnsupportedSupport(String),

    #[error("expansion exceeds the limit of {limit} terms")]
    ResourceLimit { limit: usize },

    #[error("torus quadrature supports N <= 3, got N = {0}")]
    UnsupportedRank(usize),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("sequence `{0}` has no closed form")]
    MissingClosedForm(String),

    #[error("generating function `{name}` is singular at t = {t}")]
    SingularEvaluation { name: String, t: Complex64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
