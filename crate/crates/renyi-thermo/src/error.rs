use thiserror::Error;

/// Errors for operator validation, spectral calculus, solvers, channels and
/// the CLI front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("not Hermitian (max |M - M†| entry = {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("not positive semi-definite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("trace is not 1 (got {trace})")]
    TraceNotOne { trace: f64 },

    #[error("dimension mismatch: {expected} vs {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("support violation: {0}")]
    SupportViolation(String),

    #[error("negative eigenvalue {eigenvalue:.3e} as power base")]
    NegativeBase { eigenvalue: f64 },

    #[error("cutoff violation: log argument {log_argument:.3e} is not positive")]
    CutoffViolation { log_argument: f64 },

    #[error("no convergence after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("no self-consistent energy keeps the thermal density positive")]
    InfeasibleConstraint,

    #[error("multiple self-consistent roots found: {roots:?}")]
    MultipleRoots { roots: Vec<f64> },

    #[error("no bracket: target entropy outside the scanned range")]
    NoBracket,

    #[error("entropy is not monotone on the bracket ({sign_changes} sign changes)")]
    NonMonotone { sign_changes: usize },

    #[error("cycle not closed: endpoint trace distance {trace_distance:.3e}")]
    CycleNotClosed { trace_distance: f64 },

    #[error("prepared states do not reconstruct the fixed point (deviation {deviation:.3e})")]
    FixedPointMismatch { deviation: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
