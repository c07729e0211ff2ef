//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Everything that can go wrong ingesting data or running an analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("size mismatch in {context}: expected {expected_rows}x{expected_cols}, got {rows}x{cols}")]
    SizeMismatch {
        context: &'static str,
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },

    #[error("matrix is not Hermitian: deviation {deviation:.3e} exceeds tolerance {tol:.3e}")]
    NonHermitianInput { deviation: f64, tol: f64 },

    #[error("matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue:.3e} is below -{tol:.3e}")]
    NotPsd { min_eigenvalue: f64, tol: f64 },

    #[error("action is not linear: deviation {deviation:.3e} on a random probe")]
    NonlinearAction { deviation: f64 },

    #[error("map is not completely positive: Choi eigenvalue {eigenvalue:.6e}")]
    NotCompletelyPositive {
        eigenvalue: f64,
        /// Unit eigenvector attached to the offending eigenvalue; a
        /// re-checkable certificate of the failure.
        eigenvector: Vec<num_complex::Complex64>,
    },

    #[error("non-finite entry at ({row},{col})")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("no convergence after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("positivity order k={k} must lie in 1..={max}")]
    InvalidK { k: usize, max: usize },

    #[error("unknown gallery entry '{0}'")]
    UnknownName(String),

    #[error("bad parameter '{name}': {message}")]
    BadParameter { name: String, message: String },

    #[error("random generation failed after {attempts} attempts: {message}")]
    GenerationFailed { attempts: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
