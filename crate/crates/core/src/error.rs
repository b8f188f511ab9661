use thiserror::Error;

/// Errors raised by the weight engine, the reconstruction kernels and the drivers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum WenoError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite stencil value ({fm1}, {f0}, {fp1})")]
    NonFiniteStencil { fm1: f64, f0: f64, fp1: f64 },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("line has {available} ghost cells per side, {required} required")]
    InsufficientGhosts { available: usize, required: usize },

    #[error("unknown problem id `{0}`")]
    UnknownProblem(String),

    #[error("invalid scheme descriptor `{descriptor}`: {reason}")]
    InvalidScheme { descriptor: String, reason: String },

    #[error("non-finite state at step {step} (cell {cell})")]
    NonFiniteState { step: usize, cell: usize },

    #[error("positivity violated at step {step}, cell {cell}: rho = {rho}, p = {pressure}")]
    Positivity {
        step: usize,
        cell: usize,
        rho: f64,
        pressure: f64,
    },

    #[error("exact Riemann solver did not converge after {iterations} iterations (residual {residual:e})")]
    RiemannNonConvergence { iterations: usize, residual: f64 },

    #[error("time {t} outside the validity window [0, {limit})")]
    OutsideValidity { t: f64, limit: f64 },
}

impl WenoError {
    /// True for errors caused by the inputs/configuration rather than by a failing run.
    pub fn is_config_error(&self) -> bool {
        matches!(
            self,
            WenoError::InvalidParameter(_)
                | WenoError::LengthMismatch { .. }
                | WenoError::InsufficientGhosts { .. }
                | WenoError::UnknownProblem(_)
                | WenoError::InvalidScheme { .. }
                | WenoError::OutsideValidity { .. }
        )
    }
}

pub type Result<T, E = WenoError> = std::result::Result<T, E>;
