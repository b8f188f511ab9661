//! Third-order finite-difference WENO schemes for one- and two-dimensional
//! hyperbolic conservation laws, with classical nonlinear weights and the
//! weight-limiter family.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod problems;
pub mod reconstruction;
pub mod solvers;
pub mod weights;

pub use error::{Result, WenoError};
pub use weights::{LimiterKind, WeightPair, WeightScheme};
