//! Error type shared by all solvers and evaluators in this crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    #[error("domain error in {op}: {reason}")]
    Domain { op: &'static str, reason: String },

    /// An iterative solver ran out of iterations.
    #[error("{op} did not converge after {iterations} iterations (bracket [{lo:e}, {hi:e}], residual {residual:e})")]
    Convergence {
        op: &'static str,
        iterations: usize,
        lo: f64,
        hi: f64,
        residual: f64,
    },

    /// A sequence request exceeded the configured ceiling.
    #[error("requested index {requested} exceeds the ceiling {ceiling}")]
    Ceiling { requested: usize, ceiling: usize },

    /// The contour quadrature could not drive the imaginary residual below
    /// tolerance even at the node-count ceiling.
    #[error("contour quadrature: imaginary residual {residual:e} with {nodes} nodes (tolerance {tolerance:e})")]
    QuadratureResidual {
        nodes: usize,
        residual: f64,
        tolerance: f64,
    },
}

impl Error {
    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            op,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
