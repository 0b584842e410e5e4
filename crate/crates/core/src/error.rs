use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("size error: {0}")]
    Size(String),

    #[error("graph is disconnected: {} of {vertex_count} vertices reachable from vertex 0", .reachable.len())]
    Disconnected {
        vertex_count: usize,
        /// The component containing vertex 0.
        reachable: Vec<usize>,
    },

    #[error("quadrature did not converge: value {value:e}, error estimate {error:e} exceeds tolerance {tolerance:e}")]
    NonConvergence { value: f64, error: f64, tolerance: f64 },

    #[error("integral diverges: {0}")]
    Divergence(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}
