use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GgError {
    /// Malformed or inconsistent input (dimensions, rank, indices).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A value outside the domain where the requested quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// A gamma-function pole met inside the truncation range.
    #[error("gamma pole at base position {position}, multi-index {multi_index:?}")]
    Pole {
        position: usize,
        multi_index: Vec<u32>,
    },
    /// A series or quadrature that failed its decay check.
    #[error("convergence failure: {0}")]
    Convergence(String),
    /// Evaluator failure at a sample point, with the point rendered as text.
    #[error("evaluation failed at {point}: {source}")]
    Evaluation {
        point: String,
        #[source]
        source: Box<GgError>,
    },
}

pub type Result<T> = std::result::Result<T, GgError>;

impl GgError {
    pub(crate) fn at(point: String, source: GgError) -> Self {
        GgError::Evaluation {
            point,
            source: Box::new(source),
        }
    }
}
