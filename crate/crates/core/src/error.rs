use thiserror::Error;

use crate::quadrature::QuadResult;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("pole of the gamma function at z = {0}")]
    Pole(f64),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("combinatorial limit exceeded: {0}")]
    Limit(String),

    #[error("arity error: {0}")]
    Arity(String),

    /// The adaptive integrator ran out of subdivisions; `best` holds the
    /// estimate reached so far with `converged == false`.
    #[error("quadrature budget exceeded (value {}, error estimate {:e})", .best.value, .best.err_estimate)]
    BudgetExceeded { best: QuadResult },

    #[error("integrand returned a non-finite value at t = {0}")]
    NonFiniteIntegrand(f64),

    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),

    #[error("missing derivative of order {0}")]
    MissingDerivatives(usize),

    #[error("recursion depth {depth} exceeds the limit {limit}")]
    DepthExceeded { depth: usize, limit: usize },

    #[error("analyticity required: {0}")]
    AnalyticityRequired(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
