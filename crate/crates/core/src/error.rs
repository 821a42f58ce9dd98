use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("{what} must be >= {min}, got {got}")]
    OutOfRange {
        what: &'static str,
        min: i64,
        got: i64,
    },

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("polynomial is not square-free (gcd with derivative has degree {gcd_degree})")]
    NotSquareFree { gcd_degree: usize },

    #[error("cannot parse {kind} from {input:?}")]
    Parse { kind: &'static str, input: String },

    #[error("root solver did not converge after {iterations} iterations")]
    NoConvergence {
        iterations: usize,
        /// Best iterate at termination, as (re, im) decimal strings.
        best: Vec<(String, String)>,
    },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn out_of_range(what: &'static str, min: i64, got: i64) -> Self {
        Error::OutOfRange { what, min, got }
    }
}
