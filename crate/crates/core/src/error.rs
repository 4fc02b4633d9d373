use thiserror::Error;

/// Errors raised while building families, applying operators or integrating.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division left a nonzero remainder of degree {remainder_degree}")]
    NonzeroRemainder { remainder_degree: usize },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("degenerate parameters at n = {n}: {detail}")]
    DegenerateParameters { n: usize, detail: String },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("operator is not polynomial preserving at node `{node}`")]
    OperatorNotPolynomialPreserving { node: String },

    #[error("identity violated: {0}")]
    IdentityViolation(String),

    #[error("log-gamma pole at {0}")]
    PoleError(String),

    #[error("quadrature did not converge after {doublings} panel doublings (last change {last_change})")]
    QuadratureNotConverged { doublings: u32, last_change: String },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable kind used in JSON error documents.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonzeroRemainder { .. } => "NonzeroRemainder",
            Error::DivisionByZero => "DivisionByZero",
            Error::DegenerateParameters { .. } => "DegenerateParameters",
            Error::InvalidParameters(_) => "InvalidParameters",
            Error::OperatorNotPolynomialPreserving { .. } => "OperatorNotPolynomialPreserving",
            Error::IdentityViolation(_) => "IdentityViolation",
            Error::PoleError(_) => "PoleError",
            Error::QuadratureNotConverged { .. } => "QuadratureNotConverged",
            Error::Parse(_) => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
