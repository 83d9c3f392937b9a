use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("semantic error: {0}")]
    Semantic(String),
    #[error("invalid ball: {0}")]
    InvalidBall(String),
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),
    #[error("edge cycle through {edge} closes with reversed direction")]
    Compatibility { edge: String },
    #[error("no multiplier for edge cycle {0}")]
    MissingMultiplier(usize),
    #[error("quotient is not a manifold (chi = {chi}, vertices = {vertices})")]
    NotAManifold { chi: i64, vertices: usize },
    #[error("quotient is not a one-vertex manifold (chi = {chi}, vertices = {vertices})")]
    HypothesisViolated { chi: i64, vertices: usize },
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("diagram inversion inconsistent: {0}")]
    InversionInconsistent(String),
    #[error("diagram is not integral: {0}")]
    NotIntegral(String),
    #[error("no edge path between {from} and {to}")]
    PathNotFound { from: String, to: String },
    #[error("unknown example {0}")]
    UnknownExample(String),
}

pub type Result<T> = std::result::Result<T, Error>;
