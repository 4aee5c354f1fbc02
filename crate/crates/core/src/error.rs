use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("unknown variable '{name}' at position {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("empty polynomial after cancellation")]
    EmptyPolynomial,
    #[error("zero vector has no primitive representative")]
    ZeroVector,
    #[error("cone is not pointed")]
    NotPointed,
    #[error("cone is not simplicial")]
    NotSimplicial,
    #[error("cone is not full-dimensional")]
    NotFullDimensional,
    #[error("cone does not lie in the non-negative octant")]
    NotInOctant,
    #[error("vector {0:?} is not in the cone")]
    NotInCone([i64; 3]),
    #[error("duplicate ray {0:?}")]
    DuplicateRay([i64; 3]),
    #[error("refinement is not regular")]
    NotRegular,
    #[error("polynomial must have at least two terms")]
    TooFewTerms,
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error("parameters out of domain for {family}: {msg}")]
    OutOfDomain { family: String, msg: String },
    #[error("missing parameter '{0}'")]
    MissingParameter(String),
    #[error("{0}")]
    NoData(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
