use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polygon size {0} is below 3")]
    TooFewVertices(u32),

    #[error("expected {expected} steps, got {got}")]
    WrongLength { expected: usize, got: usize },

    #[error("step {step} at position {index} is outside [1, {max}]")]
    BadStepRange { index: usize, step: u32, max: u32 },

    #[error("premature closure: the walk returns to vertex 0 after {at} of {n} steps")]
    PrematureClosure { at: usize, n: u32 },

    #[error("the walk revisits vertex {vertex} after {at} steps")]
    RevisitedVertex { vertex: u32, at: usize },

    #[error("the walk ends at vertex {end} instead of closing at 0")]
    NotClosed { end: u32 },

    #[error("vertex order is not a permutation of 0..{n}")]
    NotPermutation { n: u32 },

    #[error("vertex order must start at vertex 0, found {0}")]
    NotNormalized(u32),

    #[error("invalid chord set: {0}")]
    InvalidChordSet(String),

    #[error("n = {0} must be even and at least 4")]
    NotEvenPolygon(u32),

    #[error("invalid alternating pair (a, b) = ({a}, {b}) for n = {n}")]
    InvalidPair { n: u32, a: u32, b: u32 },

    #[error("revolution count u = {u} is outside [1, {max}]")]
    RevolutionsOutOfRange { u: u32, max: u32 },

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("exponent k = {k} is outside [{min}, {max}]")]
    ExponentOutOfRange { k: u32, min: u32, max: u32 },

    #[error("oracle size n = {n} is outside [3, {max}]")]
    OracleRange { n: u32, max: u32 },

    #[error("inexact division in the class count for n = {0}")]
    InexactDivision(u32),

    #[error("unknown output format `{0}` (expected csv or json)")]
    UnknownFormat(String),

    #[error("render canvas size must be positive")]
    InvalidCanvas,

    #[error("b-file line {line}: {msg}")]
    BFile { line: usize, msg: String },

    #[error("sequences have no overlapping indices")]
    EmptyOverlap,

    #[error("cannot emit an empty {0}")]
    Empty(&'static str),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
