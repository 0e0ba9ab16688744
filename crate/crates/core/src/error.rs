use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1, got {0}")]
    BadDegree(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {order} exceeds the cap of {cap}")]
    FieldTooLarge { order: u64, cap: u64 },
    #[error("element {value} is outside the field of order {order}")]
    ElementOutOfRange { value: u32, order: u32 },
    #[error("vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("vectors belong to different fields")]
    FieldMismatch,
    #[error("projective dimension must be at least 2, got {0}")]
    DimensionTooSmall(u32),
    #[error("{what} has size {size}, above the cap of {cap}")]
    SizeCap { what: &'static str, size: u64, cap: u64 },
    #[error("graph is not regular: vertex {vertex} has degree {degree}, expected {expected}")]
    NotRegular { vertex: usize, degree: usize, expected: usize },
    #[error("spectral certificate is not verified")]
    Unverified,
    #[error("graphs are on different vertex sets ({left} vs {right} vertices)")]
    VertexSetMismatch { left: usize, right: usize },
    #[error("vertex {vertex} is out of range for {len} vertices")]
    VertexOutOfRange { vertex: usize, len: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("k = {k} is below w = {w}; the forward-independence bound needs k >= w")]
    BelowShrinkingThreshold { k: u64, w: f64 },
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },
    #[error("digraph has a loop at vertex {0}")]
    DigraphHasLoop(usize),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
