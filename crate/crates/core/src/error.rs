use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("label `{0}` already present in the complex")]
    LabelCollision(String),
    #[error("dimension out of range: {0}")]
    Dimension(String),
    #[error("not a 2-face: {0}")]
    NotATriangle(String),
    #[error("not a bijection on the vertex set: {0}")]
    NotABijection(String),
    #[error("complex is disconnected")]
    Disconnected,
    #[error("inconsistent face identification: {0}")]
    Identification(String),
    #[error("invalid polygon: {0}")]
    Polygon(String),
    #[error("unknown construction `{0}`")]
    UnknownConstruction(String),
    #[error("degenerate simplex: {0}")]
    Degenerate(String),
    #[error("missing coordinate for vertex `{0}`")]
    MissingCoordinate(String),
    #[error("curves intersect; linking number undefined")]
    CurvesIntersect,
    #[error("invalid curve: {0}")]
    Curve(String),
    #[error("search refused: {0}")]
    SearchRefused(String),
    #[error("no tetrahedral action: automorphism group has order {order}")]
    NoTetrahedralAction { order: usize },
    #[error("embedding check failed: {0}")]
    EmbeddingFailed(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
