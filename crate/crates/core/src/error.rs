use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("relation sizes differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("slot count mismatch: expected {expected}, found {found}")]
    SlotMismatch { expected: usize, found: usize },

    #[error("element {index} out of range for size {size}")]
    OutOfRange { index: usize, size: usize },

    #[error("ground set of size {0} exceeds the supported maximum of 64")]
    TooLarge(usize),

    #[error("ground set must be nonempty")]
    EmptyGroundSet,

    #[error("relation is not a partial order: {0}")]
    NotPartialOrder(String),

    #[error("invalid template: {0}")]
    InvalidTemplate(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("structure is not a member of {0}")]
    NotMember(String),

    #[error("malformed product: {0}")]
    MalformedProduct(String),

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("color count {0} unsupported (need 2 <= k <= 4)")]
    UnsupportedColors(usize),

    #[error("hom(A, B) is empty; the arrow relation is only defined for embeddable A")]
    EmptyHom,

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("invalid cone: {0}")]
    InvalidCone(String),

    #[error("no compatible arrow pair exists for the sampled legs")]
    NoCompatiblePair,

    #[error("size bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
