use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error("rotation system is not planar: traced {faces} faces, Euler formula requires {expected}")]
    NotPlanar { faces: usize, expected: i64 },
    #[error("degenerate coordinates: neighbors {0} and {1} of vertex {2} lie in the same direction")]
    DegenerateCoordinates(usize, usize, usize),
    #[error("graph has no embedding (supply a rotation system or coordinates)")]
    MissingEmbedding,
    #[error("corrupted layering: {0}")]
    CorruptedLayering(String),
    #[error("embedding does not match layering: {0}")]
    EmbeddingMismatch(String),
    #[error("edges ({0}, {1}) and ({2}, {3}) interleave; the family is not laminar")]
    NotLaminar(usize, usize, usize, usize),
    #[error("vertex {0} has neither children nor an incident matching edge")]
    NoMatchingValue(usize),
    #[error("tree edge ({child}, {parent}) lands in group offset {offset}, outside [0, {max}]")]
    GroupWindow {
        child: usize,
        parent: usize,
        offset: String,
        max: usize,
    },
    #[error("invalid delta-matched instance: {0}")]
    InvalidInstance(String),
    #[error("edge ({0}, {1}) has no queue assignment")]
    UnassignedEdge(usize, usize),
    #[error("layout order is not a permutation of the vertex set: {0}")]
    NotPermutation(String),
    #[error("graph has {n} vertices; exact search is limited to {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("delta must be at least 3, got {0}")]
    InvalidDelta(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("subdivision record does not match layout: {0}")]
    RecordMismatch(String),
    #[error("bound overflows 128 bits for delta {0}")]
    BoundOverflow(usize),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
