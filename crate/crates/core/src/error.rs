use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Problems with a graph description.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InputError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("edge references unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),
    #[error("parallel edge between `{0}` and `{1}`")]
    ParallelEdge(String, String),
    #[error("edge {{{u}, {v}}} has invalid label {label}: labels must be integers >= 2")]
    BadLabel { u: String, v: String, label: String },
    #[error("family part {0} is empty")]
    EmptyPart(usize),
    #[error("vertex `{0}` appears in more than one family part")]
    OverlappingParts(String),
    #[error("vertex `{0}` is not covered by the family")]
    UncoveredVertex(String),
    #[error("too many vertices: {0} (at most {max} supported)", max = crate::subset::MAX_VERTICES)]
    TooManyVertices(usize),
    #[error("empty vertex set")]
    NoVertices,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("`{0}` is not a vertex of an edge between distinct parts")]
    NotInterEdgeVertex(String),
    #[error("{{{0}, {1}}} is not an edge between distinct parts")]
    NotInterEdge(String, String),
    #[error("no exact word-problem engine for part {part}: {reason}")]
    UnsupportedPart { part: usize, reason: String },
    #[error("element cap {cap} exceeded after enumerating {partial} elements")]
    ResourceLimit { cap: usize, partial: usize },
    #[error("2-chain {0} has no recognized metric shape")]
    UnrecognizedSimplex(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
