use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("simplex {simplex:?} repeats vertex `{vertex}`")]
    RepeatedVertex { simplex: Vec<String>, vertex: String },
    #[error("empty simplex in input")]
    EmptySimplex,
    #[error("isolated vertex `{0}` (complex must have no isolated vertices)")]
    IsolatedVertex(String),
    #[error("complex is not a flag complex")]
    NotFlag,
    #[error("complex is not connected")]
    Disconnected,
    #[error("complex has dimension {found}, at most {max} supported here")]
    DimensionTooLarge { found: usize, max: usize },
    #[error("malformed polygonal complex: {0}")]
    MalformedPolygon(String),
    #[error("invalid directed loop: {0}")]
    InvalidLoop(String),
    #[error("height set must contain 0")]
    MissingZeroHeight,
    #[error("invalid voltage assignment: {0}")]
    InvalidVoltage(String),
    #[error("invalid simplicial map: {0}")]
    InvalidMap(String),
    #[error("invalid deck action: {0}")]
    InvalidDeckAction(String),
    #[error("cover is not certified simply connected: {0}")]
    CoverNotSimplyConnected(String),
    #[error("chain complex boundary maps do not compose to zero in degree {degree}")]
    BoundaryNotZero { degree: usize },
    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("letter {letter} out of range for {generators} generators")]
    LetterOutOfRange { letter: i32, generators: usize },
    #[error("group order {order} exceeds the configured bound {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("opposite pairing failed at vertex `{vertex}`: {candidates} candidate partners")]
    OppositePairing { vertex: String, candidates: usize },
    #[error("isomorphism search exhausted its budget of {0} nodes")]
    IsoBudget(u64),
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
