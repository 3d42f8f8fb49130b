use thiserror::Error;

use crate::value::ExtValue;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse value `{0}`")]
    Parse(String),
    #[error("distance matrix has {rows} rows but {points} points")]
    NotSquare { rows: usize, points: usize },
    #[error("row for `{point}` has {len} entries, expected {expected}")]
    RaggedRow { point: String, len: usize, expected: usize },
    #[error("duplicate point identifier `{0}`")]
    DuplicatePoint(String),
    #[error("a space must have between 1 and 64 points, got {0}")]
    TooManyPoints(usize),
    #[error("q({point}, {point}) must be 0")]
    NonzeroDiagonal { point: String },
    #[error("triangle inequality fails: q({i}, {k}) > q({i}, {j}) + q({j}, {k})")]
    TriangleViolation { i: String, j: String, k: String },
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("subspace must be nonempty")]
    EmptySubspace,
    #[error("closure relation is not a preorder: {0}")]
    NotAPreorder(String),
    #[error("function is unbounded (takes the value inf)")]
    UnboundedInput,
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),
    #[error("set arguments must be nonempty")]
    EmptySet,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("sets are not {gamma}-separated (separation degree {degree})")]
    NotSeparated { gamma: ExtValue, degree: ExtValue },
    #[error("not a contractive scale: {0}")]
    InvalidScale(String),
    #[error("function is not a contraction into the Euclidean line")]
    NotContractive,
    #[error("lower bound is not upper regular")]
    NotUpperRegular,
    #[error("upper bound is not lower regular")]
    NotLowerRegular,
    #[error("lower bound exceeds upper bound at `{point}`")]
    NotOrdered { point: String },
    #[error("stage (m={m}, k={k}, n={n}) has no Urysohn function: {reason}")]
    StageSeparationFailure { m: u32, k: u32, n: u32, reason: String },
    #[error("Tong sandwich violated at `{point}`")]
    SandwichViolated { point: String },
    #[error("space is normal; no interpolation counterexample exists")]
    SpaceIsNormal,
    #[error("value at `{point}` exceeds the bound")]
    OutOfBound { point: String },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("instance has {size} points; the limit is {limit}")]
    InstanceTooLarge { size: usize, limit: usize },
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("bad catalog parameters: {0}")]
    BadParams(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("{0}")]
    Io(String),
    #[error("malformed JSON: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
