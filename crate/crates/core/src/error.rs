use thiserror::Error;

/// Why an input file could not be read as a network or arc list.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed header {found:?}")]
    MalformedHeader { line: usize, found: String },
    #[error("expected {expected} data lines, found {found}")]
    WrongLineCount { expected: usize, found: usize },
    #[error("line {line}: token {token:?} is not a binary string of length {n}")]
    NonBinaryToken { line: usize, token: String, n: usize },
    #[error("line {line}: configuration {token} listed twice")]
    DuplicateIndex { line: usize, token: String },
    #[error("line {line}: expected two tokens")]
    MalformedLine { line: usize },
    #[error("dimension {0} outside 1..=24")]
    Dimension(usize),
}

/// A documented input requirement that the caller did not meet.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Precondition {
    #[error("dimension {got} is outside the supported range {min}..={max}")]
    Dimension { got: usize, min: usize, max: usize },
    #[error("the two networks have different dimensions ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("table has {got} entries, expected {expected}")]
    TableLength { got: usize, expected: usize },
    #[error("value {0} is not a configuration of the cube")]
    OutOfRange(u32),
    #[error("the set X is empty")]
    EmptySet,
    #[error("the set X is not a down set: {x} is in X but {below} is not")]
    NotDownSet { x: u32, below: u32 },
    #[error("f maps the complement of X onto itself")]
    ComplementClosed,
    #[error("the complement of X has {have} configurations of weight {weight}, needs at least {need}")]
    Census { weight: usize, have: usize, need: usize },
    #[error("the network has no fixed point")]
    NoFixedPoint,
    #[error("the network has a fixed point")]
    HasFixedPoint,
    #[error("the network is constant")]
    Constant,
    #[error("the network is the identity")]
    Identity,
    #[error("the network is not a permutation")]
    NotPermutation,
    #[error("the network is an involution without fixed points")]
    Involution,
    #[error("the network is one of the exceptional classes in dimension 4")]
    Exceptional,
    #[error("the mapping is not a bijection of the cube")]
    NotBijection,
    #[error("configuration {0} is not in the set")]
    NotMember(u32),
    #[error("arc {from}->{to} does not join configurations at Hamming distance one")]
    NotCubeArc { from: u32, to: u32 },
    #[error("digraph has {0} vertices, at most {1} supported")]
    TooManyVertices(usize, usize),
    #[error("cycle lengths excluded by the request cannot partition {0} configurations")]
    InfeasibleCycleLengths(usize),
    #[error("rejection sampling gave up after {0} attempts")]
    SamplingExhausted(usize),
    #[error("probability {0} is not in [0, 1]")]
    Probability(f64),
    #[error("{0}")]
    Other(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("precondition violated: {0}")]
    Precondition(#[from] Precondition),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::Precondition(_) => 3,
            Error::Verification(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn verification(msg: impl Into<String>) -> Error {
    Error::Verification(msg.into())
}
