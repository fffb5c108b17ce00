use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected a token starting with 's', 'S' or 'r'")]
    UnknownGenerator,
    #[error("missing or malformed generator index")]
    BadIndex,
    #[error("generator index must be at least 1")]
    ZeroIndex,
    #[error("index {index} is out of range for {strands} strands")]
    IndexTooLarge { index: usize, strands: usize },
    #[error("exponent is not an integer")]
    BadExponent,
    #[error("a braid word needs at least 2 strands, got {0}")]
    TooFewStrands(usize),
}

/// A word that failed to parse. `position` is the 1-based token number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("token {position} `{token}`: {kind}")]
pub struct ParseError {
    pub position: usize,
    pub token: String,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("a braid word needs at least 2 strands, got {0}")]
    TooFewStrands(usize),
    #[error("generator index {index} is out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("strand counts differ: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },
    #[error("expected {expected} coordinates, got {got}")]
    CoordinateLength { expected: usize, got: usize },
    #[error("malformed coordinate `{0}`")]
    BadCoordinate(String),
    #[error("{0:?} is not a permutation")]
    NotAPermutation(Vec<usize>),
    #[error("the classical braid group has no letter {0}")]
    VirtualLetter(String),
    #[error("start vector must be (0,x,0,y) with x, y positive and distinct")]
    BadStartVector,
    #[error("invalid configuration: {0}")]
    Config(String),
}
