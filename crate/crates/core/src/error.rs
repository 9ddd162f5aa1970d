use thiserror::Error;

use crate::board::{Color, Square};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoardError {
    #[error("expected {expected} fields, found {found}")]
    FieldCount { expected: usize, found: usize },
    #[error("malformed piece placement: {0}")]
    BadPlacement(String),
    #[error("illegal piece letter '{0}'")]
    BadPieceLetter(char),
    #[error("{0} king is missing")]
    MissingKing(Color),
    #[error("{0} has more than one king")]
    TooManyKings(Color),
    #[error("pawn on back rank at {0}")]
    PawnOnBackRank(Square),
    #[error("side to move must be 'w' or 'b', found '{0}'")]
    BadSideToMove(String),
    #[error("malformed castling field '{0}'")]
    BadCastling(String),
    #[error("malformed en passant field '{0}'")]
    BadEnPassantField(String),
    #[error("en passant square {0} is on the wrong rank")]
    BadEnPassant(Square),
    #[error("malformed move clock '{0}'")]
    BadClock(String),
    #[error("fullmove number must be at least 1")]
    BadFullmove,
    #[error("{0} is in check but it is not their move")]
    OpponentInCheck(Color),
    #[error("square {0} given two pieces")]
    SquareOccupiedTwice(Square),
    #[error("malformed EPD operation '{0}'")]
    BadEpdOperation(String),
    #[error("illegal move '{0}'")]
    IllegalMove(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EntropyError {
    #[error("probability {0} is outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error("probabilities sum to {0}, expected 1")]
    NotNormalized(f64),
    #[error("distribution is empty")]
    Empty,
    #[error("joint distribution rows have unequal lengths")]
    Ragged,
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("node count must be at least 1")]
    ZeroNodes,
    #[error("branching count must be at least 2, got {0}")]
    BranchingTooSmall(u32),
    #[error("negative entropy value {value} for '{key}'")]
    NegativeRate { key: String, value: f64 },
    #[error("reduction for '{key}' ({value}) exceeds the best gain ({best})")]
    ExceedsBestGain { key: String, value: f64, best: f64 },
    #[error("line {line}: {message}")]
    Config { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("invalid search parameter: {0}")]
    InvalidParams(String),
}

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("unknown position '{0}': not a registry id, FEN or EPD")]
    UnknownPosition(String),
    #[error("experiment has no rows")]
    NoRows,
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("invalid JSON config: {0}")]
    Json(String),
    #[error("registered position '{id}' failed certification: {reason}")]
    Uncertified { id: String, reason: String },
    #[error("rows out of order: expected id {expected}, found {found}")]
    OutOfOrder { expected: u32, found: u32 },
    #[error("CSV line {line}: {message}")]
    Csv { line: usize, message: String },
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Board(#[from] BoardError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
