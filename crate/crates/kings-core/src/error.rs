use std::fmt;

use num_bigint::BigUint;

use crate::set::SquareSet;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Board half-width `n` must be at least 1.
    ZeroSize,
    /// `n` is larger than the configured memory ceiling.
    SizeAboveCeiling { n: usize, max: usize },
    /// Split index outside `1..=n+1`.
    SplitOutOfRange { split: usize, n: usize },
    /// Square index outside `1..=n`.
    SquareOutOfRange { square: usize, n: usize },
    /// Could not parse a comma-separated square list.
    InvalidSquareList { text: String },
    /// The lower strip's top set must be contained in the upper strip's.
    NotSubset { b: SquareSet, a: SquareSet },
    /// Height parameter `m` exceeds the width parameter `n`.
    HeightExceedsWidth { m: usize, n: usize },
    /// A cell lies outside the board.
    CellOutOfRange { row: usize, col: usize },
    /// A 2x2 square of a strip must hold exactly one king.
    SquareKingCount { square: usize, count: usize },
    /// A right-column king appears left of a left-column king, so the
    /// strip cannot be independent.
    RightBeforeLeft { square: usize },
    /// Consecutive strips of an assembly attack across the seam.
    IncompatibleStrips { upper_level: usize },
    /// Board is wider than the brute-force oracle allows.
    BoardTooWide { width: usize, max: usize },
    /// A full enumeration would produce more boards than the budget allows.
    EnumerationTooLarge { count: BigUint, budget: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroSize => write!(f, "board half-width n must be at least 1"),
            Error::SizeAboveCeiling { n, max } => {
                write!(f, "n = {n} exceeds the configured ceiling of {max}")
            }
            Error::SplitOutOfRange { split, n } => {
                write!(f, "split index {split} outside 1..={}", n + 1)
            }
            Error::SquareOutOfRange { square, n } => {
                write!(f, "square {square} outside 1..={n}")
            }
            Error::InvalidSquareList { text } => {
                write!(f, "cannot parse {text:?} as a comma-separated square list")
            }
            Error::NotSubset { b, a } => {
                write!(f, "{b} is not a subset of {a}: no strip with that top set stacks below")
            }
            Error::HeightExceedsWidth { m, n } => {
                write!(f, "height parameter m = {m} exceeds n = {n}; swap the arguments to count the transposed board")
            }
            Error::CellOutOfRange { row, col } => {
                write!(f, "cell ({row}, {col}) lies outside the board")
            }
            Error::SquareKingCount { square, count } => {
                write!(f, "square {square} holds {count} kings, expected exactly 1")
            }
            Error::RightBeforeLeft { square } => {
                write!(f, "left-column king in square {square} follows a right-column king; the pair would attack")
            }
            Error::IncompatibleStrips { upper_level } => {
                write!(f, "strips {} and {} attack across their seam", upper_level, upper_level + 1)
            }
            Error::BoardTooWide { width, max } => {
                write!(f, "board width {width} exceeds the oracle limit of {max} columns")
            }
            Error::EnumerationTooLarge { count, budget } => {
                write!(f, "enumerating {count} boards exceeds the budget of {budget}")
            }
        }
    }
}

impl std::error::Error for Error {}
