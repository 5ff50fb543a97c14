//! Exact counts of maximum nonattacking-kings arrangements on even-sided
//! chessboards.
//!
//! A 2m x 2n board holds at most mn mutually nonattacking kings. This crate
//! counts the arrangements that reach that maximum. The board is cut into m
//! horizontal strips of height 2; a maximum arrangement puts exactly one
//! king in each 2x2 square of each strip, so each strip is described by a
//! small index ([`StripIndex`]) and stacking two strips is admissible
//! exactly when the lower index lies in an interval computed from the upper
//! one ([`BoundsProfile`]). Counting then reduces to a vector recursion
//! over the 2^n (n+1) strip indices, carried out in [`engine`] with exact
//! big-integer arithmetic.
//!
//! Everything the recursion relies on is cross-checked by slower
//! independent routes: a row-by-row dynamic program over raw board bitmaps
//! ([`oracle`]), a direct grid collision check for strip stacking, and a
//! full enumerator that materializes every counted board ([`enumerator`]).

pub mod bounds;
pub mod engine;
pub mod enumerator;
pub mod error;
pub mod oracle;
pub mod set;
pub mod strip;

pub use bounds::{split_lower_bound, split_upper_bound, BoundsProfile};
pub use engine::{
    count_kings, count_kings_rect, count_kings_rect_with, sequence, version, CountMatrix,
    CountResult, EngineOptions, HeightPolicy, StepStats, DEFAULT_MAX_N,
};
pub use enumerator::{enumerate_boards, successors, BoardAssemblies, BoardAssembly};
pub use error::Error;
pub use oracle::{
    oracle_count, oracle_enumerate, oracle_max_size, BoardGrid, OracleBoards, OracleResult,
    DEFAULT_MAX_ORACLE_WIDTH,
};
pub use set::{SquareSet, MAX_HALF_WIDTH};
pub use strip::{compatible_by_grid, StripIndex, StripLayout};

/// Ceiling on how many boards any enumeration call may materialize.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1_000_000;

/// Shorthand used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
