//! Sets of 2x2 square indices, stored as bit sets.
//!
//! A 2x2n strip splits into n squares indexed 1..=n left to right; square j
//! maps to bit j-1. Sets are the row labels of the counting recursion, so
//! they are kept small and cheap: a `u32` supports boards up to n = 30.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Hard cap on the half-width so every square fits a `u32` bit set.
pub const MAX_HALF_WIDTH: usize = 30;

/// A set of 2x2 square indices drawn from `{1..n}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareSet(u32);

impl SquareSet {
    /// The empty set.
    pub const EMPTY: SquareSet = SquareSet(0);

    /// The full set `{1..n}`.
    pub fn full(n: usize) -> SquareSet {
        debug_assert!(n <= MAX_HALF_WIDTH);
        SquareSet(((1u64 << n) - 1) as u32)
    }

    /// Builds a set from raw bits; bit j-1 stands for square j.
    pub fn from_bits(bits: u32) -> SquareSet {
        SquareSet(bits)
    }

    /// The raw bits; bit j-1 stands for square j.
    pub fn bits(self) -> u32 {
        self.0
    }

    /// Builds a set from square indices, rejecting any outside `1..=n`.
    pub fn from_squares<I>(squares: I, n: usize) -> Result<SquareSet, Error>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut bits = 0u32;
        for square in squares {
            if square < 1 || square > n || square > MAX_HALF_WIDTH {
                return Err(Error::SquareOutOfRange { square, n });
            }
            bits |= 1 << (square - 1);
        }
        Ok(SquareSet(bits))
    }

    /// Membership test; indices outside `1..=32` are never members.
    pub fn contains(self, square: usize) -> bool {
        (1..=32).contains(&square) && self.0 >> (square - 1) & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: SquareSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Errors on the first member outside `1..=n`.
    pub fn validate_within(self, n: usize) -> Result<(), Error> {
        match self.squares().find(|&s| s > n) {
            None => Ok(()),
            Some(square) => Err(Error::SquareOutOfRange { square, n }),
        }
    }

    /// The left-right reflection `{n+1-s : s in self}` on a width-n strip.
    pub fn mirror(self, n: usize) -> SquareSet {
        debug_assert!(n >= 1 && n <= MAX_HALF_WIDTH);
        debug_assert!(self.is_subset_of(SquareSet::full(n)));
        SquareSet(self.0.reverse_bits() >> (32 - n))
    }

    /// Member squares in ascending order.
    pub fn squares(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let square = bits.trailing_zeros() as usize + 1;
            bits &= bits - 1;
            Some(square)
        })
    }

    /// All subsets of this set, ascending by bit value.
    pub fn subsets(self) -> Subsets {
        Subsets { mask: self.0, cur: 0, done: false }
    }
}

/// Iterator over every subset of a fixed set, ascending by bit value.
pub struct Subsets {
    mask: u32,
    cur: u32,
    done: bool,
}

impl Iterator for Subsets {
    type Item = SquareSet;

    fn next(&mut self) -> Option<SquareSet> {
        if self.done {
            return None;
        }
        let cur = self.cur;
        if cur == self.mask {
            self.done = true;
        } else {
            // Carry-ripple submask step, ascending because we start at 0.
            self.cur = cur.wrapping_sub(self.mask) & self.mask;
        }
        Some(SquareSet(cur))
    }
}

impl fmt::Display for SquareSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, square) in self.squares().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{square}")?;
        }
        write!(f, "}}")
    }
}

// Debug mirrors Display; the set notation beats a raw bit pattern.
impl fmt::Debug for SquareSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for SquareSet {
    type Err = Error;

    /// Parses a comma-separated square list such as `1,2,5`; the empty
    /// string is the empty set. Range checks against a specific board are
    /// left to [`SquareSet::validate_within`].
    fn from_str(s: &str) -> Result<SquareSet, Error> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Ok(SquareSet::EMPTY);
        }
        let mut bits = 0u32;
        for part in trimmed.split(',') {
            let square: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::InvalidSquareList { text: s.to_string() })?;
            if square < 1 || square > MAX_HALF_WIDTH {
                return Err(Error::SquareOutOfRange { square, n: MAX_HALF_WIDTH });
            }
            bits |= 1 << (square - 1);
        }
        Ok(SquareSet(bits))
    }
}
