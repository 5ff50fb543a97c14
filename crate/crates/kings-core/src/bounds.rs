//! Interval bounds on the split index of a strip stacked below another.
//!
//! For an upper strip `(A, k)` and a lower top set `B ⊆ A`, the lower
//! strips that stack without an attack are exactly `(B, i)` with
//! `lower <= i <= upper`. The two bound functions come from the two ways a
//! seam attack can happen between horizontally adjacent squares:
//!
//! * a pushed-right top king of the lower strip under a kept-left bottom
//!   king of the upper strip, which forces `i` past every square j with
//!   `j < k`, `j ∉ A`, `j-1 ∈ B`;
//! * a pushed-right bottom king of the upper strip over a kept-left top
//!   king of the lower strip, which caps `i` at the first square j with
//!   `j > k`, `j ∈ B`, `j-1 ∉ A`.
//!
//! `split_lower_bound` and `split_upper_bound` evaluate the definitions
//! literally; [`BoundsProfile`] computes both arrays over every k in one
//! linear scan per direction and is what the counting recursion uses. The
//! two routes are tested against each other and against the grid check
//! exhaustively.

use std::fmt;
use std::ops::RangeInclusive;

use crate::error::Error;
use crate::set::{SquareSet, MAX_HALF_WIDTH};

fn validate(a: SquareSet, b: SquareSet, n: usize) -> Result<(), Error> {
    if n == 0 {
        return Err(Error::ZeroSize);
    }
    if n > MAX_HALF_WIDTH {
        return Err(Error::SizeAboveCeiling { n, max: MAX_HALF_WIDTH });
    }
    a.validate_within(n)?;
    b.validate_within(n)?;
    if !b.is_subset_of(a) {
        return Err(Error::NotSubset { b, a });
    }
    Ok(())
}

/// Smallest admissible split for a strip with top set `b` below `(a, k)`:
/// `max({j in [n+1] : j < k, j ∉ a, j-1 ∈ b} ∪ {1})`, evaluated directly
/// from that definition.
pub fn split_lower_bound(a: SquareSet, b: SquareSet, k: usize, n: usize) -> Result<usize, Error> {
    validate(a, b, n)?;
    if k < 1 || k > n + 1 {
        return Err(Error::SplitOutOfRange { split: k, n });
    }
    Ok((1..=n + 1)
        .filter(|&j| j < k && !a.contains(j) && b.contains(j - 1))
        .max()
        .unwrap_or(1))
}

/// Largest admissible split for a strip with top set `b` below `(a, k)`:
/// `min({j in [n+1] : j > k, j ∈ b, j-1 ∉ a} ∪ {n+1})`, evaluated directly
/// from that definition.
pub fn split_upper_bound(a: SquareSet, b: SquareSet, k: usize, n: usize) -> Result<usize, Error> {
    validate(a, b, n)?;
    if k < 1 || k > n + 1 {
        return Err(Error::SplitOutOfRange { split: k, n });
    }
    Ok((1..=n + 1)
        .filter(|&j| j > k && b.contains(j) && !a.contains(j - 1))
        .min()
        .unwrap_or(n + 1))
}

/// Both bound arrays for a fixed `(a, b)` pair over every split k, built in
/// O(n) instead of the O(n^2) the scalar functions would cost per pair.
///
/// The trigger squares are read off two shifted bit-set intersections: one
/// running maximum scan over `!a & (b << 1)` gives the lower array, one
/// running minimum scan over `b & !(a << 1)` gives the upper array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsProfile {
    n: usize,
    a: SquareSet,
    b: SquareSet,
    lower: Vec<usize>,
    upper: Vec<usize>,
}

impl BoundsProfile {
    pub fn new(a: SquareSet, b: SquareSet, n: usize) -> Result<BoundsProfile, Error> {
        validate(a, b, n)?;
        let mut profile = BoundsProfile {
            n,
            a,
            b,
            lower: vec![0; n + 1],
            upper: vec![0; n + 1],
        };
        profile.fill();
        Ok(profile)
    }

    /// Reuses the allocated arrays for a new `(a, b)` pair; the recursion
    /// calls this once per pair per level.
    pub fn recompute(&mut self, a: SquareSet, b: SquareSet) -> Result<(), Error> {
        validate(a, b, self.n)?;
        self.a = a;
        self.b = b;
        self.fill();
        Ok(())
    }

    fn fill(&mut self) {
        let n = self.n;
        let a = self.a.bits();
        let b = self.b.bits();
        // Bit j-1 stands for index j; index n+1 is never in `a`, so the
        // complement is widened to n+1 bits before masking.
        let width_mask = (1u32 << (n + 1)) - 1;
        let lower_triggers = !a & (b << 1) & width_mask;
        let upper_triggers = b & !(a << 1);

        self.lower[0] = 1;
        for k in 2..=n + 1 {
            self.lower[k - 1] = if lower_triggers >> (k - 2) & 1 == 1 {
                k - 1
            } else {
                self.lower[k - 2]
            };
        }
        self.upper[n] = n + 1;
        for k in (1..=n).rev() {
            self.upper[k - 1] = if upper_triggers >> k & 1 == 1 {
                k + 1
            } else {
                self.upper[k]
            };
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> SquareSet {
        self.a
    }

    pub fn b(&self) -> SquareSet {
        self.b
    }

    /// Smallest admissible lower-strip split below `(a, k)`.
    pub fn lower(&self, k: usize) -> usize {
        self.lower[k - 1]
    }

    /// Largest admissible lower-strip split below `(a, k)`.
    pub fn upper(&self, k: usize) -> usize {
        self.upper[k - 1]
    }

    /// The admissible split interval below `(a, k)`; never empty, since it
    /// always contains k itself.
    pub fn admissible(&self, k: usize) -> RangeInclusive<usize> {
        self.lower(k)..=self.upper(k)
    }
}

impl fmt::Display for BoundsProfile {
    /// Two-row table of the bounds over every split, with a header row.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cell = |v: usize| format!("{v:>3}");
        write!(f, "k     |")?;
        for k in 1..=self.n + 1 {
            write!(f, "{}", cell(k))?;
        }
        write!(f, "\nlower |")?;
        for &p in &self.lower {
            write!(f, "{}", cell(p))?;
        }
        write!(f, "\nupper |")?;
        for &q in &self.upper {
            write!(f, "{}", cell(q))?;
        }
        Ok(())
    }
}
