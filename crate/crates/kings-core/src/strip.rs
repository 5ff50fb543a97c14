//! The strip encoding: every independent placement of n kings on a 2x2n
//! strip is named by a pair `(top_set, split)`.
//!
//! The strip is cut into n 2x2 squares, indexed 1..=n left to right. A
//! maximum placement puts exactly one king in each square, so a placement
//! is fixed by choosing top/bottom row and left/right column per square.
//! A right-column king directly followed by a left-column king always
//! attacks (adjacent columns, rows at most one apart), so the left-column
//! kings form a prefix of squares and the right-column kings the suffix.
//! The encoding records the top-row squares as `top_set` and the first
//! right-column square as `split`; `split = n+1` means all-left and
//! `split = 1` all-right. That yields exactly `2^n * (n+1)` strips.

use std::fmt;

use crate::error::Error;
use crate::set::{SquareSet, MAX_HALF_WIDTH};

/// Index of one independent n-king strip arrangement: a top-row square set
/// plus the leftmost right-column square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StripIndex {
    n: usize,
    top: SquareSet,
    split: usize,
}

impl StripIndex {
    /// Validates `top ⊆ {1..n}` and `1 <= split <= n+1`.
    pub fn new(n: usize, top: SquareSet, split: usize) -> Result<StripIndex, Error> {
        if n == 0 {
            return Err(Error::ZeroSize);
        }
        if n > MAX_HALF_WIDTH {
            return Err(Error::SizeAboveCeiling { n, max: MAX_HALF_WIDTH });
        }
        top.validate_within(n)?;
        if split < 1 || split > n + 1 {
            return Err(Error::SplitOutOfRange { split, n });
        }
        Ok(StripIndex { n, top, split })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Squares whose king sits in the strip's top row.
    pub fn top_set(&self) -> SquareSet {
        self.top
    }

    /// Index of the leftmost square with a right-column king; `n+1` if none.
    pub fn split(&self) -> usize {
        self.split
    }

    /// The king placement this index names. Square j gets its king at row 1
    /// if j is in the top set (else row 2), and at column 2j-1 left of the
    /// split (else column 2j).
    pub fn decode(&self) -> StripLayout {
        let kings = (1..=self.n)
            .map(|j| {
                let row = if self.top.contains(j) { 1 } else { 2 };
                let col = if j < self.split { 2 * j - 1 } else { 2 * j };
                (row, col)
            })
            .collect();
        StripLayout { n: self.n, kings }
    }

    /// Every strip index for half-width n, ascending by (top-set bits, split).
    pub fn all(n: usize) -> impl Iterator<Item = StripIndex> {
        assert!(n >= 1 && n <= MAX_HALF_WIDTH);
        (0..1u32 << n).flat_map(move |bits| {
            (1..=n + 1).map(move |split| StripIndex {
                n,
                top: SquareSet::from_bits(bits),
                split,
            })
        })
    }
}

impl fmt::Display for StripIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.top, self.split)
    }
}

/// An explicit king placement on a 2x2n strip, one king per square, kept
/// sorted by square index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StripLayout {
    n: usize,
    kings: Vec<(usize, usize)>,
}

impl StripLayout {
    /// Validates cell ranges and the one-king-per-square rule. Independence
    /// is not required here; `encode` rejects non-independent placements.
    pub fn new(n: usize, mut kings: Vec<(usize, usize)>) -> Result<StripLayout, Error> {
        if n == 0 {
            return Err(Error::ZeroSize);
        }
        for &(row, col) in &kings {
            if row < 1 || row > 2 || col < 1 || col > 2 * n {
                return Err(Error::CellOutOfRange { row, col });
            }
        }
        kings.sort_unstable_by_key(|&(_, col)| col);
        for j in 1..=n {
            let count = kings
                .iter()
                .filter(|&&(_, col)| (col + 1) / 2 == j)
                .count();
            if count != 1 {
                return Err(Error::SquareKingCount { square: j, count });
            }
        }
        Ok(StripLayout { n, kings })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Kings as (row, column) pairs, row 1 on top, sorted by square.
    pub fn kings(&self) -> &[(usize, usize)] {
        &self.kings
    }

    /// Recovers the index naming this placement. Fails with
    /// [`Error::RightBeforeLeft`] when a left-column king follows a
    /// right-column king, the one shape the encoding (rightly) cannot name.
    pub fn encode(&self) -> Result<StripIndex, Error> {
        let mut split = self.n + 1;
        let mut top_bits = 0u32;
        for (idx, &(row, col)) in self.kings.iter().enumerate() {
            let square = idx + 1;
            if row == 1 {
                top_bits |= 1 << (square - 1);
            }
            let right = col == 2 * square;
            if right && split > square {
                split = square;
            }
            if !right && split < square {
                return Err(Error::RightBeforeLeft { square });
            }
        }
        StripIndex::new(self.n, SquareSet::from_bits(top_bits), split)
    }

    /// True when no two kings sit within Chebyshev distance 1.
    pub fn is_independent(&self) -> bool {
        pairwise_independent(&self.kings)
    }

    /// Two-line `.`/`K` picture of the strip.
    pub fn render(&self) -> String {
        let mut rows = vec![vec!['.'; 2 * self.n]; 2];
        for &(row, col) in &self.kings {
            rows[row - 1][col - 1] = 'K';
        }
        let mut out = String::with_capacity(2 * (2 * self.n + 1));
        for row in rows {
            out.extend(row);
            out.push('\n');
        }
        out
    }
}

/// True when stacking `upper` directly above `lower` leaves every pair of
/// kings more than a king's move apart. This is the grid-level check the
/// interval bounds are tested against; it looks at actual cells and knows
/// nothing about the bound functions.
pub fn compatible_by_grid(upper: &StripIndex, lower: &StripIndex) -> bool {
    assert_eq!(upper.n(), lower.n(), "strips must share the same half-width");
    let top = upper.decode();
    let mut cells: Vec<(usize, usize)> = top.kings().to_vec();
    cells.extend(lower.decode().kings().iter().map(|&(r, c)| (r + 2, c)));
    pairwise_independent(&cells)
}

fn pairwise_independent(cells: &[(usize, usize)]) -> bool {
    for (i, &(r1, c1)) in cells.iter().enumerate() {
        for &(r2, c2) in &cells[i + 1..] {
            if r1.abs_diff(r2) <= 1 && c1.abs_diff(c2) <= 1 {
                return false;
            }
        }
    }
    true
}
