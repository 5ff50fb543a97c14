//! Brute-force ground truth for maximum nonattacking-kings counts.
//!
//! The counter here shares nothing with the strip encoding: it works on raw
//! row occupancy bitmaps of a w x h board. A row pattern is valid when no
//! two set cells are horizontally adjacent, and two stacked rows are
//! compatible when neither has a set cell within one column of a set cell
//! of the other. A dynamic program over (pattern, kings placed so far)
//! strata reads off the maximum achievable king count and the exact number
//! of placements reaching it. [`oracle_enumerate`] replays the same search
//! as a depth-first stream of explicit boards.
//!
//! Widths are capped at [`DEFAULT_MAX_ORACLE_WIDTH`] columns; the pattern
//! table doubles per column and this path is meant for desk-scale
//! cross-checks, not production counting.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::DEFAULT_ENUMERATION_BUDGET;

/// Widest board the profile dynamic program accepts.
pub const DEFAULT_MAX_ORACLE_WIDTH: usize = 12;

/// Explicit occupancy of a w x h board; rows and columns are 1-indexed from
/// the top-left corner. `occupied` is kept sorted, so equal boards compare
/// equal structurally.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoardGrid {
    width: usize,
    height: usize,
    occupied: Vec<(usize, usize)>,
}

impl BoardGrid {
    pub fn new(
        width: usize,
        height: usize,
        mut occupied: Vec<(usize, usize)>,
    ) -> Result<BoardGrid, Error> {
        if width == 0 || height == 0 {
            return Err(Error::ZeroSize);
        }
        for &(row, col) in &occupied {
            if row < 1 || row > height || col < 1 || col > width {
                return Err(Error::CellOutOfRange { row, col });
            }
        }
        occupied.sort_unstable();
        occupied.dedup();
        Ok(BoardGrid {
            width,
            height,
            occupied,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Occupied cells in (row, column) order.
    pub fn kings(&self) -> &[(usize, usize)] {
        &self.occupied
    }

    pub fn king_count(&self) -> usize {
        self.occupied.len()
    }

    /// True when no two kings are within Chebyshev distance 1.
    pub fn is_nonattacking(&self) -> bool {
        for (idx, &(r1, c1)) in self.occupied.iter().enumerate() {
            for &(r2, c2) in &self.occupied[idx + 1..] {
                if r2 > r1 + 1 {
                    break;
                }
                if r1.abs_diff(r2) <= 1 && c1.abs_diff(c2) <= 1 {
                    return false;
                }
            }
        }
        true
    }

    /// Text picture, `K` for a king and `.` for an empty cell, one line per
    /// row, each line newline-terminated.
    pub fn render(&self) -> String {
        let mut out = String::with_capacity((self.width + 1) * self.height);
        let mut cells = self.occupied.iter().peekable();
        for row in 1..=self.height {
            for col in 1..=self.width {
                if cells.peek() == Some(&&(row, col)) {
                    cells.next();
                    out.push('K');
                } else {
                    out.push('.');
                }
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for BoardGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// What the dynamic program reports for one board.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    /// Largest number of mutually nonattacking kings the board holds.
    pub max_size: usize,
    /// Number of placements achieving `max_size`.
    pub count: BigUint,
}

fn check_dims(width: usize, height: usize) -> Result<(), Error> {
    if width == 0 || height == 0 {
        return Err(Error::ZeroSize);
    }
    if width > DEFAULT_MAX_ORACLE_WIDTH {
        return Err(Error::BoardTooWide {
            width,
            max: DEFAULT_MAX_ORACLE_WIDTH,
        });
    }
    Ok(())
}

/// All width-bit patterns with no two adjacent set bits, ascending.
fn row_patterns(width: usize) -> Vec<u32> {
    (0..1u32 << width).filter(|p| p & (p >> 1) == 0).collect()
}

/// Cells of `below` attacked from `above`: the row itself and its one-cell
/// horizontal shifts.
fn spread(pattern: u32) -> u32 {
    pattern | pattern << 1 | pattern >> 1
}

/// Exact maximum king count and number of maximum placements on a
/// width x height board.
pub fn oracle_count(width: usize, height: usize) -> Result<OracleResult, Error> {
    check_dims(width, height)?;
    let patterns = row_patterns(width);
    let per_row_max = width.div_ceil(2);
    let strata = per_row_max * height + 1;

    // counts[p][k] = number of ways to fill the rows processed so far with
    // pattern p in the last row and k kings in total.
    let mut counts = vec![vec![BigUint::zero(); strata]; patterns.len()];
    for (pi, &p) in patterns.iter().enumerate() {
        counts[pi][p.count_ones() as usize] = BigUint::one();
    }

    let compatible: Vec<Vec<usize>> = patterns
        .iter()
        .map(|&prev| {
            patterns
                .iter()
                .enumerate()
                .filter(|&(_, &p)| p & spread(prev) == 0)
                .map(|(pi, _)| pi)
                .collect()
        })
        .collect();

    for row in 2..=height {
        let reachable = per_row_max * (row - 1);
        let mut next = vec![vec![BigUint::zero(); strata]; patterns.len()];
        for (ci, row_counts) in counts.iter().enumerate() {
            for (k, ways) in row_counts.iter().enumerate().take(reachable + 1) {
                if ways.is_zero() {
                    continue;
                }
                for &pi in &compatible[ci] {
                    next[pi][k + patterns[pi].count_ones() as usize] += ways;
                }
            }
        }
        counts = next;
    }

    let max_size = (0..strata)
        .rev()
        .find(|&k| counts.iter().any(|row_counts| !row_counts[k].is_zero()))
        .expect("the empty placement always exists");
    let count = counts
        .iter()
        .map(|row_counts| &row_counts[max_size])
        .sum();
    Ok(OracleResult { max_size, count })
}

/// Maximum king count alone; always ⌈width/2⌉·⌈height/2⌉, but computed by
/// the dynamic program so tests can confirm that closed form.
pub fn oracle_max_size(width: usize, height: usize) -> Result<usize, Error> {
    Ok(oracle_count(width, height)?.max_size)
}

/// Lazy depth-first stream of every maximum placement.
///
/// Rows are chosen top to bottom in ascending pattern order; a branch is cut
/// as soon as the kings placed plus the per-row ceiling for the remaining
/// rows cannot reach the maximum, so every board that completes is maximum.
pub struct OracleBoards {
    width: usize,
    height: usize,
    target: usize,
    per_row_max: usize,
    patterns: Vec<u32>,
    stack: Vec<std::vec::IntoIter<u32>>,
    rows: Vec<u32>,
    kings: usize,
}

impl OracleBoards {
    fn candidates(&self) -> std::vec::IntoIter<u32> {
        let depth = self.rows.len();
        let blocked = self.rows.last().map_or(0, |&prev| spread(prev));
        let still_possible = self.per_row_max * (self.height - depth - 1);
        self.patterns
            .iter()
            .copied()
            .filter(|&p| p & blocked == 0)
            .filter(|&p| self.kings + p.count_ones() as usize + still_possible >= self.target)
            .collect::<Vec<u32>>()
            .into_iter()
    }

    fn grid(&self) -> BoardGrid {
        let mut occupied = Vec::with_capacity(self.target);
        for (row_idx, &pattern) in self.rows.iter().enumerate() {
            for col in 1..=self.width {
                if pattern >> (col - 1) & 1 == 1 {
                    occupied.push((row_idx + 1, col));
                }
            }
        }
        BoardGrid::new(self.width, self.height, occupied)
            .expect("search emits in-range cells only")
    }
}

impl Iterator for OracleBoards {
    type Item = BoardGrid;

    fn next(&mut self) -> Option<BoardGrid> {
        loop {
            let top = self.stack.last_mut()?;
            if let Some(pattern) = top.next() {
                self.rows.push(pattern);
                self.kings += pattern.count_ones() as usize;
                if self.rows.len() == self.height {
                    debug_assert_eq!(self.kings, self.target);
                    let board = self.grid();
                    let last = self.rows.pop().expect("just pushed");
                    self.kings -= last.count_ones() as usize;
                    return Some(board);
                }
                let next_row = self.candidates();
                self.stack.push(next_row);
            } else {
                self.stack.pop();
                if let Some(last) = self.rows.pop() {
                    self.kings -= last.count_ones() as usize;
                }
            }
        }
    }
}

/// Streams every maximum placement on a width x height board, refusing up
/// front when the count exceeds the enumeration budget.
pub fn oracle_enumerate(width: usize, height: usize) -> Result<OracleBoards, Error> {
    let result = oracle_count(width, height)?;
    if result.count > BigUint::from(DEFAULT_ENUMERATION_BUDGET) {
        return Err(Error::EnumerationTooLarge {
            count: result.count,
            budget: DEFAULT_ENUMERATION_BUDGET,
        });
    }
    let mut boards = OracleBoards {
        width,
        height,
        target: result.max_size,
        per_row_max: width.div_ceil(2),
        patterns: row_patterns(width),
        stack: Vec::with_capacity(height),
        rows: Vec::with_capacity(height),
        kings: 0,
    };
    let first = boards.candidates();
    boards.stack.push(first);
    Ok(boards)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counted(width: usize, height: usize) -> (usize, BigUint) {
        let r = oracle_count(width, height).unwrap();
        (r.max_size, r.count)
    }

    #[test]
    fn two_by_two_holds_one_king_four_ways() {
        assert_eq!(counted(2, 2), (1, BigUint::from(4u32)));
    }

    #[test]
    fn seven_by_seven_is_unique() {
        assert_eq!(counted(7, 7), (16, BigUint::one()));
    }

    #[test]
    fn six_by_six_reproduces_reference_count() {
        assert_eq!(counted(6, 6), (9, BigUint::from(3600u32)));
    }

    #[test]
    fn odd_boards_have_unique_maximum() {
        for s in [1usize, 3, 5, 7, 9] {
            let want = s.div_ceil(2) * s.div_ceil(2);
            assert_eq!(counted(s, s), (want, BigUint::one()), "board {s}x{s}");
        }
    }

    #[test]
    fn max_size_matches_closed_form() {
        for width in 1..=10 {
            for height in 1..=10 {
                assert_eq!(
                    oracle_max_size(width, height).unwrap(),
                    width.div_ceil(2) * height.div_ceil(2),
                    "board {width}x{height}"
                );
            }
        }
    }

    #[test]
    fn spot_max_sizes() {
        assert_eq!(oracle_max_size(8, 8).unwrap(), 16);
        assert_eq!(oracle_max_size(1, 1).unwrap(), 1);
        assert_eq!(oracle_max_size(5, 9).unwrap(), 15);
    }

    #[test]
    fn count_is_transpose_symmetric() {
        for width in 1..=6 {
            for height in 1..=6 {
                assert_eq!(
                    oracle_count(width, height).unwrap(),
                    oracle_count(height, width).unwrap(),
                    "board {width}x{height}"
                );
            }
        }
        assert_eq!(
            oracle_count(5, 9).unwrap(),
            oracle_count(9, 5).unwrap()
        );
    }

    #[test]
    fn rejects_zero_and_overwide_boards() {
        assert_eq!(oracle_count(0, 3), Err(Error::ZeroSize));
        assert_eq!(oracle_count(3, 0), Err(Error::ZeroSize));
        assert_eq!(
            oracle_count(13, 2),
            Err(Error::BoardTooWide { width: 13, max: 12 })
        );
        // Tall narrow boards are fine; only width hits the pattern table.
        assert!(oracle_count(2, 13).is_ok());
    }

    #[test]
    fn three_by_three_enumerates_the_corner_board() {
        let boards: Vec<BoardGrid> = oracle_enumerate(3, 3).unwrap().collect();
        assert_eq!(boards.len(), 1);
        assert_eq!(boards[0].kings(), &[(1, 1), (1, 3), (3, 1), (3, 3)]);
        assert_eq!(boards[0].render(), "K.K\n...\nK.K\n");
    }

    #[test]
    fn two_by_two_enumerates_four_boards() {
        let boards: Vec<BoardGrid> = oracle_enumerate(2, 2).unwrap().collect();
        assert_eq!(boards.len(), 4);
    }

    #[test]
    fn enumeration_agrees_with_count_and_is_valid() {
        for (width, height) in [(4, 4), (4, 6), (6, 6), (5, 5)] {
            let expect = oracle_count(width, height).unwrap();
            let mut seen = std::collections::HashSet::new();
            let mut total = 0u64;
            for board in oracle_enumerate(width, height).unwrap() {
                assert!(board.is_nonattacking());
                assert_eq!(board.king_count(), expect.max_size);
                assert!(seen.insert(board), "duplicate board");
                total += 1;
            }
            assert_eq!(BigUint::from(total), expect.count, "{width}x{height}");
        }
    }

    #[test]
    fn grid_rejects_out_of_range_cells() {
        assert_eq!(
            BoardGrid::new(3, 3, vec![(1, 4)]),
            Err(Error::CellOutOfRange { row: 1, col: 4 })
        );
        assert_eq!(
            BoardGrid::new(3, 3, vec![(0, 1)]),
            Err(Error::CellOutOfRange { row: 0, col: 1 })
        );
        assert_eq!(BoardGrid::new(0, 3, vec![]), Err(Error::ZeroSize));
    }

    #[test]
    fn attack_predicate() {
        let ok = BoardGrid::new(4, 4, vec![(1, 1), (1, 3), (3, 1)]).unwrap();
        assert!(ok.is_nonattacking());
        let diagonal = BoardGrid::new(4, 4, vec![(1, 1), (2, 2)]).unwrap();
        assert!(!diagonal.is_nonattacking());
        let vertical = BoardGrid::new(4, 4, vec![(1, 1), (2, 1)]).unwrap();
        assert!(!vertical.is_nonattacking());
    }
}
