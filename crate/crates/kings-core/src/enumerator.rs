//! Materializes the boards behind the counts.
//!
//! A full 2m x 2n board is a stack of m strips where each consecutive pair
//! satisfies the subset and split-interval conditions. [`successors`] lists
//! the strips admissible below a given one; [`enumerate_boards`] walks the
//! stacks depth first and streams every valid assembly, in lexicographic
//! order of (top-set bit value, split) level by level from the top strip.
//! Streams are lazy so a consumer can stop after a few boards, but a full
//! enumeration is refused up front when the engine's count exceeds the
//! crate enumeration budget.

use crate::bounds::BoundsProfile;
use crate::engine::count_kings_rect;
use crate::error::Error;
use crate::oracle::BoardGrid;
use crate::strip::StripIndex;
use crate::DEFAULT_ENUMERATION_BUDGET;

use num_bigint::BigUint;

/// Every strip that stacks directly below `s`, ordered by (top-set bit
/// value, split).
pub fn successors(s: &StripIndex) -> Vec<StripIndex> {
    let n = s.n();
    let a = s.top_set();
    let mut out = Vec::new();
    let mut profile =
        BoundsProfile::new(a, a, n).expect("a valid strip index has a valid top set");
    for b in a.subsets() {
        profile
            .recompute(a, b)
            .expect("submask walk yields subsets");
        for i in profile.admissible(s.split()) {
            out.push(StripIndex::new(n, b, i).expect("bounds stay within 1..=n+1"));
        }
    }
    out
}

/// A stack of strips forming a valid 2m x 2n maximum arrangement, top
/// strip first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoardAssembly {
    n: usize,
    strips: Vec<StripIndex>,
}

impl BoardAssembly {
    /// Validates that consecutive strips may stack; `strips[0]` is the top
    /// of the board.
    pub fn new(strips: Vec<StripIndex>) -> Result<BoardAssembly, Error> {
        if strips.is_empty() {
            return Err(Error::ZeroSize);
        }
        let n = strips[0].n();
        for (level, pair) in strips.windows(2).enumerate() {
            let (upper, lower) = (&pair[0], &pair[1]);
            if lower.n() != n {
                return Err(Error::IncompatibleStrips {
                    upper_level: level + 1,
                });
            }
            let (a, b) = (upper.top_set(), lower.top_set());
            let stackable = b.is_subset_of(a) && {
                let profile = BoundsProfile::new(a, b, n)?;
                profile.admissible(upper.split()).contains(&lower.split())
            };
            if !stackable {
                return Err(Error::IncompatibleStrips {
                    upper_level: level + 1,
                });
            }
        }
        Ok(BoardAssembly { n, strips })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of strips, i.e. half the board height.
    pub fn m(&self) -> usize {
        self.strips.len()
    }

    /// Strips top to bottom.
    pub fn strips(&self) -> &[StripIndex] {
        &self.strips
    }

    /// The explicit 2m x 2n board: strip j (1-based from the top) occupies
    /// rows 2j-1 and 2j.
    pub fn render(&self) -> BoardGrid {
        let mut occupied = Vec::with_capacity(self.m() * self.n);
        for (level, strip) in self.strips.iter().enumerate() {
            for &(row, col) in strip.decode().kings() {
                occupied.push((row + 2 * level, col));
            }
        }
        BoardGrid::new(2 * self.n, 2 * self.m(), occupied)
            .expect("decoded strips stay within the board")
    }
}

/// Lazy depth-first stream over all m-strip assemblies.
#[derive(Debug)]
pub struct BoardAssemblies {
    m: usize,
    stack: Vec<std::vec::IntoIter<StripIndex>>,
    path: Vec<StripIndex>,
}

impl Iterator for BoardAssemblies {
    type Item = BoardAssembly;

    fn next(&mut self) -> Option<BoardAssembly> {
        loop {
            let top = self.stack.last_mut()?;
            if let Some(strip) = top.next() {
                self.path.push(strip);
                if self.path.len() == self.m {
                    let board = BoardAssembly {
                        n: self.path[0].n(),
                        strips: self.path.clone(),
                    };
                    self.path.pop();
                    return Some(board);
                }
                let below = successors(self.path.last().expect("path is nonempty"));
                self.stack.push(below.into_iter());
            } else {
                self.stack.pop();
                self.path.pop();
            }
        }
    }
}

/// Streams every maximum arrangement of a 2m x 2n board as strip stacks.
///
/// The engine count is consulted first: a request whose full stream would
/// exceed the enumeration budget is refused with that count, so callers
/// never start a walk they cannot finish.
pub fn enumerate_boards(n: usize, m: usize) -> Result<BoardAssemblies, Error> {
    if m == 0 {
        return Err(Error::ZeroSize);
    }
    if m > n {
        return Err(Error::HeightExceedsWidth { m, n });
    }
    let count = count_kings_rect(n, m)?.count;
    if count > BigUint::from(DEFAULT_ENUMERATION_BUDGET) {
        return Err(Error::EnumerationTooLarge {
            count,
            budget: DEFAULT_ENUMERATION_BUDGET,
        });
    }
    let all_strips: Vec<StripIndex> = StripIndex::all(n).collect();
    Ok(BoardAssemblies {
        m,
        stack: vec![all_strips.into_iter()],
        path: Vec::new(),
    })
}
