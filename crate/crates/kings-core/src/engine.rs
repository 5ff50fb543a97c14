//! The level recursion that makes the counts.
//!
//! Level ℓ assigns to every strip index (A, k) the number of valid boards
//! of ℓ strips whose top strip is (A, k). Level 1 is all ones; each later
//! level sums the previous one over the admissible lower strips:
//!
//! ```text
//! next[A][k] = Σ_{B ⊆ A} Σ_{i = lower(A,B,k)}^{upper(A,B,k)} prev[B][i]
//! ```
//!
//! and the count for a 2m x 2n board is the total of level m. Subsets B
//! descend by the decrement-and-mask walk, so a level touches Σ_A 2^|A| =
//! 3^n (A, B) pairs; per-row prefix sums over the previous level turn each
//! inner interval into one subtraction, for O(3^n · n) big-integer
//! operations per level. Only the previous and current levels are kept.
//!
//! Rows A are independent given read-only access to the previous level, so
//! a step may partition them across threads; every partition produces the
//! same cells. The mirror shortcut (computing the left half of the splits
//! and reflecting through row reversal) is gated off by default and tested
//! bit-identical against the plain path.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::bounds::BoundsProfile;
use crate::error::Error;
use crate::set::{SquareSet, MAX_HALF_WIDTH};

/// Default ceiling on the board half-width; 2^n (n+1) big integers per
/// level get expensive well before the u32 row masks run out.
pub const DEFAULT_MAX_N: usize = 20;

/// Knobs for one counting run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineOptions {
    /// Worker threads per step; 0 means one per available core.
    pub workers: usize,
    /// Compute only splits k ≤ ⌈(n+1)/2⌉ and reflect the rest. Off by
    /// default; results must match the plain path exactly.
    pub mirror: bool,
    /// Reject boards wider than 2·max_n columns.
    pub max_n: usize,
}

impl Default for EngineOptions {
    fn default() -> EngineOptions {
        EngineOptions {
            workers: 0,
            mirror: false,
            max_n: DEFAULT_MAX_N,
        }
    }
}

impl EngineOptions {
    fn resolved_workers(&self) -> usize {
        if self.workers > 0 {
            return self.workers;
        }
        std::thread::available_parallelism().map_or(1, |p| p.get())
    }
}

/// Work done by one step, for scaling measurements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StepStats {
    /// (A, B) subset pairs visited; 3^n on the plain path.
    pub pair_visits: u64,
    /// Interval sums evaluated; (n+1)·3^n on the plain path.
    pub range_sums: u64,
    pub elapsed: Duration,
}

/// One level of the recursion: a 2^n x (n+1) table of counts indexed by
/// (top set A, split k), rows ordered by the bit value of A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountMatrix {
    n: usize,
    level: usize,
    cells: Vec<BigUint>,
}

impl CountMatrix {
    /// The all-ones level-1 matrix: every strip alone is one valid board of
    /// one strip.
    pub fn ones(n: usize) -> Result<CountMatrix, Error> {
        CountMatrix::ones_with(n, &EngineOptions::default())
    }

    pub fn ones_with(n: usize, options: &EngineOptions) -> Result<CountMatrix, Error> {
        if n == 0 {
            return Err(Error::ZeroSize);
        }
        let ceiling = options.max_n.min(MAX_HALF_WIDTH);
        if n > ceiling {
            return Err(Error::SizeAboveCeiling { n, max: ceiling });
        }
        Ok(CountMatrix {
            n,
            level: 1,
            cells: vec![BigUint::one(); (1 << n) * (n + 1)],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// Count of level-deep boards topped by (a, k). Panics on an
    /// out-of-range index; this is an internal table, not an input surface.
    pub fn cell(&self, a: SquareSet, k: usize) -> &BigUint {
        assert!(k >= 1 && k <= self.n + 1, "split {k} out of range");
        let row = a.bits() as usize;
        assert!(row < 1 << self.n, "row set {a} out of range");
        &self.cells[row * (self.n + 1) + (k - 1)]
    }

    /// All splits for one top set, in split order.
    pub fn row(&self, a: SquareSet) -> &[BigUint] {
        let row = a.bits() as usize;
        assert!(row < 1 << self.n, "row set {a} out of range");
        &self.cells[row * (self.n + 1)..(row + 1) * (self.n + 1)]
    }

    /// Sum of every cell: the board count once the matrix is at the height
    /// being counted.
    pub fn total(&self) -> BigUint {
        self.cells.iter().sum()
    }

    pub fn step(&self) -> CountMatrix {
        self.step_with(&EngineOptions::default()).0
    }

    /// One level of the recursion, partitioned across worker threads.
    pub fn step_with(&self, options: &EngineOptions) -> (CountMatrix, StepStats) {
        let start = Instant::now();
        let n = self.n;
        let cols = n + 1;
        let rows = 1usize << n;

        // prefix[row][j] = Σ_{i ≤ j} prev[row][i], so an interval sum is one
        // subtraction: Σ_{i=p..q} = prefix[q] − prefix[p−1].
        let stride = cols + 1;
        let mut prefix = Vec::with_capacity(rows * stride);
        for row in 0..rows {
            let mut acc = BigUint::zero();
            prefix.push(BigUint::zero());
            for cell in &self.cells[row * cols..(row + 1) * cols] {
                acc += cell;
                prefix.push(acc.clone());
            }
        }

        // With the mirror shortcut only the left half of the splits is
        // summed; the right half is filled by reflection below.
        let col_limit = if options.mirror { cols.div_ceil(2) } else { cols };

        let workers = options.resolved_workers().clamp(1, rows);
        let rows_per = rows.div_ceil(workers);
        let mut out = vec![BigUint::zero(); rows * cols];
        let mut visit_parts: Vec<(u64, u64)> = Vec::new();

        let run = |chunk: &mut [BigUint], first_row: usize| -> (u64, u64) {
            let mut pair_visits = 0u64;
            let mut range_sums = 0u64;
            let mut profile = BoundsProfile::new(SquareSet::EMPTY, SquareSet::EMPTY, n)
                .expect("n was validated at construction");
            for (offset, row_cells) in chunk.chunks_mut(cols).enumerate() {
                let a = SquareSet::from_bits((first_row + offset) as u32);
                for b in a.subsets() {
                    profile
                        .recompute(a, b)
                        .expect("submask walk yields subsets of a valid row set");
                    pair_visits += 1;
                    let row_prefix = &prefix[b.bits() as usize * stride..][..stride];
                    for (k, out_cell) in row_cells.iter_mut().enumerate().take(col_limit) {
                        let lo = profile.lower(k + 1);
                        let hi = profile.upper(k + 1);
                        *out_cell += &row_prefix[hi] - &row_prefix[lo - 1];
                        range_sums += 1;
                    }
                }
            }
            (pair_visits, range_sums)
        };

        if workers == 1 {
            visit_parts.push(run(&mut out, 0));
        } else {
            std::thread::scope(|scope| {
                let mut handles = Vec::with_capacity(workers);
                for (block, chunk) in out.chunks_mut(rows_per * cols).enumerate() {
                    let run = &run;
                    let first_row = block * rows_per;
                    handles.push(scope.spawn(move || run(chunk, first_row)));
                }
                visit_parts = handles
                    .into_iter()
                    .map(|h| h.join().expect("step worker panicked"))
                    .collect();
            });
        }

        if options.mirror {
            // next[A][k] = next[ρ(A)][n+2−k] with ρ reversing square order;
            // every source split n+2−k lies in the computed left half.
            for row in 0..rows {
                let mirror_row = SquareSet::from_bits(row as u32).mirror(n).bits() as usize;
                for k in col_limit + 1..=cols {
                    let value = out[mirror_row * cols + (n + 2 - k - 1)].clone();
                    out[row * cols + (k - 1)] = value;
                }
            }
        }

        let stats = StepStats {
            pair_visits: visit_parts.iter().map(|p| p.0).sum(),
            range_sums: visit_parts.iter().map(|p| p.1).sum(),
            elapsed: start.elapsed(),
        };
        let next = CountMatrix {
            n,
            level: self.level + 1,
            cells: out,
        };
        (next, stats)
    }
}

/// One finished count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountResult {
    /// Board half-width: the board is 2m x 2n.
    pub n: usize,
    /// Board half-height, m ≤ n.
    pub m: usize,
    pub count: BigUint,
    /// Matrix levels materialized, always m.
    pub levels_computed: usize,
    pub elapsed: Duration,
}

/// Number of maximum arrangements on the square 2n x 2n board.
pub fn count_kings(n: usize) -> Result<CountResult, Error> {
    count_kings_rect_with(n, n, &EngineOptions::default())
}

/// Number of maximum arrangements on the 2m x 2n board, m ≤ n.
pub fn count_kings_rect(n: usize, m: usize) -> Result<CountResult, Error> {
    count_kings_rect_with(n, m, &EngineOptions::default())
}

pub fn count_kings_rect_with(
    n: usize,
    m: usize,
    options: &EngineOptions,
) -> Result<CountResult, Error> {
    if m == 0 {
        return Err(Error::ZeroSize);
    }
    if m > n {
        return Err(Error::HeightExceedsWidth { m, n });
    }
    let start = Instant::now();
    let mut matrix = CountMatrix::ones_with(n, options)?;
    for _ in 1..m {
        matrix = matrix.step_with(options).0;
    }
    Ok(CountResult {
        n,
        m,
        count: matrix.total(),
        levels_computed: m,
        elapsed: start.elapsed(),
    })
}

/// How `sequence` picks the board height for each width.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeightPolicy {
    /// 2n x 2n boards.
    Square,
    /// 2m x 2n boards at this fixed half-height; widths below it are
    /// skipped since the recursion requires m ≤ n.
    Fixed(usize),
}

/// Counts for n = 1..=max_n in order, each recomputed from scratch. On an
/// error the results so far are returned alongside it.
pub fn sequence(
    max_n: usize,
    policy: HeightPolicy,
    options: &EngineOptions,
) -> (Vec<CountResult>, Option<Error>) {
    let mut results = Vec::new();
    for n in 1..=max_n {
        let m = match policy {
            HeightPolicy::Square => n,
            HeightPolicy::Fixed(m) if m > n => continue,
            HeightPolicy::Fixed(m) => m,
        };
        match count_kings_rect_with(n, m, options) {
            Ok(result) => results.push(result),
            Err(err) => return (results, Some(err)),
        }
    }
    (results, None)
}

/// Identity string recorded next to cached counts; bump the crate version
/// to invalidate caches.
pub fn version() -> String {
    format!("kings-core-{}", env!("CARGO_PKG_VERSION"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{split_lower_bound, split_upper_bound};

    fn set(squares: &[usize], n: usize) -> SquareSet {
        SquareSet::from_squares(squares.iter().copied(), n).unwrap()
    }

    fn row_u32(matrix: &CountMatrix, a: SquareSet) -> Vec<u32> {
        matrix
            .row(a)
            .iter()
            .map(|c| u32::try_from(c).unwrap())
            .collect()
    }

    /// Same double sum with no prefix sums, scalar bounds, and every loop
    /// order reversed; any discrepancy with step() is an ordering or
    /// prefix-sum bug.
    fn permuted_naive_step(prev: &CountMatrix) -> Vec<BigUint> {
        let n = prev.n();
        let cols = n + 1;
        let rows = 1usize << n;
        let mut out = vec![BigUint::zero(); rows * cols];
        for a_bits in (0..rows).rev() {
            let a = SquareSet::from_bits(a_bits as u32);
            let subsets: Vec<SquareSet> = a.subsets().collect();
            for b in subsets.into_iter().rev() {
                for k in (1..=cols).rev() {
                    let p = split_lower_bound(a, b, k, n).unwrap();
                    let q = split_upper_bound(a, b, k, n).unwrap();
                    for i in (p..=q).rev() {
                        out[a_bits * cols + (k - 1)] += prev.cell(b, i);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn ones_shape_and_total() {
        let m1 = CountMatrix::ones(3).unwrap();
        assert_eq!(m1.level(), 1);
        assert_eq!(m1.n(), 3);
        for a_bits in 0..8u32 {
            for k in 1..=4 {
                assert!(m1.cell(SquareSet::from_bits(a_bits), k).is_one());
            }
        }
        assert_eq!(m1.total(), BigUint::from(32u32));
        assert_eq!(CountMatrix::ones(1).unwrap().total(), BigUint::from(4u32));
    }

    #[test]
    fn ones_rejects_out_of_domain_sizes() {
        assert_eq!(CountMatrix::ones(0).map(|_| ()), Err(Error::ZeroSize));
        let tight = EngineOptions {
            max_n: 4,
            ..EngineOptions::default()
        };
        assert_eq!(
            CountMatrix::ones_with(5, &tight).map(|_| ()),
            Err(Error::SizeAboveCeiling { n: 5, max: 4 })
        );
    }

    #[test]
    fn second_level_matches_reference_rows() {
        let m2 = CountMatrix::ones(3).unwrap().step();
        assert_eq!(m2.level(), 2);
        let expect: &[(&[usize], [u32; 4])] = &[
            (&[], [4, 4, 4, 4]),
            (&[1], [8, 8, 7, 7]),
            (&[2], [6, 8, 8, 6]),
            (&[1, 2], [16, 16, 16, 12]),
            (&[3], [7, 7, 8, 8]),
            (&[1, 3], [14, 14, 14, 14]),
            (&[2, 3], [12, 16, 16, 16]),
            (&[1, 2, 3], [32, 32, 32, 32]),
        ];
        for (squares, want) in expect {
            let a = set(squares, 3);
            assert_eq!(row_u32(&m2, a), *want, "row {a}");
        }
    }

    #[test]
    fn third_level_matches_reference_rows() {
        let m3 = CountMatrix::ones(3).unwrap().step().step();
        assert_eq!(m3.level(), 3);
        let expect: &[(&[usize], [u32; 4])] = &[
            (&[], [16, 16, 16, 16]),
            (&[1], [46, 46, 38, 38]),
            (&[2], [30, 44, 44, 30]),
            (&[1, 2], [134, 134, 134, 88]),
            (&[3], [38, 38, 46, 46]),
            (&[1, 3], [110, 110, 110, 110]),
            (&[2, 3], [88, 134, 134, 134]),
            (&[1, 2, 3], [408, 408, 408, 408]),
        ];
        for (squares, want) in expect {
            let a = set(squares, 3);
            assert_eq!(row_u32(&m3, a), *want, "row {a}");
        }
        assert_eq!(m3.total(), BigUint::from(3600u32));
    }

    #[test]
    fn square_counts() {
        assert_eq!(count_kings(1).unwrap().count, BigUint::from(4u32));
        assert_eq!(count_kings(2).unwrap().count, BigUint::from(79u32));
        assert_eq!(count_kings(3).unwrap().count, BigUint::from(3600u32));
    }

    #[test]
    fn larger_square_counts_pinned_from_profile_dynamic_program() {
        // Regression constants first derived by the independent row-profile
        // route (the in-crate oracle and a from-scratch replication of it).
        assert_eq!(count_kings(4).unwrap().count, BigUint::from(281_571u32));
        assert_eq!(count_kings(5).unwrap().count, BigUint::from(32_572_756u64));
        assert_eq!(
            count_kings(6).unwrap().count,
            BigUint::from(5_109_144_543u64)
        );
    }

    #[test]
    fn rectangle_counts() {
        assert_eq!(count_kings_rect(3, 1).unwrap().count, BigUint::from(32u32));
        assert_eq!(count_kings_rect(3, 2).unwrap().count, BigUint::from(408u32));
        assert_eq!(
            count_kings_rect(2, 2).unwrap().count,
            count_kings(2).unwrap().count
        );
        let res = count_kings_rect(4, 2).unwrap();
        assert_eq!((res.n, res.m, res.levels_computed), (4, 2, 2));
    }

    #[test]
    fn rectangle_rejects_bad_heights() {
        assert_eq!(
            count_kings_rect(3, 4).map(|_| ()),
            Err(Error::HeightExceedsWidth { m: 4, n: 3 })
        );
        assert_eq!(count_kings_rect(3, 0).map(|_| ()), Err(Error::ZeroSize));
    }

    #[test]
    fn sequence_square_and_fixed() {
        let opts = EngineOptions::default();
        let (results, err) = sequence(3, HeightPolicy::Square, &opts);
        assert!(err.is_none());
        let counts: Vec<u32> = results
            .iter()
            .map(|r| u32::try_from(&r.count).unwrap())
            .collect();
        assert_eq!(counts, [4, 79, 3600]);

        let (results, err) = sequence(3, HeightPolicy::Fixed(2), &opts);
        assert!(err.is_none());
        let pairs: Vec<(usize, usize, u32)> = results
            .iter()
            .map(|r| (r.n, r.m, u32::try_from(&r.count).unwrap()))
            .collect();
        assert_eq!(pairs, [(2, 2, 79), (3, 2, 408)]);
    }

    #[test]
    fn sequence_reports_partial_results_on_error() {
        let tight = EngineOptions {
            max_n: 2,
            ..EngineOptions::default()
        };
        let (results, err) = sequence(4, HeightPolicy::Square, &tight);
        assert_eq!(results.len(), 2);
        assert_eq!(err, Some(Error::SizeAboveCeiling { n: 3, max: 2 }));
    }

    #[test]
    fn step_matches_permuted_naive_recomputation() {
        for n in 1..=5 {
            let mut matrix = CountMatrix::ones(n).unwrap();
            for _ in 1..n.min(3) {
                let naive = permuted_naive_step(&matrix);
                let next = matrix.step();
                for (row, chunk) in naive.chunks(n + 1).enumerate() {
                    let a = SquareSet::from_bits(row as u32);
                    assert_eq!(next.row(a), chunk, "n={n} level={} row {a}", next.level());
                }
                matrix = next;
            }
        }
    }

    #[test]
    fn mirror_path_is_bit_identical() {
        let mirrored = EngineOptions {
            mirror: true,
            ..EngineOptions::default()
        };
        for n in 1..=6 {
            let mut plain = CountMatrix::ones(n).unwrap();
            let mut fast = CountMatrix::ones(n).unwrap();
            for _ in 1..=n {
                plain = plain.step();
                fast = fast.step_with(&mirrored).0;
                assert_eq!(plain, fast, "n={n} level={}", plain.level());
            }
        }
        assert_eq!(
            count_kings_rect_with(6, 6, &mirrored).unwrap().count,
            count_kings(6).unwrap().count
        );
    }

    #[test]
    fn worker_count_does_not_change_cells() {
        let m1 = CountMatrix::ones(5).unwrap();
        let mut by_workers = Vec::new();
        for workers in [1, 2, 3, 8] {
            let opts = EngineOptions {
                workers,
                ..EngineOptions::default()
            };
            by_workers.push(m1.step_with(&opts).0.step_with(&opts).0);
        }
        for later in &by_workers[1..] {
            assert_eq!(&by_workers[0], later);
        }
    }

    #[test]
    fn full_row_equals_previous_total_and_cells_grow() {
        for n in 1..=6 {
            let mut prev = CountMatrix::ones(n).unwrap();
            for _ in 1..=n {
                let next = prev.step();
                let full = SquareSet::full(n);
                for k in 1..=n + 1 {
                    assert_eq!(*next.cell(full, k), prev.total(), "n={n} k={k}");
                }
                for a_bits in 0..1u32 << n {
                    let a = SquareSet::from_bits(a_bits);
                    for k in 1..=n + 1 {
                        assert!(next.cell(a, k) >= prev.cell(a, k), "n={n} {a} k={k}");
                    }
                }
                prev = next;
            }
        }
    }

    #[test]
    fn mirror_symmetry_of_cells() {
        for n in 1..=6 {
            let mut matrix = CountMatrix::ones(n).unwrap();
            for _ in 1..=n {
                matrix = matrix.step();
                for a_bits in 0..1u32 << n {
                    let a = SquareSet::from_bits(a_bits);
                    let rho = a.mirror(n);
                    for k in 1..=n + 1 {
                        assert_eq!(
                            matrix.cell(a, k),
                            matrix.cell(rho, n + 2 - k),
                            "n={n} {a} k={k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn stats_count_the_submask_walk() {
        for n in 1..=6 {
            let (_, stats) = CountMatrix::ones(n)
                .unwrap()
                .step_with(&EngineOptions::default());
            assert_eq!(stats.pair_visits, 3u64.pow(n as u32));
            assert_eq!(stats.range_sums, 3u64.pow(n as u32) * (n as u64 + 1));
        }
    }

    #[test]
    fn version_names_the_crate() {
        assert!(version().starts_with("kings-core-"));
    }
}
