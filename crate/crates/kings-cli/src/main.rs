//! `kings`: exact counts of maximum nonattacking-kings arrangements on
//! even-sided chessboards, with a brute-force verifier, a strip-bounds
//! inspector, and an arrangement enumerator.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage error,
//! 3 resource refusal (size ceiling, oracle width, enumeration budget).

use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::exit;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use kings_core::{
    count_kings_rect_with, enumerate_boards, oracle_count, version, BoundsProfile, EngineOptions,
    Error, HeightPolicy, SquareSet,
};

#[derive(Parser)]
#[command(
    name = "kings",
    version,
    about = "Counts maximum arrangements of nonattacking kings on 2m x 2n chessboards"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count the maximum arrangements on one board
    Count(CountArgs),
    /// Counts for every half-width up to a maximum
    Table(TableArgs),
    /// Cross-check the recursion against the brute-force oracle
    Verify(VerifyArgs),
    /// Show the admissible split interval below one strip configuration
    Bounds(BoundsArgs),
    /// Stream explicit maximum arrangements
    Enumerate(EnumerateArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Args)]
struct EngineArgs {
    /// Worker threads per step; 0 means one per core. Overrides the
    /// KINGS_WORKERS environment variable.
    #[arg(long)]
    workers: Option<usize>,
    /// Compute half the splits per level and reflect the rest; results are
    /// identical, checked by the test suite
    #[arg(long)]
    mirror: bool,
}

#[derive(Args)]
struct CountArgs {
    /// Board half-width: the board is 2m x 2n columns wide
    #[arg(long)]
    n: usize,
    /// Board half-height; defaults to n (a square board)
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
    /// JSON-lines file of previously computed counts to reuse and extend
    #[arg(long)]
    cache: Option<PathBuf>,
    #[command(flatten)]
    engine: EngineArgs,
}

#[derive(Args)]
struct TableArgs {
    /// Largest half-width to count
    #[arg(long = "max-n")]
    max_n: usize,
    /// Fixed half-height for every row; defaults to square boards
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
    #[arg(long)]
    cache: Option<PathBuf>,
    #[command(flatten)]
    engine: EngineArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Check every 1 <= m <= n <= max-n; the oracle caps boards at 12
    /// columns, so max-n can reach 6
    #[arg(long = "max-n", default_value_t = 4)]
    max_n: usize,
}

#[derive(Args)]
struct BoundsArgs {
    /// Strip half-width
    #[arg(long)]
    n: usize,
    /// Upper strip's top-row squares, e.g. 1,2,5,7 (empty string for none)
    #[arg(long)]
    a: String,
    /// Lower strip's top-row squares; must be a subset of --a
    #[arg(long)]
    b: String,
    /// Upper strip's split index, 1..=n+1
    #[arg(long)]
    k: usize,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Board half-width
    #[arg(long)]
    n: usize,
    /// Board half-height; defaults to n
    #[arg(long)]
    m: Option<usize>,
    /// Print at most this many boards (the total line still reports all)
    #[arg(long)]
    limit: Option<usize>,
    /// plain prints K/. grids; json prints one [row, col] cell list per
    /// board
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
    /// Re-test every printed board against the independence predicate
    #[arg(long)]
    recheck: bool,
}

/// One computed count as it appears on stdout.
#[derive(Serialize)]
struct OutputRecord {
    n: usize,
    m: usize,
    count: String,
    elapsed_ms: u128,
    method: &'static str,
}

const CSV_HEADER: &str = "n,m,count,elapsed_ms";

impl OutputRecord {
    fn line(&self, format: Format) -> String {
        match format {
            Format::Plain => format!(
                "n={} m={} count={} elapsed_ms={} method={}",
                self.n, self.m, self.count, self.elapsed_ms, self.method
            ),
            Format::Json => serde_json::to_string(self).expect("record serializes"),
            Format::Csv => format!("{},{},{},{}", self.n, self.m, self.count, self.elapsed_ms),
        }
    }
}

enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(err: Error) -> CliError {
        CliError::Lib(err)
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Lib(
                Error::SizeAboveCeiling { .. }
                | Error::BoardTooWide { .. }
                | Error::EnumerationTooLarge { .. },
            ) => 3,
            CliError::Lib(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(msg) => msg.clone(),
            CliError::Lib(err) => err.to_string(),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Count(args) => cmd_count(args),
        Command::Table(args) => cmd_table(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Enumerate(args) => cmd_enumerate(args),
    };
    match outcome {
        Ok(code) => exit(code),
        Err(err) => {
            eprintln!("error: {}", err.message());
            exit(err.exit_code());
        }
    }
}

fn resolve_options(engine: &EngineArgs) -> Result<EngineOptions, CliError> {
    let workers = match engine.workers {
        Some(w) => w,
        None => match std::env::var("KINGS_WORKERS") {
            Ok(raw) => raw.trim().parse().map_err(|_| {
                CliError::Usage(format!("KINGS_WORKERS must be an integer, got {raw:?}"))
            })?,
            Err(_) => 0,
        },
    };
    Ok(EngineOptions {
        workers,
        mirror: engine.mirror,
        ..EngineOptions::default()
    })
}

/// Orders (n, m) as width and height, noting the swap when the request was
/// taller than wide.
fn oriented(n: usize, m: Option<usize>) -> (usize, usize) {
    let m = m.unwrap_or(n);
    if m > n {
        eprintln!(
            "note: half-height {m} exceeds half-width {n}; counting the rotated board (n={m}, m={n})"
        );
        (m, n)
    } else {
        (n, m)
    }
}

// --- cache ---------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct CacheRecord {
    engine: String,
    n: usize,
    m: usize,
    count: String,
}

/// Returns the cached count for (n, m) if a record from the current engine
/// version exists; records from other versions are ignored, never served.
fn cache_lookup(path: &Path, n: usize, m: usize) -> Option<String> {
    let body = std::fs::read_to_string(path).ok()?;
    let current = version();
    body.lines()
        .filter_map(|line| serde_json::from_str::<CacheRecord>(line).ok())
        .find(|rec| rec.engine == current && rec.n == n && rec.m == m)
        .map(|rec| rec.count)
}

fn cache_append(path: &Path, n: usize, m: usize, count: &str) -> Result<(), CliError> {
    let record = CacheRecord {
        engine: version(),
        n,
        m,
        count: count.to_owned(),
    };
    let line = serde_json::to_string(&record).expect("cache record serializes");
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|err| CliError::Usage(format!("cannot open cache {}: {err}", path.display())))?;
    writeln!(file, "{line}")
        .map_err(|err| CliError::Usage(format!("cannot write cache {}: {err}", path.display())))
}

/// Cache hit, or a fresh computation appended to the cache.
fn counted_record(
    n: usize,
    m: usize,
    options: &EngineOptions,
    cache: Option<&Path>,
) -> Result<OutputRecord, CliError> {
    if let Some(path) = cache {
        if let Some(count) = cache_lookup(path, n, m) {
            return Ok(OutputRecord {
                n,
                m,
                count,
                elapsed_ms: 0,
                method: "recursion",
            });
        }
    }
    let result = count_kings_rect_with(n, m, options)?;
    let count = result.count.to_string();
    if let Some(path) = cache {
        cache_append(path, n, m, &count)?;
    }
    Ok(OutputRecord {
        n,
        m,
        count,
        elapsed_ms: result.elapsed.as_millis(),
        method: "recursion",
    })
}

// --- subcommands ----------------------------------------------------------

fn cmd_count(args: CountArgs) -> Result<i32, CliError> {
    let options = resolve_options(&args.engine)?;
    let (n, m) = oriented(args.n, args.m);
    let record = counted_record(n, m, &options, args.cache.as_deref())?;
    if args.format == Format::Csv {
        println!("{CSV_HEADER}");
    }
    println!("{}", record.line(args.format));
    Ok(0)
}

fn cmd_table(args: TableArgs) -> Result<i32, CliError> {
    let options = resolve_options(&args.engine)?;
    if args.max_n == 0 {
        return Err(CliError::Usage("--max-n must be at least 1".into()));
    }
    let policy = match args.m {
        Some(0) => return Err(CliError::Usage("--m must be at least 1".into())),
        Some(m) => HeightPolicy::Fixed(m),
        None => HeightPolicy::Square,
    };

    // Rows are produced one by one so a ceiling error still leaves the
    // earlier rows on stdout; JSON buffers into a single array document.
    let mut json_rows = Vec::new();
    if args.format == Format::Csv {
        println!("{CSV_HEADER}");
    }
    let mut failure: Option<CliError> = None;
    for n in 1..=args.max_n {
        let m = match policy {
            HeightPolicy::Square => n,
            HeightPolicy::Fixed(m) if m > n => continue,
            HeightPolicy::Fixed(m) => m,
        };
        match counted_record(n, m, &options, args.cache.as_deref()) {
            Ok(record) => {
                if args.format == Format::Json {
                    json_rows.push(record);
                } else {
                    println!("{}", record.line(args.format));
                }
            }
            Err(err) => {
                failure = Some(err);
                break;
            }
        }
    }
    if args.format == Format::Json {
        let body = serde_json::to_string(&json_rows).expect("records serialize");
        println!("{body}");
    }
    match failure {
        Some(err) => Err(err),
        None => Ok(0),
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<i32, CliError> {
    if args.max_n == 0 {
        return Err(CliError::Usage("--max-n must be at least 1".into()));
    }
    let options = EngineOptions::default();
    let mut mismatches = 0usize;
    let mut pairs = 0usize;
    for n in 1..=args.max_n {
        for m in 1..=n {
            let fast = count_kings_rect_with(n, m, &options)?;
            let slow = oracle_count(2 * n, 2 * m)?;
            pairs += 1;
            if fast.count == slow.count {
                println!("PASS n={n} m={m} count={}", fast.count);
            } else {
                mismatches += 1;
                println!(
                    "FAIL n={n} m={m} recursion={} oracle={}",
                    fast.count, slow.count
                );
            }
        }
    }
    if mismatches == 0 {
        println!("all {pairs} pairs match");
        Ok(0)
    } else {
        println!("{mismatches} of {pairs} pairs mismatch");
        Ok(1)
    }
}

fn cmd_bounds(args: BoundsArgs) -> Result<i32, CliError> {
    let parse_set = |label: &str, text: &str| -> Result<SquareSet, CliError> {
        let set: SquareSet = text
            .parse()
            .map_err(|err: Error| CliError::Usage(format!("--{label}: {err}")))?;
        set.validate_within(args.n)
            .map_err(|err| CliError::Usage(format!("--{label}: {err}")))?;
        Ok(set)
    };
    let a = parse_set("a", &args.a)?;
    let b = parse_set("b", &args.b)?;
    let profile = BoundsProfile::new(a, b, args.n)?;
    if args.k < 1 || args.k > args.n + 1 {
        return Err(CliError::Lib(Error::SplitOutOfRange {
            split: args.k,
            n: args.n,
        }));
    }
    println!("p = {}", profile.lower(args.k));
    println!("q = {}", profile.upper(args.k));
    println!(
        "admissible splits below (A={a}, k={}): {}..={}",
        args.k,
        profile.lower(args.k),
        profile.upper(args.k)
    );
    println!("{profile}");
    Ok(0)
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<i32, CliError> {
    if args.format == Format::Csv {
        return Err(CliError::Usage(
            "enumerate prints boards, not records; use --format plain or json".into(),
        ));
    }
    let (n, m) = oriented(args.n, args.m);
    let start = Instant::now();
    let mut printed = 0usize;
    let mut total = 0u64;
    let mut recheck_failures = 0usize;
    for assembly in enumerate_boards(n, m)? {
        total += 1;
        if args.limit.is_some_and(|limit| printed >= limit) {
            continue;
        }
        let board = assembly.render();
        if args.recheck && !(board.is_nonattacking() && board.king_count() == m * n) {
            recheck_failures += 1;
            eprintln!("recheck failed for board {total}:\n{}", board.render());
        }
        match args.format {
            Format::Plain => println!("{}", board.render()),
            Format::Json => {
                println!(
                    "{}",
                    serde_json::to_string(board.kings()).expect("cells serialize")
                );
            }
            Format::Csv => unreachable!("rejected above"),
        }
        printed += 1;
    }
    let elapsed_ms = start.elapsed().as_millis();
    match args.format {
        Format::Plain => println!("total {total} boards ({printed} printed, {elapsed_ms}ms)"),
        Format::Json => println!("{}", serde_json::json!({ "total": total.to_string() })),
        Format::Csv => unreachable!("rejected above"),
    }
    if recheck_failures > 0 {
        eprintln!("{recheck_failures} boards failed the independence recheck");
        return Ok(1);
    }
    Ok(0)
}
