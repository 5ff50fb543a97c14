//! Benchmark-only crate; the measurements live in `benches/counting.rs`.
//! Run them with `cargo bench -p kings-bench`.
