//! Benchmark crate; see `benches/verdicts.rs`.
