//! Benchmark-only crate; see `benches/quadratize.rs`.
