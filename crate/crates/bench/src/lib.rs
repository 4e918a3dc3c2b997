//! Benchmark-only crate; see `benches/dilatation.rs`.
