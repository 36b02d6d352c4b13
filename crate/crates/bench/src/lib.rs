//! Benchmark-only crate; see `benches/coverings.rs`.
