//! Benchmark-only crate; see `benches/integrals.rs`.
