//! Criterion benchmarks for `exflex`; see `benches/analysis.rs`.
