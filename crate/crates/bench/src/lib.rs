//! Criterion benchmarks for the combinatorics engine; see `benches/`.
