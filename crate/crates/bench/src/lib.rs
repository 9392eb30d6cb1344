//! Criterion benchmarks for rwm-core; see `benches/`.
