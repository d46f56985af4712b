//! Criterion benchmarks for `gini-core`; see `benches/`.
