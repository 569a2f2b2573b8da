//! Criterion benchmarks for the operator engine; see `benches/`.
