//! Criterion benchmarks for the torelli workspace live in `benches/`.
