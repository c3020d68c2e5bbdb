//! Criterion benchmarks for field arithmetic and permutation tests; see `benches/`.
