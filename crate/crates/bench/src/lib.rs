//! Criterion benchmarks for the finfree kernels; see `benches/`.
