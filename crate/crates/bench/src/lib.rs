//! Criterion benchmarks for the afmsync solvers; see `benches/`.
