//! Criterion benchmarks for `qbern-core`; see `benches/`.
