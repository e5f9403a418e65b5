//! Criterion benchmarks for `dmod-core`; see `benches/algebra.rs`.
