//! Criterion benchmarks for `rtt-verify-core`; see `benches/`.
