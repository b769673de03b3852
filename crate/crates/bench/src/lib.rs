//! Criterion benchmarks for `qwalk-core`; see `benches/walk.rs`.
