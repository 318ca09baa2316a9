//! Criterion benchmarks for `merodec`; see `benches/decoders.rs`.
