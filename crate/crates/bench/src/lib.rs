//! Benchmarks of the framedconf engine; see `benches/engine.rs`.
