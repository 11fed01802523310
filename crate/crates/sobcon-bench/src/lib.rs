//! Benchmark-only crate; the measurements live in `benches/engine.rs`.
