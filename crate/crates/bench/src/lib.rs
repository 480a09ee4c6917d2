//! Benchmarks live in `benches/`; this crate only exists to host them.
