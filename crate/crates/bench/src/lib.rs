//! Benchmarks for cliquetop live under `benches/`.
