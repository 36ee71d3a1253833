//! Criterion benchmarks for the permanent, the amplitude methods and the zero scans; see `benches/`.
