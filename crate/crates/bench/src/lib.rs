//! Criterion benchmarks for the primavoid kernels; see `benches/kernels.rs`.
