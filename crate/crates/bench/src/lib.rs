//! Benchmarks for the diagram calculus.
