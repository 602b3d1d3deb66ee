//! Criterion benchmarks for the coefficient functionals and sharpness search.
