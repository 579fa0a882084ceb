//! Renormalized higher powers of white noise: the RHPWN and w∞ Lie
//! algebras, vacuum-word reduction, Fock kernels, the n ≥ 3 no-go check and
//! the n = 2 quadratic-noise processes.

pub mod algebra;
pub mod error;
pub mod fock;
pub mod nogo;
pub mod number;
pub mod poly;
pub mod processes;
pub mod rewrite;
pub mod series;
pub mod step;
pub mod stirling;

pub use algebra::{commutator, involution, AlgebraElement, AlgebraTag, GeneratorIndex};
pub use error::{Error, Result};
pub use number::ComplexRational;
pub use poly::{ComplexMuPolynomial, MuPolynomial};
pub use rewrite::{
    kernel_bruteforce, kernel_recursion, reduce_truncated, reduce_untruncated, vacuum_expectation, IntervalFn,
    TestFunction, VacuumState, Word, WordFactor,
};
pub use step::{Piece, StepFunction};
