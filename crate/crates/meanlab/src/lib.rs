//! Numerical laboratory for inequalities between classical means.
//!
//! The crate verifies, to controlled floating-point tolerances, a family of
//! related facts about two-variable means and their matrix counterparts:
//!
//! * **Scalar chains** ([`chains`]): the six-term chain from the geometric to
//!   the arithmetic mean through the bridge, logarithmic, binomial, and Heron
//!   means; its m-fold refinements; an eleven-term multiplicative correction
//!   chain; and the ratio functions whose common extremum 2/3 makes the
//!   bridge exponent and Heron weight sharp.
//! * **Matrix means** ([`matrix`], [`means`]): spectral constructions lifting
//!   scalar means to positive semidefinite matrices, both as Loewner-ordered
//!   operator means of two matrices and as entrywise spectral multipliers
//!   acting on a third; a five-expression operator chain with a power-mean
//!   cap is checked in the Loewner order.
//! * **Norm inequalities** ([`norms`]): Hilbert-Schmidt chains and
//!   Ky Fan dominance checks that operationalize "for every unitarily
//!   invariant norm" through partial sums of singular values.
//! * **Kernel positivity** ([`kernel`]): a catalog of even functions built
//!   from ratios of means, Gram-matrix positivity verdicts on arbitrary point
//!   sets, and deterministic counterexample searches that reproduce the known
//!   boundary cases.
//!
//! Everything is driven by plain `f64` arithmetic with explicit tolerance
//! semantics; random instances are generated from per-trial seeded streams so
//! every suite is reproducible regardless of thread scheduling (see [`par`]
//! and [`rng`]).

pub mod chains;
pub mod error;
pub mod kernel;
pub mod matrix;
pub mod means;
pub mod norms;
pub mod par;
pub mod quad;
pub mod rng;
pub mod scalar;
pub mod suites;

pub use error::{Error, Result};
pub use matrix::{GeneralMatrix, PsdMatrix, SymMatrix};
pub use scalar::{MeanKind, ScalarPair};
