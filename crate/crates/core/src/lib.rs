//! Exact verification toolkit for tilings, weak tilings, and spectra of
//! finite unions of rational intervals on the real line.
//!
//! The crate has two arithmetic layers:
//!
//! * an exact layer ([`stepset`], [`analysis`], [`tiling`]) where every set
//!   operation, correlation, and covering sweep is rational arithmetic with
//!   no tolerances, and
//! * a certified floating-point layer ([`fourier`], [`spectra`]) that
//!   evaluates indicator Fourier transforms, encloses their zeros with
//!   argument-principle winding counts, and audits Jensen-formula zero
//!   counts; every numeric verdict carries an explicit error bound.
//!
//! Core types are generic over the rational scalar via [`scalar::Coord`];
//! the crate-root aliases fix the defaults used by the CLI and tests.

pub mod analysis;
pub mod fourier;
pub mod scalar;
pub mod stepset;
pub mod tiling;

pub use scalar::{Coord, Real};

/// Default exact scalar: arbitrary-precision rationals.
pub type Q = num_rational::BigRational;
/// Machine-word rational scalar for light workloads.
pub type Q64 = num_rational::Ratio<i64>;
/// Default floating-point scalar for transform evaluation.
pub type R = f64;

/// Step set over the default scalar.
pub type StepSetQ = stepset::StepSet<Q>;
/// Closed difference set over the default scalar.
pub type DiffSetQ = stepset::DiffSet<Q>;
/// Piecewise-linear function over the default scalar.
pub type ContPLQ = analysis::ContPL<Q>;
/// Piecewise-constant function over the default scalar.
pub type StepFnQ = analysis::StepFn<Q>;
/// Dirac comb over the default scalar.
pub type DiracCombQ = analysis::DiracComb<Q>;
