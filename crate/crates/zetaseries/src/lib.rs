//! Arbitrary-precision evaluation of ζ(2n+1), β(2n) and even-order Clausen
//! values through series over the even zeta numbers ζ(2k).
//!
//! The crate is organized in layers:
//!
//! * [`real`] and [`functions`]: a small fixed-point decimal kernel on top of
//!   `num-bigint` (π, ln, exp, sin, cos, sqrt at a chosen digit count).
//! * [`special`]: exact integer/rational sequences (Bernoulli, Euler,
//!   harmonic) and the classical closed forms for ζ(2n) and β(2n+1).
//! * [`engine`]: the rapidly converging master series
//!   `Σ_{k≥1} (2k−1)!/(2m+2k−1)! · ζ(2k) · x^{2k}` and the identity solves
//!   that extract ζ(2n+1), β(2n) and Cl_{2m}(θ) from it.
//! * [`oracle`]: independent brute-force evaluators (direct sums with
//!   Euler–Maclaurin tails, alternating-series acceleration, classical
//!   central-binomial series) used to validate the engine.
//! * [`analyzer`]: convergence-rate measurement and the predicted-vs-measured
//!   term-count comparison.
//!
//! The crate is `no_std` (with `alloc`); everything with an OS dependency
//! lives in the companion CLI crate.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod analyzer;
pub mod context;
pub mod engine;
pub mod error;
pub mod functions;
pub mod oracle;
pub mod real;
pub mod special;

pub use context::{EvalContext, Precision};
pub use error::Error;
pub use real::Real;

/// Exact rational numbers used by the integer-sequence layer.
pub type Rational = num_rational::BigRational;

/// Convenience alias for fallible operations in this crate.
pub type Result<T> = core::result::Result<T, Error>;
