//! Exact arithmetic for Weil heights over the rational function field k(t)
//! and its Kummer extensions k(t^{1/e}), together with the machinery that
//! turns a system of defining polynomials into a certified pair (C, Z):
//! a positive rational C and a constant-field variety Z such that every
//! point of the input variety lying off Z has height at least C.
//!
//! The crate is organized bottom-up:
//!
//! * [`constants`] — the constant field k (prime fields, explicit extensions,
//!   the rationals) with exact arithmetic and roots of unity,
//! * [`kpoly`] — dense univariate polynomials over k, with factorization,
//! * [`ratfunc`] — reduced fractions in k(T), places, valuations, supports,
//! * [`mpoly`] — sparse multivariate polynomials over k[T], gcds, resultants,
//! * [`heights`] — heights of elements and tuples, the twist T -> T^M, and
//!   Kummer minimal polynomials,
//! * [`bogomolov`] — the twist dichotomy and the recursive (C, Z) certificate,
//! * [`oracle`] — brute-force enumeration that cross-checks every certificate,
//! * [`report`] — the JSON report formats shared with the CLI,
//! * [`selftest`] — seeded invariant suites runnable from tests and the CLI.
//!
//! All arithmetic is exact; heights and bounds are `BigRational` and never
//! floats.

pub mod bogomolov;
pub mod constants;
pub mod error;
pub mod heights;
pub mod kpoly;
pub mod mpoly;
pub mod oracle;
pub mod parse;
pub mod ratfunc;
pub mod report;
pub mod selftest;

mod factor;

pub use error::{Error, Result};
