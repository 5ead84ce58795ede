//! Classical Bernstein and q-Bernstein-type polynomials.
//!
//! The crate covers:
//!
//! * q-calculus primitives ([`qnum`]): q-integers, Gaussian binomials and the
//!   generalized binomial coefficient with a complex upper argument.
//! * Classical sequences ([`special`]): second-kind Stirling numbers,
//!   higher-order Bernoulli polynomials and Hermite polynomials, each with an
//!   independent exact power-series oracle ([`series`]).
//! * The classical Bernstein basis and operator ([`bernstein`]).
//! * The q-Bernstein-type polynomials `Y_n(k; x; q) = C(n, k) [x]^k [1-x]^(n-k)`,
//!   their generating function `([x] t)^k / k! * exp([1-x] t)`, the identities
//!   relating them to Bernoulli, Stirling and Hermite polynomials, and the
//!   Phillips q-Bernstein operator ([`qbernstein`]).
//! * The interpolation function `S_q(z, k; x)` whose values at negative
//!   integers recover `Y` ([`interp`]).
//! * Sweep-style identity verification producing [`VerificationReport`]s
//!   ([`verify`]) and approximation-error studies ([`approx`]).

pub mod approx;
pub mod bernstein;
mod error;
pub mod interp;
pub mod qbernstein;
pub mod qnum;
pub mod report;
pub mod series;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use qnum::QParam;
pub use report::{Param, ResidualMode, Scalar, VerificationReport};
pub use special::SeriesTruncation;

/// `n!` as a float. Exact for `n <= 22`, overflows to infinity past 170.
pub(crate) fn factorial_f64(n: u32) -> f64 {
    (2..=n).fold(1.0, |acc, i| acc * f64::from(i))
}
