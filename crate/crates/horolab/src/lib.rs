//! Numerical laboratory for joint equidistribution of low-lying horocycles.
//!
//! The crate builds the arithmetic objects behind shifted pairs of discrete
//! and continuous horocycles on the modular curve and measures, at desk
//! scale, the quantities that control their joint distribution:
//!
//! * the congruence lattice `{(n1, n2) : n1 + b*n2 = 0 mod q}` and its
//!   minimum `s(q; b)` ([`lattice`]),
//! * Hecke eigenvalue tables (Ramanujan tau, CM theta series, loaded Maass
//!   data) and automorphic test functions ([`coeffs`], [`testfuncs`]),
//! * Weyl sums over horocycle point sets and their continuous analogues
//!   ([`horocycle`], [`continuous`]),
//! * Kloosterman sums, shifted convolution sums and the lattice-form Weyl
//!   model with its diagonal term ([`expsums`]),
//! * Selberg-sieve counting functions and Sato-Tate partial sums
//!   ([`sieve`]),
//! * binary quadratic form class data and the CM construction audit
//!   ([`quadforms`]).
//!
//! The [`cli`] module exposes every experiment as a subcommand of the
//! `horolab` binary with CSV/JSON report output.

pub mod arith;
pub mod bessel;
pub mod chars;
pub mod cli;
pub mod coeffs;
pub mod continuous;
pub mod expsums;
pub mod halfplane;
pub mod horocycle;
pub mod lattice;
pub mod parallel;
pub mod quadforms;
pub mod sieve;
pub mod testfuncs;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A precondition on the mathematical domain was violated.
    #[error("domain error: {0}")]
    Domain(String),
    /// A coefficient table or series was too short for the request.
    #[error("truncation error: {0}")]
    Truncation(String),
    /// A quadrature rule was too coarse for the requested oscillation.
    #[error("resolution error: {0}")]
    Resolution(String),
    /// A floating-point consistency check failed.
    #[error("numerical failure: {0}")]
    Numerical(String),
    /// Malformed input data (coefficient files, config files).
    #[error("invalid data: {0}")]
    InvalidData(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
