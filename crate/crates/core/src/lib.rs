//! Exact and certified-numeric building blocks for verifying an elementary
//! zero-repulsion ("Deuring phenomenon") bound: a hypothetical zero of
//! ζ(s) off the critical line forces an explicit lower bound on L(1,χ)
//! for real primitive characters χ.
//!
//! The crate is split along the two regimes the verification needs:
//!
//! * exact integer arithmetic — smallest-prime-factor sieves, multiplicative
//!   function tables, Dirichlet convolution, Kronecker symbols, character
//!   sums ([`sieve`], [`table`], [`kronecker`], [`quadchar`]);
//! * certified floating-point — compensated partial sums of Dirichlet
//!   series, Euler–Maclaurin zeta evaluation, Abel/Euler/Pólya–Vinogradov
//!   tail bounds, hyperbola-method main terms ([`sum`], [`zeta`],
//!   [`series`]), and the theorem-level checks built on top ([`verify`]).
//!
//! Everything is `no_std` + `alloc`; all floating-point transcendentals go
//! through `libm` so results are bit-identical across hosts and runs. IO,
//! CLI, and report serialization live in the companion `deuring-cli` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod hypothesis;
pub mod kronecker;
pub mod quadchar;
pub mod report;
pub mod series;
pub mod sieve;
pub mod sum;
pub mod table;
pub mod verify;
pub mod zeta;

pub use error::Error;
pub use hypothesis::{delta_of_gamma, BoundInputs, ZeroHypothesis};
pub use kronecker::{is_fundamental, kronecker};
pub use quadchar::{AbmFactorization, QuadraticCharacter};
pub use report::{CheckReport, CheckValue, Status};
pub use series::SumWithTail;
pub use sieve::SieveTable;
pub use table::FunctionTable;

/// A point s = σ + it; complex arithmetic is `num_complex` throughout.
pub type Complex = num_complex::Complex64;

pub type Result<T> = core::result::Result<T, Error>;
