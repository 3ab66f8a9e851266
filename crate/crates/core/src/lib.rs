//! Exact Jacobi sums of orders `l`, `2l`, `l²` and `2l²` over finite fields,
//! and verification of their congruences modulo powers of `λ = 1 - ζ_{l²}`.
//!
//! The crate is organised bottom-up:
//!
//! - [`ff`]: prime and prime-power fields, generator choice, discrete index table.
//! - [`cyclo`]: exact arithmetic in `Z[ζ_{l²}]`, automorphisms, `λ`-adic valuation and digits.
//! - [`jacobi`]: character evaluation and Jacobi sums in both conventions.
//! - [`congruence`]: coefficient extraction, per-case right-hand sides, the
//!   order-`l²` and order-`2l²` verifiers, and the exact-identity suite.
//! - [`cli`]: the `cyclosum` command line.

pub mod cli;
pub mod congruence;
pub mod cyclo;
pub mod ff;
pub mod jacobi;

pub use congruence::{CongruenceReport, VerificationContext};
pub use cyclo::{CycInt, CycRing, Valuation};
pub use ff::{FieldElement, FieldSpec, IndexTable};
pub use jacobi::SumContext;
