//! Exact computational kernel for stratified (Carnot) Lie algebras and the
//! Martinet geodesic flow.
//!
//! The crate has two halves that share no state:
//!
//! * an exact half (`rational`, `algebra`, `subspace`, `quotient`, `goh`)
//!   doing arbitrary-precision rational linear algebra over structure
//!   constants: validation of stratified algebras, graded ideals and
//!   quotients, the Engel/Martinet quotient criterion with constructive
//!   certificates, factorization towers, and Goh/generalized-Legendre
//!   checks for constant controls;
//! * a floating-point half (`elliptic`, `martinet`, `mcp`) implementing
//!   Jacobi elliptic functions via the arithmetic-geometric mean, the
//!   closed-form Martinet geodesics, the reduced Jacobian with its cut and
//!   conjugate times, and the machinery certifying the failure of the
//!   measure contraction property MCP(0,N).
//!
//! The crate is `no_std` (it allocates, so `alloc` is required); all IO,
//! file formats and the CLI live in the companion crate `carnot-cli`.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod elliptic;
pub mod goh;
pub mod martinet;
pub mod mcp;
pub mod quotient;
pub mod rational;
pub mod subspace;

pub use algebra::{StratifiedAlgebra, ValidationReport};
pub use rational::{Rational, RationalMatrix};
pub use subspace::GradedSubspace;
