//! Spectral toolkit for the periodic vorticity family
//! `m_t + u m_x + b u_x m = 0`, `m = Λ_μ^a u`.
//!
//! The crate is `no_std` (with `alloc`) and purely computational:
//!
//! - [`spectral`]: exact and floating trigonometric polynomials.
//! - [`operators`]: Fourier-multiplier inertia operators, the Christoffel
//!   operator and the family right-hand side.
//! - [`metricity`]: decision procedures for whether a given `(a, b)` admits
//!   a Riemannian (metric) realization as an Euler equation.
//! - [`flow`]: pseudo-spectral RK4 integration with conservation diagnostics.
//!
//! File formats and the command line live in the `vortmetric` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod flow;
pub mod metricity;
pub mod operators;
pub mod real;
pub mod spectral;

pub use operators::{Domain, EquationParams, FourierSymbol};
pub use real::{Rational, Real};
pub use spectral::{Scalar, TrigPoly};
