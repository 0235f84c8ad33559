//! Exact-rational eigensolver for second-order linear ODEs of hypergeometric type.
//!
//! The crate covers three routes to the same spectrum:
//!
//! * [`aim`]: the asymptotic iteration recursion on `y'' = λ₀ y' + s₀ y`, with
//!   exact-sign bisection of the termination determinant `δₖ`.
//! * [`hypergeometric`]: the closed form `γₙ = −n τ' − n(n−1)/2 · σ''` for
//!   `σ y'' + τ y' + γ y = 0`, solved for an affine physical parameter.
//! * [`nu`]: the Nikiforov–Uvarov reduction of `ψ'' + (τ̃/σ) ψ' + (σ̃/σ²) ψ = 0`.
//!
//! Polynomial eigenfunctions come from [`eigenfunctions`] (coefficient
//! recursion, low-order explicit forms, Rodrigues formula, and the Hulthén
//! terminating `₂F₁`). [`catalog`] holds the built-in classical equations and
//! potentials, and [`verify`] runs the self-check suites used by the CLI.
//!
//! Every coefficient is an arbitrary-precision rational; no floating point
//! value ever enters [`algebra::Poly`] or [`algebra::RatFunc`].

pub mod aim;
pub mod algebra;
pub mod catalog;
pub mod eigenfunctions;
mod error;
pub mod exec;
pub mod hypergeometric;
pub mod nu;
pub mod verify;

pub use error::{Error, Result};
