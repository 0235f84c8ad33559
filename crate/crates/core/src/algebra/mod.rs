//! Exact-rational computer algebra in one variable `r`.
//!
//! [`Poly`] and [`RatFunc`] carry arbitrary-precision rational coefficients.
//! [`WeightExpr`] is the smallest class of expressions closed under
//! differentiation that covers every weight function used by the solver:
//! `P(r) · Π (r − cᵢ)^μᵢ · exp(N(r)/D(r))`.

mod affine;
mod partial;
mod poly;
mod ratfunc;
mod rational;
mod weight;

pub use affine::{Affine, AffinePoly, AffineRatFunc};
pub use partial::{partial_fractions, rational_roots, PartialFractionForm, PartialTerm};
pub(crate) use poly::rational_sqrt;
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use rational::{format_rational, parse_decimal, parse_rational, rat, rational_normalize, to_f64, Rational};
pub use weight::{integrate_log_derivative, WeightExpr};
