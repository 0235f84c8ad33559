//! Equations of hypergeometric type, `σ y'' + τ y' + γ y = 0` with
//! `deg τ ≤ 1` and `deg σ ≤ 2`, and the closed-form eigenvalue condition
//!
//! ```text
//! γₙ = −n τ' − n(n−1)/2 · σ''
//! ```
//!
//! which replaces running the asymptotic iteration to termination.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::aim::{AimProblem, Domain};
use crate::algebra::{Affine, AffinePoly, AffineRatFunc, Poly, Rational};
use crate::{Error, Result};

/// `σ y'' + τ(p) y' + γ(p) y = 0` with `τ` and `γ` affine in the parameter `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergeometricProblem {
    pub name: String,
    pub tau: AffinePoly,
    pub sigma: Poly,
    pub gamma: Affine,
    pub parameter_name: String,
    pub domain: Domain,
    pub eval_point: Rational,
}

/// Degree check: `τ` of degree at most one (for every parameter value), `σ` at most two.
pub fn validate(tau: &AffinePoly, sigma: &Poly) -> Result<()> {
    if tau.max_degree().is_some_and(|d| d > 1) {
        return Err(Error::NotHypergeometricType(format!("tau has degree {} > 1", tau.max_degree().unwrap_or(0))));
    }
    if !sigma.degree_at_most(2) {
        return Err(Error::NotHypergeometricType(format!("sigma has degree {} > 2", sigma.degree().unwrap_or(0))));
    }
    if sigma.is_zero() {
        return Err(Error::NotHypergeometricType("sigma is identically zero".into()));
    }
    Ok(())
}

impl HypergeometricProblem {
    pub fn new(
        name: impl Into<String>,
        tau: AffinePoly,
        sigma: Poly,
        gamma: Affine,
        parameter_name: impl Into<String>,
        domain: Domain,
        eval_point: Rational,
    ) -> Result<Self> {
        validate(&tau, &sigma)?;
        if !gamma.depends_on_param() && !tau.coeff(1).depends_on_param() {
            return Err(Error::NotHypergeometricType("neither gamma nor tau' depends on the parameter".into()));
        }
        Ok(HypergeometricProblem {
            name: name.into(),
            tau,
            sigma,
            gamma,
            parameter_name: parameter_name.into(),
            domain,
            eval_point,
        })
    }

    pub fn tau_at(&self, p: &Rational) -> Poly {
        self.tau.eval(p)
    }

    pub fn gamma_at(&self, p: &Rational) -> Rational {
        self.gamma.eval(p)
    }
}

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n(n−1)/2`, exact.
fn half_n_nm1(n: u32) -> Rational {
    let n = i64::from(n);
    q(n * (n - 1) / 2)
}

/// `γₙ = −n τ' − n(n−1)/2 · σ''` for numeric `τ`, `σ`.
pub fn gamma_n(tau: &Poly, sigma: &Poly, n: u32) -> Rational {
    let tau_prime = tau.coeff(1);
    let sigma_pp = sigma.coeff(2) * q(2);
    -(q(i64::from(n)) * tau_prime) - half_n_nm1(n) * sigma_pp
}

/// Solves `−n τ'(p) − n(n−1)/2 · σ'' = γ(p)` for the parameter value `pₙ`.
pub fn eigenvalue(problem: &HypergeometricProblem, n: u32) -> Result<Rational> {
    let t1 = problem.tau.coeff(1);
    let nn = q(i64::from(n));
    let sigma_pp = problem.sigma.coeff(2) * q(2);
    // (g₁ + n t₁₁) p = −n t₁₀ − n(n−1)/2 σ'' − g₀
    let coeff = &problem.gamma.param + &nn * &t1.param;
    if coeff.is_zero() {
        return Err(Error::DegenerateParameterMap(n));
    }
    let rhs = -(&nn * &t1.constant) - half_n_nm1(n) * sigma_pp - &problem.gamma.constant;
    Ok(rhs / coeff)
}

/// `λ₀ = −τ/σ`, `s₀ = −γ/σ`.
pub fn to_aim_form(problem: &HypergeometricProblem) -> Result<AimProblem> {
    let den = AffinePoly::from_poly(problem.sigma.clone());
    let minus_one = q(-1);
    let lambda0 = AffineRatFunc::new(problem.tau.scale(&minus_one), den.clone());
    let g = problem.gamma.scale(&minus_one);
    let s0 = AffineRatFunc::new(AffinePoly::new(Poly::constant(g.constant), Poly::constant(g.param)), den);
    AimProblem::new(lambda0, s0, problem.domain.clone(), problem.eval_point.clone(), problem.parameter_name.clone())
}
