//! Polynomial eigenfunctions of `σ y'' + τ y' + γₙ y = 0`, by coefficient
//! recursion, by the explicit low-order formulas, by the Rodrigues formula
//! and, for the Hulthén problem, as a terminating ₂F₁.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{integrate_log_derivative, AffinePoly, Poly, RatFunc, Rational, WeightExpr};
use crate::hypergeometric::{gamma_n, validate};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenPolynomial {
    pub n: u32,
    /// Monic, degree `n`.
    pub poly: Poly,
    pub gamma_used: Rational,
}

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `σ y'' + τ y' + γ y`.
pub fn ode_residual(tau: &Poly, sigma: &Poly, gamma: &Rational, y: &Poly) -> Poly {
    &(&(sigma * &y.nth_derivative(2)) + &(tau * &y.derivative())) + &y.scale(gamma)
}

/// Monic degree-`n` solution at `γ = γₙ`.
///
/// On the monomial basis the operator is upper triangular: the `rᵐ`
/// coefficient of the residual is
/// `d_m c_m + (m+1)(τ₀ + m σ₁) c_{m+1} + (m+2)(m+1) σ₀ c_{m+2}` with
/// `d_m = γₙ − γ_m`, so the coefficients follow by back substitution.
pub fn polynomial_solution(tau: &Poly, sigma: &Poly, n: u32) -> Result<EigenPolynomial> {
    validate(&AffinePoly::from_poly(tau.clone()), sigma)?;
    let gamma = gamma_n(tau, sigma, n);
    let (t0, s0, s1) = (tau.coeff(0), sigma.coeff(0), sigma.coeff(1));
    let nn = n as usize;
    let mut c = vec![Rational::zero(); nn + 3];
    c[nn] = Rational::one();
    for m in (0..nn).rev() {
        let d = &gamma - gamma_n(tau, sigma, m as u32);
        if d.is_zero() {
            return Err(Error::DegenerateSpectrum { n, m: m as u32 });
        }
        let mi = q(m as i64);
        let rhs = (&mi + q(1)) * (&t0 + &mi * &s1) * &c[m + 1] + (&mi + q(2)) * (&mi + q(1)) * &s0 * &c[m + 2];
        c[m] = -rhs / d;
    }
    c.truncate(nn + 1);
    let poly = Poly::from_coeffs(c);
    if !ode_residual(tau, sigma, &gamma, &poly).is_zero() {
        return Err(Error::InconsistentGamma(n));
    }
    Ok(EigenPolynomial { n, poly, gamma_used: gamma })
}

/// The explicit forms of `y₀ … y₃` in terms of `τ`, `σ` and their derivatives.
pub fn y_low_order(tau: &Poly, sigma: &Poly, n: u32) -> Result<Poly> {
    let t = tau;
    let s = sigma;
    let tp = tau.derivative();
    let sp = sigma.derivative();
    let spp = sigma.nth_derivative(2);
    let k = |c: i64| Poly::constant(q(c));
    Ok(match n {
        0 => Poly::one(),
        1 => t.clone(),
        2 => &(&(&(t * t) + &(t * &sp)) + &(&tp * s)) + &(s * &spp),
        3 => {
            let terms = [
                t * &(t * t),
                &k(3) * &(&(t * t) * &sp),
                &k(2) * &(&(t * &sp) * &sp),
                &k(3) * &(&(t * &tp) * s),
                &k(4) * &(&(&tp * s) * &sp),
                &k(5) * &(&(t * s) * &spp),
                &k(6) * &(&(s * &sp) * &spp),
            ];
            terms.iter().fold(Poly::zero(), |acc, p| &acc + p)
        }
        _ => return Err(Error::OutOfRange(format!("explicit formulas cover n <= 3, got {n}"))),
    })
}

/// `ρ` with `(σρ)' = τρ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PearsonWeight {
    pub weight: WeightExpr,
}

/// `(σρ)' − τρ`.
pub fn pearson_residual(tau: &Poly, sigma: &Poly, rho: &WeightExpr) -> Option<WeightExpr> {
    let lhs = rho.mul_ratfunc(&RatFunc::from_poly(sigma.clone())).derivative();
    let rhs = rho.mul_ratfunc(&RatFunc::from_poly(tau.clone()));
    lhs.checked_sub(&rhs)
}

pub fn pearson_weight(tau: &Poly, sigma: &Poly) -> Result<PearsonWeight> {
    let f = RatFunc::new(tau - &sigma.derivative(), sigma.clone())?;
    let weight = integrate_log_derivative(&f)?;
    match pearson_residual(tau, sigma, &weight) {
        Some(r) if r.is_zero() => Ok(PearsonWeight { weight }),
        _ => Err(Error::InvalidInput(format!("weight {weight} fails the Pearson identity"))),
    }
}

/// `(1/ρ) dⁿ/drⁿ [σⁿ ρ]`.
pub fn rodrigues(tau: &Poly, sigma: &Poly, n: u32) -> Result<Poly> {
    let rho = pearson_weight(tau, sigma)?.weight;
    let inner = rho.mul_ratfunc(&RatFunc::from_poly(sigma.pow(n)));
    let y = WeightExpr::ratio_to_poly(&inner.nth_derivative(n as usize), &rho)?;
    if y.degree() != Some(n as usize) {
        return Err(Error::NotPolynomial(format!("Rodrigues output {y} has degree {:?}, expected {n}", y.degree())));
    }
    Ok(y)
}

/// `(−1)ⁿ (2ε+1)ₙ ₂F₁(−n, 2ε+n+2; 2ε+1; qr)` as a polynomial in `r`.
pub fn hulthen_eigenfunction(n: u32, q_param: &Rational, epsilon: &Rational) -> Result<Poly> {
    let two_eps = epsilon * q(2);
    for m in 1..=i64::from(n) {
        if (&two_eps + q(m)).is_zero() {
            return Err(Error::PochhammerPole(epsilon.clone()));
        }
    }
    let n = i64::from(n);
    let sign = if n % 2 == 0 { q(1) } else { q(-1) };
    // (2ε+1)ₙ / (2ε+1)ⱼ = (2ε+1+j)_{n−j}; the j-th term carries
    // (−n)ⱼ (2ε+n+2)ⱼ / j! · qʲ on top of that.
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    let mut upper = Rational::one(); // (−n)ⱼ (2ε+n+2)ⱼ / j!
    let mut qj = Rational::one();
    for j in 0..=n {
        let mut tail = Rational::one();
        for i in j..n {
            tail *= &two_eps + q(1 + i);
        }
        coeffs.push(&sign * &tail * &upper * &qj);
        upper = upper * q(j - n) * (&two_eps + q(n + 2 + j)) / q(j + 1);
        qj *= q_param;
    }
    Ok(Poly::from_coeffs(coeffs))
}

/// `λ` with `a = λ b`, when both are nonzero and proportional.
pub fn scalar_ratio(a: &Poly, b: &Poly) -> Option<Rational> {
    if a.is_zero() || b.is_zero() || a.degree() != b.degree() {
        return None;
    }
    let lambda = a.leading()? / b.leading()?;
    (b.scale(&lambda) == *a).then_some(lambda)
}
