//! Nikiforov–Uvarov reduction of
//!
//! ```text
//! ψ'' + (τ̃/σ) ψ' + (σ̃/σ²) ψ = 0
//! ```
//!
//! Writing `ψ = φ y` with `φ'/φ = π/σ` turns the equation into
//! `σ y'' + τ y' + λ̄ y = 0` where
//!
//! ```text
//! π = (σ' − τ̃)/2 ± √(((σ' − τ̃)/2)² − σ̃ + kσ),   τ = τ̃ + 2π,   λ̄ = k + π'
//! ```
//!
//! and `k` is chosen so the radicand is the square of a polynomial.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::algebra::{integrate_log_derivative, Affine, AffinePoly, Poly, RatFunc, Rational, WeightExpr};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuProblem {
    pub tau_tilde: Poly,
    pub sigma: Poly,
    pub sigma_tilde: Poly,
}

impl NuProblem {
    pub fn new(tau_tilde: Poly, sigma: Poly, sigma_tilde: Poly) -> Result<Self> {
        if !tau_tilde.degree_at_most(1) {
            return Err(Error::InvalidInput("tauTilde must have degree at most 1".into()));
        }
        if !sigma.degree_at_most(2) || !sigma_tilde.degree_at_most(2) {
            return Err(Error::InvalidInput("sigma and sigmaTilde must have degree at most 2".into()));
        }
        if sigma.is_zero() {
            return Err(Error::InvalidInput("sigma is identically zero".into()));
        }
        Ok(NuProblem { tau_tilde, sigma, sigma_tilde })
    }

    /// `(σ' − τ̃)/2`.
    pub fn half_shift(&self) -> Poly {
        (&self.sigma.derivative() - &self.tau_tilde).scale(&Rational::new(1.into(), 2.into()))
    }

    /// Coefficients of `u(r; k) = ((σ' − τ̃)/2)² − σ̃ + kσ`, each affine in `k`.
    pub fn radicand(&self) -> AffinePoly {
        let h = self.half_shift();
        AffinePoly::new(&(&h * &h) - &self.sigma_tilde, self.sigma.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuReduction {
    pub k: Rational,
    pub pi: Poly,
    pub lambda_bar: Rational,
    /// `τ̃ + 2π`.
    pub tau: Poly,
    /// `None` when `π/σ` has irrational poles.
    pub phi: Option<WeightExpr>,
}

fn quadratic_rational_roots(c0: &Rational, c1: &Rational, c2: &Rational) -> Option<Vec<Rational>> {
    if c2.is_zero() {
        if c1.is_zero() {
            return if c0.is_zero() { None } else { Some(Vec::new()) };
        }
        return Some(vec![-c0 / c1]);
    }
    let two = Rational::from_integer(BigInt::from(2));
    let four = Rational::from_integer(BigInt::from(4));
    let disc = c1 * c1 - &four * c2 * c0;
    let Some(s) = crate::algebra::rational_sqrt(&disc) else {
        return Some(Vec::new());
    };
    let mut roots = vec![(-c1 - &s) / (&two * c2), (-c1 + &s) / (&two * c2)];
    roots.sort();
    roots.dedup();
    Some(roots)
}

/// All rational reductions `(k, π)` for which the radicand is a perfect square,
/// ordered by `k` and then by branch (`−` before `+`).
pub fn nu_find_k(problem: &NuProblem) -> Result<Vec<NuReduction>> {
    let u = problem.radicand();
    let (a0, b0) = (u.coeff(0).constant, u.coeff(0).param);
    let (a1, b1) = (u.coeff(1).constant, u.coeff(1).param);
    let (a2, b2) = (u.coeff(2).constant, u.coeff(2).param);
    let two = Rational::from_integer(BigInt::from(2));
    let four = Rational::from_integer(BigInt::from(4));

    // Discriminant of u in r as a polynomial in k.
    let c0 = &a1 * &a1 - &four * &a0 * &a2;
    let c1 = &two * &a1 * &b1 - &four * (&a0 * &b2 + &b0 * &a2);
    let c2 = &b1 * &b1 - &four * &b0 * &b2;

    let mut ks = match quadratic_rational_roots(&c0, &c1, &c2) {
        Some(ks) => ks,
        None => {
            // Discriminant vanishes for every k: try the k that kill a coefficient.
            let mut ks = Vec::new();
            for (a, b) in [(&a2, &b2), (&a1, &b1), (&a0, &b0)] {
                if !b.is_zero() {
                    ks.push(-a / b);
                }
            }
            ks
        }
    };
    ks.sort();
    ks.dedup();

    let h = problem.half_shift();
    let mut out = Vec::new();
    for k in ks {
        let uk = u.eval(&k);
        let Some(root) = uk.sqrt() else { continue };
        let branches = if root.is_zero() { vec![h.clone()] } else { vec![&h - &root, &h + &root] };
        for pi in branches {
            out.push(reduction(problem, k.clone(), pi));
        }
    }
    if out.is_empty() {
        return Err(Error::NoRationalReduction);
    }
    Ok(out)
}

fn reduction(problem: &NuProblem, k: Rational, pi: Poly) -> NuReduction {
    let lambda_bar = &k + pi.coeff(1);
    let tau = &problem.tau_tilde + &pi.scale(&Rational::from_integer(BigInt::from(2)));
    let phi = build_phi(&pi, &problem.sigma).ok();
    NuReduction { k, pi, lambda_bar, tau, phi }
}

/// `λ̄ₙ = −n τ' − n(n−1)/2 · σ''`.
pub fn nu_lambda_n(tau: &Poly, sigma: &Poly, n: u32) -> Rational {
    let zero = Rational::zero();
    let n = Rational::from_integer(BigInt::from(n));
    let tau_p = tau.derivative().eval(&zero);
    let sigma_pp = sigma.nth_derivative(2).eval(&zero);
    let one = Rational::from_integer(BigInt::from(1));
    let two = Rational::from_integer(BigInt::from(2));
    -(&n * tau_p) - &n * (&n - one) / two * sigma_pp
}

/// `φ` with `φ'/φ = π/σ`.
pub fn build_phi(pi: &Poly, sigma: &Poly) -> Result<WeightExpr> {
    let f = RatFunc::new(pi.clone(), sigma.clone())?;
    integrate_log_derivative(&f)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BranchSelector {
    /// The unique candidate with `τ' < 0`.
    #[default]
    BoundState,
    /// Position in the [`nu_find_k`] candidate list.
    Index(usize),
}

impl BranchSelector {
    pub fn select(self, candidates: Vec<NuReduction>) -> Result<NuReduction> {
        match self {
            BranchSelector::Index(i) => {
                let count = candidates.len();
                candidates.into_iter().nth(i).ok_or(Error::BranchOutOfRange { index: i, count })
            }
            BranchSelector::BoundState => {
                let mut neg: Vec<NuReduction> =
                    candidates.into_iter().filter(|c| c.tau.coeff(1).is_negative()).collect();
                match neg.len() {
                    1 => Ok(neg.pop().expect("one element")),
                    0 => Err(Error::NoRationalReduction),
                    m => Err(Error::AmbiguousBranch(m)),
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuSolution {
    /// `k + π'` of the selected reduction.
    pub lambda_bar: Rational,
    /// `λ̄ₙ` of the reduced `(τ, σ)`; a bound state requires equality with `lambda_bar`.
    pub lambda_bar_n: Rational,
    pub reduction: NuReduction,
}

impl NuSolution {
    pub fn is_consistent(&self) -> bool {
        self.lambda_bar == self.lambda_bar_n
    }
}

pub fn nu_solve(problem: &NuProblem, n: u32, selector: BranchSelector) -> Result<NuSolution> {
    let reduction = selector.select(nu_find_k(problem)?)?;
    let lambda_bar_n = nu_lambda_n(&reduction.tau, &problem.sigma, n);
    Ok(NuSolution { lambda_bar: reduction.lambda_bar.clone(), lambda_bar_n, reduction })
}

/// NU problem whose `σ̃` is affine in an energy-like parameter `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuFamily {
    pub tau_tilde: Poly,
    pub sigma: Poly,
    pub sigma_tilde: AffinePoly,
}

impl NuFamily {
    pub fn at(&self, e: &Rational) -> Result<NuProblem> {
        NuProblem::new(self.tau_tilde.clone(), self.sigma.clone(), self.sigma_tilde.eval(e))
    }
}

/// Finds `E` with `λ̄(E) = λ̄ₙ(E)`.
///
/// The mismatch `λ̄ − λ̄ₙ` is sampled at `E = 0, 1` and assumed affine; the
/// resulting `E` is then re-solved and checked exactly, so a non-affine
/// dependence is reported rather than returned.
pub fn nu_solve_energy(family: &NuFamily, n: u32, selector: BranchSelector) -> Result<(Rational, NuSolution)> {
    let mismatch = |e: &Rational| -> Result<Rational> {
        let s = nu_solve(&family.at(e)?, n, selector)?;
        Ok(&s.lambda_bar - &s.lambda_bar_n)
    };
    let e0 = Rational::zero();
    let e1 = Rational::from_integer(BigInt::from(1));
    let f0 = mismatch(&e0)?;
    let f1 = mismatch(&e1)?;
    let slope = &f1 - &f0;
    if slope.is_zero() {
        return Err(Error::DegenerateParameterMap(n));
    }
    let e = -f0 / slope;
    let sol = nu_solve(&family.at(&e)?, n, selector)?;
    if !sol.is_consistent() {
        return Err(Error::InvalidInput(format!(
            "energy dependence of the reduction is not affine (residual {} at E = {e})",
            &sol.lambda_bar - &sol.lambda_bar_n
        )));
    }
    Ok((e, sol))
}

/// `E`-affine harmonic oscillator `τ̃ = 0, σ = 1, σ̃ = 2E − r²`.
pub fn harmonic_oscillator() -> NuFamily {
    NuFamily {
        tau_tilde: Poly::zero(),
        sigma: Poly::one(),
        sigma_tilde: AffinePoly::new(Poly::from_ints(&[0, 0, -1]), Poly::from_ints(&[2])),
    }
}

/// Convenience for building `u(r;k)` coefficient views in tests and reports.
pub fn radicand_coefficients(problem: &NuProblem) -> [Affine; 3] {
    let u = problem.radicand();
    [u.coeff(0), u.coeff(1), u.coeff(2)]
}
