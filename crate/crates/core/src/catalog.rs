//! Built-in equations: the fourteen classical rows and the Morse, Hulthén and
//! Kratzer potentials, each as a [`HypergeometricProblem`] with `τ`, `γ`
//! affine in one eigen-parameter.
//!
//! Convention: the equation is `σ y'' + τ y' + γ y = 0`, so the AIM form is
//! `y'' = (−τ/σ) y' + (−γ/σ) y`. The classical table lists `−τ`, `σ` and
//! `−γ`; every entry below stores `τ` and `γ` themselves.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::aim::Domain;
use crate::algebra::{format_rational, Affine, AffinePoly, Poly, Rational};
use crate::hypergeometric::HypergeometricProblem;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    Any,
    NonZero,
    Positive,
    /// Strictly greater than `num/den`.
    Above(i64, i64),
}

impl Constraint {
    fn check(self, v: &Rational) -> bool {
        match self {
            Constraint::Any => true,
            Constraint::NonZero => !v.is_zero(),
            Constraint::Positive => v.is_positive(),
            Constraint::Above(n, d) => *v > q(n, d),
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Any => write!(f, "any"),
            Constraint::NonZero => write!(f, "!= 0"),
            Constraint::Positive => write!(f, "> 0"),
            Constraint::Above(n, d) => write!(f, "> {}", format_rational(&q(*n, *d))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamSpec {
    pub name: &'static str,
    pub default: (i64, i64),
    pub constraint: Constraint,
}

impl ParamSpec {
    pub fn default_value(&self) -> Rational {
        q(self.default.0, self.default.1)
    }
}

/// Resolved parameter values for one entry.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params(BTreeMap<String, Rational>);

impl Params {
    pub fn get(&self, name: &str) -> Rational {
        self.0.get(name).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Rational)> {
        self.0.iter()
    }
}

pub struct CatalogEntry {
    pub name: &'static str,
    pub title: &'static str,
    pub parameters: &'static [ParamSpec],
    /// Name of the eigen-parameter that `τ` and `γ` are affine in.
    pub eigen_parameter: &'static str,
    pub provenance: &'static str,
    build: fn(&Params) -> Parts,
    expected: fn(&Params, Rational) -> Rational,
}

impl fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CatalogEntry").field("name", &self.name).finish_non_exhaustive()
    }
}

/// What a builder hands back before validation.
struct Parts {
    tau: AffinePoly,
    sigma: Poly,
    gamma: Affine,
    domain: Domain,
    eval_point: Rational,
}

impl CatalogEntry {
    /// Defaults overlaid with `overrides`, each checked against its constraint.
    pub fn resolve(&self, overrides: &BTreeMap<String, Rational>) -> Result<Params> {
        for key in overrides.keys() {
            if !self.parameters.iter().any(|p| p.name == key) {
                return Err(Error::BadParameter(format!("{} has no parameter {key}", self.name)));
            }
        }
        let mut out = BTreeMap::new();
        for spec in self.parameters {
            let v = overrides.get(spec.name).cloned().unwrap_or_else(|| spec.default_value());
            if !spec.constraint.check(&v) {
                return Err(Error::BadParameter(format!(
                    "{} = {} violates {} {}",
                    spec.name,
                    format_rational(&v),
                    spec.name,
                    spec.constraint
                )));
            }
            out.insert(spec.name.to_string(), v);
        }
        Ok(Params(out))
    }

    pub fn problem(&self, params: &Params) -> Result<HypergeometricProblem> {
        let parts = (self.build)(params);
        HypergeometricProblem::new(
            self.name,
            parts.tau,
            parts.sigma,
            parts.gamma,
            self.eigen_parameter,
            parts.domain,
            parts.eval_point,
        )
    }

    pub fn expected(&self, params: &Params, n: u32) -> Rational {
        (self.expected)(params, q(i64::from(n), 1))
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn int(n: i64) -> Rational {
    q(n, 1)
}

/// `c₀ + c₁ r` from rationals.
fn lin(c0: Rational, c1: Rational) -> Poly {
    Poly::from_coeffs(vec![c0, c1])
}

fn fixed_tau(p: Poly) -> AffinePoly {
    AffinePoly::from_poly(p)
}

/// `γ = g · p`.
fn gamma_linear(g: Rational) -> Affine {
    Affine::new(Rational::zero(), g)
}

fn whole_line(eval_point: Rational) -> (Domain, Rational) {
    (Domain::real_line(), eval_point)
}

fn half_line(lo: Rational, eval_point: Rational) -> (Domain, Rational) {
    (Domain::new(Some(lo), None), eval_point)
}

fn interval(lo: Rational, hi: Rational, eval_point: Rational) -> (Domain, Rational) {
    (Domain::new(Some(lo), Some(hi)), eval_point)
}

fn unit_interval_sym() -> (Domain, Rational) {
    interval(int(-1), int(1), q(1, 2))
}

fn parts(tau: AffinePoly, sigma: Poly, gamma: Affine, (domain, eval_point): (Domain, Rational)) -> Parts {
    Parts { tau, sigma, gamma, domain, eval_point }
}

const fn param(name: &'static str, n: i64, d: i64, constraint: Constraint) -> ParamSpec {
    ParamSpec { name, default: (n, d), constraint }
}

fn n_times(n: &Rational, x: Rational) -> Rational {
    n * x
}

static ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "cauchy_euler",
        title: "Cauchy-Euler",
        parameters: &[
            param("alpha", 1, 3, Constraint::Any),
            param("a", 1, 2, Constraint::Any),
            param("b", 1, 5, Constraint::Any),
        ],
        eigen_parameter: "beta",
        provenance: "Classical table, Cauchy-Euler row: tau = -alpha(r-b), sigma = (r-a)^2, gamma = -beta. \
                     Distinct a and b are kept as printed; only the eigenvalue relation is tested.",
        build: |p| {
            let (alpha, a, b) = (p.get("alpha"), p.get("a"), p.get("b"));
            parts(
                fixed_tau(lin(&alpha * &b, -alpha.clone())),
                &Poly::linear_root(&a) * &Poly::linear_root(&a),
                gamma_linear(int(-1)),
                half_line(a.clone(), &a + int(1)),
            )
        },
        expected: |p, n| &n * (&n - int(1) - p.get("alpha")),
    },
    CatalogEntry {
        name: "hermite",
        title: "Hermite",
        parameters: &[],
        eigen_parameter: "k",
        provenance: "Classical table, Hermite (2a) row: tau = -2r, sigma = 1, gamma = 2k.",
        build: |_| parts(fixed_tau(lin(int(0), int(-2))), Poly::one(), gamma_linear(int(2)), whole_line(int(1))),
        expected: |_, n| n,
    },
    CatalogEntry {
        name: "hermite_b",
        title: "Hermite (general linear drift)",
        parameters: &[param("a", 2, 1, Constraint::NonZero), param("b", 1, 3, Constraint::Any)],
        eigen_parameter: "c",
        provenance: "Classical table, Hermite (2b) row: tau = -(ar+b), sigma = 1, gamma = -c.",
        build: |p| {
            parts(fixed_tau(lin(-p.get("b"), -p.get("a"))), Poly::one(), gamma_linear(int(-1)), whole_line(int(1)))
        },
        expected: |p, n| -n_times(&n, p.get("a")),
    },
    CatalogEntry {
        name: "laguerre",
        title: "Laguerre",
        parameters: &[],
        eigen_parameter: "a",
        provenance: "Classical table, Laguerre row: tau = 1-r, sigma = r, gamma = -a.",
        build: |_| {
            parts(
                fixed_tau(lin(int(1), int(-1))),
                lin(int(0), int(1)),
                gamma_linear(int(-1)),
                half_line(int(0), int(1)),
            )
        },
        expected: |_, n| -n,
    },
    CatalogEntry {
        name: "confluent",
        title: "Confluent hypergeometric",
        parameters: &[param("b", 3, 2, Constraint::NonZero), param("c", 1, 2, Constraint::Any)],
        eigen_parameter: "a",
        provenance: "Classical table, confluent (3) row: tau = c - br, sigma = r, gamma = -a.",
        build: |p| {
            parts(
                fixed_tau(lin(p.get("c"), -p.get("b"))),
                lin(int(0), int(1)),
                gamma_linear(int(-1)),
                half_line(int(0), int(1)),
            )
        },
        expected: |p, n| -n_times(&n, p.get("b")),
    },
    CatalogEntry {
        name: "hypergeometric",
        title: "Gauss hypergeometric",
        parameters: &[param("b", 1, 3, Constraint::Any), param("c", 1, 2, Constraint::Any)],
        eigen_parameter: "a",
        provenance: "Classical table, hypergeometric row: tau = c - (a+b+1)r, sigma = r(1-r), gamma = -ab, \
                     with a as the eigen-parameter and b held fixed (branch a = -n).",
        build: |p| {
            let b = p.get("b");
            parts(
                AffinePoly::new(lin(p.get("c"), -(&b + int(1))), lin(int(0), int(-1))),
                Poly::from_coeffs(vec![int(0), int(1), int(-1)]),
                gamma_linear(-b),
                interval(int(0), int(1), q(1, 2)),
            )
        },
        expected: |_, n| -n,
    },
    CatalogEntry {
        name: "legendre",
        title: "Legendre",
        parameters: &[],
        eigen_parameter: "lambda",
        provenance: "Classical table, Legendre row: tau = 2r, sigma = r^2-1, gamma = -lambda with \
                     lambda = m(m+1); the eigenvalue m = n becomes lambda = n(n+1).",
        build: |_| {
            parts(
                fixed_tau(lin(int(0), int(2))),
                Poly::from_ints(&[-1, 0, 1]),
                gamma_linear(int(-1)),
                unit_interval_sym(),
            )
        },
        expected: |_, n| &n * (&n + int(1)),
    },
    CatalogEntry {
        name: "jacobi",
        title: "Jacobi",
        parameters: &[param("alpha", 1, 1, Constraint::Above(-1, 1)), param("beta", 2, 1, Constraint::Above(-1, 1))],
        eigen_parameter: "gamma",
        provenance: "Classical table, Jacobi row: tau = -(alpha+beta+2)r - (beta+alpha), sigma = 1-r^2, \
                     gamma = gamma. The printed constant term beta+alpha is kept; it does not enter the \
                     eigenvalue relation.",
        build: |p| {
            let s = p.get("alpha") + p.get("beta");
            parts(
                fixed_tau(lin(-s.clone(), -(s + int(2)))),
                Poly::from_ints(&[1, 0, -1]),
                gamma_linear(int(1)),
                unit_interval_sym(),
            )
        },
        expected: |p, n| &n * (&n + p.get("alpha") + p.get("beta") + int(1)),
    },
    CatalogEntry {
        name: "chebyshev_a",
        title: "Chebyshev (first kind)",
        parameters: &[],
        eigen_parameter: "m",
        provenance: "Classical table, Chebyshev (4a) row: tau = -r, sigma = 1-r^2, gamma = m.",
        build: |_| {
            parts(
                fixed_tau(lin(int(0), int(-1))),
                Poly::from_ints(&[1, 0, -1]),
                gamma_linear(int(1)),
                unit_interval_sym(),
            )
        },
        expected: |_, n| &n * &n,
    },
    CatalogEntry {
        name: "chebyshev_b",
        title: "Chebyshev (second kind)",
        parameters: &[],
        eigen_parameter: "m",
        provenance: "Classical table, Chebyshev (4b) row: tau = -3r, sigma = 1-r^2, gamma = m.",
        build: |_| {
            parts(
                fixed_tau(lin(int(0), int(-3))),
                Poly::from_ints(&[1, 0, -1]),
                gamma_linear(int(1)),
                unit_interval_sym(),
            )
        },
        expected: |_, n| &n * (&n + int(2)),
    },
    CatalogEntry {
        name: "gegenbauer",
        title: "Gegenbauer",
        parameters: &[param("k", 3, 2, Constraint::Above(-1, 2))],
        eigen_parameter: "lambda",
        provenance: "Classical table, Gegenbauer row: tau = -(1+2k)r, sigma = 1-r^2, gamma = lambda.",
        build: |p| {
            parts(
                fixed_tau(lin(int(0), -(int(1) + int(2) * p.get("k")))),
                Poly::from_ints(&[1, 0, -1]),
                gamma_linear(int(1)),
                unit_interval_sym(),
            )
        },
        expected: |p, n| &n * (&n + int(2) * p.get("k")),
    },
    CatalogEntry {
        name: "hyperspherical",
        title: "Hyperspherical",
        parameters: &[param("k", 1, 3, Constraint::Above(-1, 1))],
        eigen_parameter: "lambda",
        provenance: "Classical table, hyperspherical row: tau = -2(1+k)r, sigma = 1-r^2, gamma = lambda.",
        build: |p| {
            parts(
                fixed_tau(lin(int(0), int(-2) * (int(1) + p.get("k")))),
                Poly::from_ints(&[1, 0, -1]),
                gamma_linear(int(1)),
                unit_interval_sym(),
            )
        },
        expected: |p, n| &n * (&n + int(1) + int(2) * p.get("k")),
    },
    CatalogEntry {
        name: "bessel",
        title: "Bessel polynomials",
        parameters: &[],
        eigen_parameter: "gamma",
        provenance: "Classical table, Bessel (5a) row: tau = 2(r+1), sigma = r^2, gamma = -gamma.",
        build: |_| {
            parts(
                fixed_tau(lin(int(2), int(2))),
                Poly::from_ints(&[0, 0, 1]),
                gamma_linear(int(-1)),
                half_line(int(0), int(1)),
            )
        },
        expected: |_, n| &n * (&n + int(1)),
    },
    CatalogEntry {
        name: "generalized_bessel",
        title: "Generalized Bessel polynomials",
        parameters: &[param("a", 3, 1, Constraint::Any), param("b", 2, 1, Constraint::NonZero)],
        eigen_parameter: "gamma",
        provenance: "Classical table, generalized Bessel (5b) row: tau = ar+b, sigma = r^2, gamma = -gamma.",
        build: |p| {
            parts(
                fixed_tau(lin(p.get("b"), p.get("a"))),
                Poly::from_ints(&[0, 0, 1]),
                gamma_linear(int(-1)),
                half_line(int(0), int(1)),
            )
        },
        expected: |p, n| &n * (&n + p.get("a") - int(1)),
    },
    CatalogEntry {
        name: "morse",
        title: "Morse potential",
        parameters: &[param("alpha", 1, 1, Constraint::NonZero), param("beta", 5, 2, Constraint::NonZero)],
        eigen_parameter: "epsilon",
        provenance: "Morse potential, transformed radial equation: tau = -2 beta r + 2 epsilon + alpha, \
                     sigma = alpha r, gamma = (2 beta^2 - alpha beta - 2 beta epsilon)/alpha.",
        build: |p| {
            let (alpha, beta) = (p.get("alpha"), p.get("beta"));
            parts(
                AffinePoly::new(lin(alpha.clone(), int(-2) * &beta), Poly::constant(int(2))),
                lin(int(0), alpha.clone()),
                Affine::new((int(2) * &beta * &beta - &alpha * &beta) / &alpha, int(-2) * &beta / &alpha),
                half_line(int(0), int(1)),
            )
        },
        expected: |p, n| p.get("beta") - (n + q(1, 2)) * p.get("alpha"),
    },
    CatalogEntry {
        name: "hulthen",
        title: "Deformed Hulthen potential",
        parameters: &[param("q", 1, 1, Constraint::Positive), param("beta2", 4, 1, Constraint::Any)],
        eigen_parameter: "epsilon",
        provenance: "Deformed Hulthen potential, transformed equation: tau = (1 + 2 epsilon) - (3 + 2 epsilon) q r, \
                     sigma = r(1 - qr), gamma = beta2 - q - 2 q epsilon. The table of coefficients prints \
                     sigma = -r(1 - qr); the sign is normalized to match the differential equation it is read from.",
        build: |p| {
            let (qq, b2) = (p.get("q"), p.get("beta2"));
            let hi = int(1) / &qq;
            parts(
                AffinePoly::new(lin(int(1), int(-3) * &qq), lin(int(2), int(-2) * &qq)),
                Poly::from_coeffs(vec![int(0), int(1), -qq.clone()]),
                Affine::new(&b2 - &qq, int(-2) * &qq),
                interval(int(0), hi.clone(), hi / int(2)),
            )
        },
        expected: |p, n| {
            let (qq, b2) = (p.get("q"), p.get("beta2"));
            let m = n + int(1);
            (b2 - &qq * &m * &m) / (int(2) * qq * m)
        },
    },
    CatalogEntry {
        name: "kratzer",
        title: "Kratzer potential",
        parameters: &[param("A", 1, 1, Constraint::Any), param("Lambda", 0, 1, Constraint::Above(-1, 1))],
        eigen_parameter: "epsilon",
        provenance: "Kratzer potential, transformed equation: tau = 2(Lambda + 1) - 2 epsilon r, sigma = r, \
                     gamma = A - 2(Lambda + 1) epsilon. The spectrum epsilon_n = A/(2(n + Lambda + 1)) is derived \
                     from the closed-form condition; the printed Kratzer spectrum repeats the Hulthen formula \
                     and is not used.",
        build: |p| {
            let l1 = p.get("Lambda") + int(1);
            parts(
                AffinePoly::new(Poly::constant(int(2) * &l1), lin(int(0), int(-2))),
                lin(int(0), int(1)),
                Affine::new(p.get("A"), int(-2) * l1),
                half_line(int(0), int(1)),
            )
        },
        expected: |p, n| p.get("A") / (int(2) * (n + p.get("Lambda") + int(1))),
    },
];

/// Every entry, in a fixed order.
pub fn entries() -> &'static [CatalogEntry] {
    ENTRIES
}

/// Entries whose name contains `filter`.
pub fn catalog_list(filter: Option<&str>) -> Vec<&'static CatalogEntry> {
    ENTRIES.iter().filter(|e| filter.is_none_or(|f| e.name.contains(f))).collect()
}

pub fn find(name: &str) -> Result<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

pub fn catalog_get(name: &str, overrides: &BTreeMap<String, Rational>) -> Result<HypergeometricProblem> {
    let entry = find(name)?;
    entry.problem(&entry.resolve(overrides)?)
}

pub fn expected_eigenvalue(name: &str, overrides: &BTreeMap<String, Rational>, n: u32) -> Result<Rational> {
    let entry = find(name)?;
    Ok(entry.expected(&entry.resolve(overrides)?, n))
}
