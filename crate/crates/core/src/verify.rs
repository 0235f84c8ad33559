//! Self-check suites. Every case recomputes a known closed form and compares
//! exactly; random inputs come from a fixed seed so runs are reproducible.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::aim::{delta_polynomial, solve_iterative, IterativeOptions};
use crate::algebra::{format_rational, rat, Poly, Rational};
use crate::catalog::{self, catalog_get, expected_eigenvalue};
use crate::eigenfunctions::{
    hulthen_eigenfunction, ode_residual, pearson_residual, pearson_weight, polynomial_solution, rodrigues,
    scalar_ratio, y_low_order,
};
use crate::exec::Execution;
use crate::hypergeometric::{eigenvalue, gamma_n, to_aim_form};
use crate::nu::{
    harmonic_oscillator, nu_find_k, nu_lambda_n, nu_solve_energy, radicand_coefficients, BranchSelector, NuProblem,
};

pub const SEED: u64 = 0x5eed_a1b2;

pub const SUITES: &[&str] = &["table1", "gamma", "morse", "hulthen", "kratzer", "eigenfunctions", "nu", "delta"];

/// Classical entries checked for three-way eigenfunction agreement.
pub const EIGENFUNCTION_ENTRIES: &[&str] = &[
    "hermite",
    "laguerre",
    "legendre",
    "chebyshev_a",
    "chebyshev_b",
    "gegenbauer",
    "hyperspherical",
    "bessel",
    "generalized_bessel",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseOutcome {
    pub suite: &'static str,
    pub case: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: Vec<CaseOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.passed).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.cases.len()
    }
}

type Check = Box<dyn Fn() -> Result<(), String> + Send + Sync>;

struct Case {
    name: String,
    check: Check,
}

fn case(name: impl Into<String>, check: impl Fn() -> Result<(), String> + Send + Sync + 'static) -> Case {
    Case { name: name.into(), check: Box::new(check) }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err_str(e: crate::Error) -> String {
    e.to_string()
}

/// Runs every suite whose name contains `filter`.
pub fn run(filter: Option<&str>, execution: Execution) -> Vec<SuiteReport> {
    SUITES
        .iter()
        .filter(|s| filter.is_none_or(|f| s.contains(f)))
        .map(|&name| {
            let cases = build(name);
            let outcomes = execution.map(&cases, |c| {
                let res = (c.check)();
                CaseOutcome {
                    suite: name,
                    case: c.name.clone(),
                    passed: res.is_ok(),
                    detail: res.err().unwrap_or_default(),
                }
            });
            SuiteReport { name, cases: outcomes }
        })
        .collect()
}

fn build(suite: &str) -> Vec<Case> {
    match suite {
        "table1" => table1(),
        "gamma" => gamma(),
        "morse" => morse(),
        "hulthen" => hulthen(),
        "kratzer" => kratzer(),
        "eigenfunctions" => eigenfunctions(),
        "nu" => nu(),
        "delta" => delta(),
        _ => Vec::new(),
    }
}

/// Small random rational `p/q` with `|p| ≤ 9`, `1 ≤ q ≤ 6`.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    Rational::new(BigInt::from(rng.gen_range(-9i64..=9)), BigInt::from(rng.gen_range(1i64..=6)))
}

pub fn random_poly(rng: &mut impl Rng, max_degree: usize) -> Poly {
    Poly::from_coeffs((0..=max_degree).map(|_| small_rational(rng)).collect())
}

/// Random `(τ, σ)` with `deg τ ≤ 1`, `deg σ ≤ 2`, `σ ≠ 0`.
pub fn random_tau_sigma(rng: &mut impl Rng) -> (Poly, Poly) {
    let tau = random_poly(rng, 1);
    loop {
        let sigma = random_poly(rng, 2);
        if !sigma.is_zero() {
            return (tau, sigma);
        }
    }
}

fn defaults() -> BTreeMap<String, Rational> {
    BTreeMap::new()
}

fn params(pairs: &[(&str, Rational)]) -> BTreeMap<String, Rational> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn table1() -> Vec<Case> {
    catalog::entries()
        .iter()
        .filter(|e| !matches!(e.name, "morse" | "hulthen" | "kratzer"))
        .map(|e| {
            let name = e.name;
            case(format!("{name} n=0..20"), move || {
                let prob = catalog_get(name, &defaults()).map_err(err_str)?;
                for n in 0..=20 {
                    let got = eigenvalue(&prob, n).map_err(err_str)?;
                    let want = expected_eigenvalue(name, &defaults(), n).map_err(err_str)?;
                    ensure(got == want, || format!("n={n}: {got} != {want}"))?;
                }
                Ok(())
            })
        })
        .collect()
}

fn gamma() -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..100)
        .map(|i| {
            let (tau, sigma) = random_tau_sigma(&mut rng);
            case(format!("random #{i}"), move || {
                let tp = tau.coeff(1);
                let spp = sigma.coeff(2) * rat(2, 1);
                let want =
                    [Rational::zero(), -tp.clone(), rat(-2, 1) * &tp - &spp, rat(-3, 1) * &tp - rat(3, 1) * &spp];
                for (n, w) in want.iter().enumerate() {
                    let got = gamma_n(&tau, &sigma, n as u32);
                    ensure(got == *w, || format!("tau={tau}, sigma={sigma}, n={n}: {got} != {w}"))?;
                }
                Ok(())
            })
        })
        .collect()
}

/// `solve_iterative` at the entry's default point finds each of `levels`.
fn aim_case(name: &'static str, bracket: (Rational, Rational), levels: &'static [u32]) -> Case {
    case(format!("{name} iterative n={levels:?}"), move || {
        let prob = catalog_get(name, &defaults()).map_err(err_str)?;
        let aim = to_aim_form(&prob).map_err(err_str)?;
        let opts = IterativeOptions::new(prob.eval_point.clone(), bracket.clone());
        let tol10 = &opts.tol * rat(10, 1);
        let est = solve_iterative(&aim, &opts).map_err(err_str)?;
        for &n in levels {
            let want = expected_eigenvalue(name, &defaults(), n).map_err(err_str)?;
            ensure(est.iter().any(|e| e.converged && (&e.value - &want).abs() <= tol10), || {
                format!("no converged root within 10*tol of {}", format_rational(&want))
            })?;
        }
        Ok(())
    })
}

fn morse() -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    let mut cases: Vec<Case> = (0..5)
        .map(|i| {
            let alpha = Rational::new(BigInt::from(rng.gen_range(1i64..=9)), BigInt::from(rng.gen_range(1i64..=4)));
            let beta = Rational::new(BigInt::from(rng.gen_range(1i64..=19)), BigInt::from(rng.gen_range(1i64..=4)));
            case(format!("random #{i} alpha={alpha} beta={beta}"), move || {
                let prob = catalog_get("morse", &params(&[("alpha", alpha.clone()), ("beta", beta.clone())]))
                    .map_err(err_str)?;
                for n in 0..=5u32 {
                    let want = &beta - (rat(i64::from(n), 1) + rat(1, 2)) * &alpha;
                    let got = eigenvalue(&prob, n).map_err(err_str)?;
                    ensure(got == want, || format!("n={n}: {got} != {want}"))?;
                }
                Ok(())
            })
        })
        .collect();
    cases.push(aim_case("morse", (rat(1, 2), rat(4, 1)), &[0, 1]));
    cases
}

fn hulthen_epsilon(qq: &Rational, b2: &Rational, n: u32) -> Rational {
    let m = rat(i64::from(n) + 1, 1);
    (b2 - qq * &m * &m) / (rat(2, 1) * qq * m)
}

/// The printed low-order Hulthén eigenfunctions.
fn hulthen_printed(n: u32, qq: &Rational, e: &Rational) -> Poly {
    let r = |c: Vec<Rational>| Poly::from_coeffs(c);
    let one = rat(1, 1);
    let two = rat(2, 1);
    match n {
        0 => Poly::one(),
        1 => r(vec![-(&two * e + &one), (&two * e + rat(3, 1)) * qq]),
        2 => r(vec![
            &two * (&two * e * e + rat(3, 1) * e + &one),
            &two * rat(-4, 1) * (e + &one) * (e + &two) * qq,
            &two * (e + &two) * (&two * e + rat(5, 1)) * qq * qq,
        ]),
        _ => r(vec![
            -&two * (e * (rat(4, 1) * e * (e + rat(3, 1)) + rat(11, 1)) + rat(3, 1)),
            &two * (rat(3, 1) * e * (rat(4, 1) * e * (e + rat(5, 1)) + rat(31, 1)) + rat(45, 1)) * qq,
            rat(-6, 1) * (e + rat(3, 1)) * (&two * e + rat(3, 1)) * (&two * e + rat(5, 1)) * qq * qq,
            &two * (e + rat(3, 1)) * (&two * e + rat(5, 1)) * (&two * e + rat(7, 1)) * qq * qq * qq,
        ]),
    }
}

fn hulthen() -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    let mut cases: Vec<Case> = (0..5)
        .map(|i| {
            let qq = Rational::new(BigInt::from(rng.gen_range(1i64..=5)), BigInt::from(rng.gen_range(1i64..=4)));
            let b2 = small_rational(&mut rng) + rat(5, 1);
            case(format!("spectrum #{i} q={qq} beta2={b2}"), move || {
                let prob =
                    catalog_get("hulthen", &params(&[("q", qq.clone()), ("beta2", b2.clone())])).map_err(err_str)?;
                for n in 0..=10u32 {
                    let want = hulthen_epsilon(&qq, &b2, n);
                    let got = eigenvalue(&prob, n).map_err(err_str)?;
                    ensure(got == want, || format!("n={n}: {got} != {want}"))?;
                }
                Ok(())
            })
        })
        .collect();
    // Parameters chosen so no Pochhammer denominator vanishes for n <= 3.
    let (qq, b2) = (rat(1, 2), rat(7, 1));
    for n in 0..=3u32 {
        let (qq, b2) = (qq.clone(), b2.clone());
        cases.push(case(format!("eigenfunction n={n}"), move || {
            let eps = hulthen_epsilon(&qq, &b2, n);
            let y = hulthen_eigenfunction(n, &qq, &eps).map_err(err_str)?;
            let printed = hulthen_printed(n, &qq, &eps);
            ensure(scalar_ratio(&y, &printed).is_some(), || format!("{y} not proportional to {printed}"))?;
            let prob = catalog_get("hulthen", &params(&[("q", qq.clone()), ("beta2", b2.clone())])).map_err(err_str)?;
            let sol = polynomial_solution(&prob.tau_at(&eps), &prob.sigma, n).map_err(err_str)?;
            ensure(scalar_ratio(&y, &sol.poly).is_some(), || format!("{y} not proportional to {}", sol.poly))?;
            let res = ode_residual(&prob.tau_at(&eps), &prob.sigma, &prob.gamma_at(&eps), &y);
            ensure(res.is_zero(), || format!("ODE residual {res}"))
        }));
    }
    cases.push(aim_case("hulthen", (rat(-1, 2), rat(3, 1)), &[0, 1]));
    cases
}

fn kratzer() -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    let mut cases: Vec<Case> = (0..5)
        .map(|i| {
            let a = Rational::new(BigInt::from(rng.gen_range(1i64..=9)), BigInt::from(rng.gen_range(1i64..=4)));
            let lam = Rational::new(BigInt::from(rng.gen_range(0i64..=6)), BigInt::from(rng.gen_range(1i64..=3)));
            case(format!("random #{i} A={a} Lambda={lam}"), move || {
                let ps = params(&[("A", a.clone()), ("Lambda", lam.clone())]);
                let prob = catalog_get("kratzer", &ps).map_err(err_str)?;
                for n in 0..=6u32 {
                    let want = &a / (rat(2, 1) * (rat(i64::from(n), 1) + &lam + rat(1, 1)));
                    let got = eigenvalue(&prob, n).map_err(err_str)?;
                    ensure(got == want, || format!("n={n}: {got} != {want}"))?;
                    // The equation's own gamma at the eigenvalue, not the closed form.
                    let (tau, gamma) = (prob.tau_at(&got), prob.gamma_at(&got));
                    let y = polynomial_solution(&tau, &prob.sigma, n).map_err(err_str)?;
                    let res = ode_residual(&tau, &prob.sigma, &gamma, &y.poly);
                    ensure(res.is_zero(), || format!("n={n}: ODE residual {res}"))?;
                }
                Ok(())
            })
        })
        .collect();
    cases.push(aim_case("kratzer", (rat(1, 5), rat(1, 1)), &[0, 1]));
    cases
}

fn eigenfunctions() -> Vec<Case> {
    EIGENFUNCTION_ENTRIES
        .iter()
        .map(|&name| {
            case(format!("{name} n=0..8"), move || {
                let prob = catalog_get(name, &defaults()).map_err(err_str)?;
                let p0 = eigenvalue(&prob, 0).map_err(err_str)?;
                let (tau, sigma) = (prob.tau_at(&p0), prob.sigma.clone());
                let rho = pearson_weight(&tau, &sigma).map_err(err_str)?.weight;
                let residual = pearson_residual(&tau, &sigma, &rho);
                ensure(residual.as_ref().is_some_and(|r| r.is_zero()), || format!("Pearson residual for {rho}"))?;
                for n in 0..=8u32 {
                    let rec = polynomial_solution(&tau, &sigma, n).map_err(err_str)?;
                    let rod = rodrigues(&tau, &sigma, n).map_err(err_str)?;
                    ensure(scalar_ratio(&rod, &rec.poly).is_some(), || {
                        format!("n={n}: rodrigues {rod} vs recursion {}", rec.poly)
                    })?;
                    if n <= 3 {
                        let exp = y_low_order(&tau, &sigma, n).map_err(err_str)?;
                        ensure(scalar_ratio(&exp, &rec.poly).is_some(), || {
                            format!("n={n}: explicit {exp} vs recursion {}", rec.poly)
                        })?;
                    }
                    let res = ode_residual(&tau, &sigma, &rec.gamma_used, &rod);
                    ensure(res.is_zero(), || format!("n={n}: ODE residual {res}"))?;
                }
                Ok(())
            })
        })
        .collect()
}

/// Builds `(τ̃, σ, σ̃)` from `(τ, σ, π, k)` so that `(k, π)` is a reduction.
pub fn inverse_construct(tau: &Poly, sigma: &Poly, pi: &Poly, k: &Rational) -> NuProblem {
    let two = rat(2, 1);
    let tau_tilde = tau - &pi.scale(&two);
    let h = (&sigma.derivative() - &tau_tilde).scale(&rat(1, 2));
    let d = pi - &h;
    let sigma_tilde = &(&(&h * &h) + &sigma.scale(k)) - &(&d * &d);
    NuProblem { tau_tilde, sigma: sigma.clone(), sigma_tilde }
}

/// True when the discriminant of the radicand vanishes for every `k`.
pub fn discriminant_vanishes(problem: &NuProblem) -> bool {
    let [u0, u1, u2] = radicand_coefficients(problem);
    let four = rat(4, 1);
    let c0 = &u1.constant * &u1.constant - &four * &u0.constant * &u2.constant;
    let c1 = rat(2, 1) * &u1.constant * &u1.param - &four * (&u0.constant * &u2.param + &u0.param * &u2.constant);
    let c2 = &u1.param * &u1.param - &four * &u0.param * &u2.param;
    c0.is_zero() && c1.is_zero() && c2.is_zero()
}

fn nu() -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    let mut cases: Vec<Case> = (0..100)
        .map(|i| {
            let (tau, sigma) = random_tau_sigma(&mut rng);
            case(format!("lambda_n = gamma_n #{i}"), move || {
                for n in 0..=20 {
                    let (a, b) = (nu_lambda_n(&tau, &sigma, n), gamma_n(&tau, &sigma, n));
                    ensure(a == b, || format!("tau={tau}, sigma={sigma}, n={n}: {a} != {b}"))?;
                }
                Ok(())
            })
        })
        .collect();
    let mut made = 0;
    while made < 50 {
        let (tau, sigma) = random_tau_sigma(&mut rng);
        let pi = random_poly(&mut rng, 1);
        let k = small_rational(&mut rng);
        let prob = inverse_construct(&tau, &sigma, &pi, &k);
        if discriminant_vanishes(&prob) {
            continue;
        }
        cases.push(case(format!("round trip #{made}"), move || {
            let cands = nu_find_k(&prob).map_err(err_str)?;
            ensure(cands.iter().any(|c| c.k == k && c.pi == pi), || {
                format!("(k={k}, pi={pi}) missing from {} candidates", cands.len())
            })?;
            let h = prob.half_shift();
            for c in &cands {
                let d = &c.pi - &h;
                ensure((&prob.radicand().eval(&c.k) - &(&d * &d)).is_zero(), || format!("k={} not a square", c.k))?;
            }
            Ok(())
        }));
        made += 1;
    }
    cases.push(case("harmonic oscillator n=0..5", || {
        for n in 0..=5u32 {
            let (e, _) = nu_solve_energy(&harmonic_oscillator(), n, BranchSelector::BoundState).map_err(err_str)?;
            let want = rat(2 * i64::from(n) + 1, 2);
            ensure(e == want, || format!("n={n}: E={e}"))?;
        }
        Ok(())
    }));
    cases
}

fn delta() -> Vec<Case> {
    let mut cases = vec![case("hermite delta_1 = 4k(k-1)", || {
        let aim = to_aim_form(&catalog_get("hermite", &defaults()).map_err(err_str)?).map_err(err_str)?;
        let want = Poly::from_ints(&[0, -4, 4]);
        for r0 in [rat(1, 1), rat(-2, 3), rat(5, 1)] {
            let got = delta_polynomial(&aim, &r0, 1).map_err(err_str)?.ok_or("not polynomial")?;
            ensure(got == want, || format!("r0={r0}: {got}"))?;
        }
        Ok(())
    })];
    for n in 0..=4u32 {
        cases.push(case(format!("hermite delta_k(n={n}) = 0, k > n"), move || {
            let prob = catalog_get("hermite", &defaults()).map_err(err_str)?;
            let aim = to_aim_form(&prob).map_err(err_str)?;
            let kappa = rat(i64::from(n), 1);
            for k in (n as usize + 1)..=(n as usize + 6) {
                let d = delta_polynomial(&aim, &prob.eval_point, k).map_err(err_str)?.ok_or("not polynomial")?;
                ensure(d.eval(&kappa).is_zero(), || format!("k={k}: delta = {}", d.eval(&kappa)))?;
            }
            Ok(())
        }));
    }
    cases
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes() {
        for report in run(None, Execution::default()) {
            for c in &report.cases {
                assert!(c.passed, "{} / {}: {}", c.suite, c.case, c.detail);
            }
            assert!(!report.cases.is_empty(), "{}", report.name);
        }
    }

    #[test]
    fn filter_selects_suites() {
        let only = run(Some("nu"), Execution::Sequential);
        assert_eq!(only.len(), 1);
        assert_eq!(only[0].name, "nu");
        assert!(run(Some("zzz"), Execution::Sequential).is_empty());
    }

    #[test]
    fn runs_are_reproducible() {
        let a = run(Some("gamma"), Execution::Parallel);
        let b = run(Some("gamma"), Execution::Sequential);
        assert_eq!(a, b);
    }
}
