//! Asymptotic iteration on `y'' = λ₀(r) y' + s₀(r) y`.
//!
//! The recursion
//!
//! ```text
//! λₖ = λₖ₋₁' + sₖ₋₁ + λ₀ λₖ₋₁
//! sₖ = sₖ₋₁' + s₀ λₖ₋₁
//! ```
//!
//! is run with the physical parameter already substituted by an exact
//! rational, and the energy is quantized by the sign changes of
//! `δₖ = λₖ sₖ₋₁ − λₖ₋₁ sₖ` at a fixed evaluation point `r₀`.
//!
//! Two evaluation routes exist. [`AimSequence`] works on normalized
//! [`RatFunc`]s and is used for the symbolic diagnostics. The bisection
//! solver uses a gcd-free integer form: with `λ₀ = A/D`, `s₀ = B/D` every
//! iterate is `λₖ = Lₖ/D^(k+1)`, `sₖ = Sₖ/D^(k+1)`, and the polynomial pair
//! `(Lₖ, Sₖ)` obeys a linear recursion over the integers.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{AffineRatFunc, Poly, RatFunc, Rational};
use crate::exec::Execution;
use crate::{Error, Result};

/// Open interval of the independent variable; `None` bounds are infinite.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Domain {
    pub lo: Option<Rational>,
    pub hi: Option<Rational>,
}

impl Domain {
    pub fn new(lo: Option<Rational>, hi: Option<Rational>) -> Self {
        Domain { lo, hi }
    }

    pub fn real_line() -> Self {
        Domain::default()
    }

    pub fn contains(&self, r: &Rational) -> bool {
        self.lo.as_ref().is_none_or(|lo| r > lo) && self.hi.as_ref().is_none_or(|hi| r < hi)
    }
}

/// `y'' = λ₀ y' + s₀ y` with `λ₀`, `s₀` affine in one parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AimProblem {
    pub lambda0: AffineRatFunc,
    pub s0: AffineRatFunc,
    pub domain: Domain,
    pub eval_point: Rational,
    pub parameter_name: String,
}

impl AimProblem {
    pub fn new(
        lambda0: AffineRatFunc,
        s0: AffineRatFunc,
        domain: Domain,
        eval_point: Rational,
        parameter_name: impl Into<String>,
    ) -> Result<Self> {
        if lambda0.num.constant_part().is_zero() && lambda0.num.param_part().is_zero() {
            return Err(Error::InvalidInput("lambda0 is identically zero".into()));
        }
        for (label, f) in [("lambda0", &lambda0), ("s0", &s0)] {
            let at = |p: Poly| p.eval(&eval_point);
            if at(f.den.constant_part().clone()).is_zero() && at(f.den.param_part().clone()).is_zero() {
                return Err(Error::InvalidInput(format!("{label} has a pole at r0 = {eval_point}")));
            }
        }
        if !domain.contains(&eval_point) {
            return Err(Error::InvalidInput(format!("r0 = {eval_point} lies outside the domain")));
        }
        Ok(AimProblem { lambda0, s0, domain, eval_point, parameter_name: parameter_name.into() })
    }

    /// `(λ₀, s₀)` with the parameter set to `e`.
    pub fn at(&self, e: &Rational) -> Result<(RatFunc, RatFunc)> {
        Ok((self.lambda0.eval(e)?, self.s0.eval(e)?))
    }
}

/// One application of the recursion: returns `(λₖ, sₖ)`.
pub fn aim_step(lambda_prev: &RatFunc, s_prev: &RatFunc, lambda0: &RatFunc, s0: &RatFunc) -> (RatFunc, RatFunc) {
    let lambda = &(&lambda_prev.derivative() + s_prev) + &(lambda0 * lambda_prev);
    let s = &s_prev.derivative() + &(s0 * lambda_prev);
    (lambda, s)
}

/// Consecutive iterates `(λₖ₋₁, sₖ₋₁)`, `(λₖ, sₖ)` for `k ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AimSequence {
    pub k: usize,
    pub lambda0: RatFunc,
    pub s0: RatFunc,
    pub lambda_k: RatFunc,
    pub s_k: RatFunc,
    pub lambda_km1: RatFunc,
    pub s_km1: RatFunc,
}

impl AimSequence {
    /// Starts at `k = 1`.
    pub fn new(lambda0: RatFunc, s0: RatFunc) -> Self {
        let (lambda_k, s_k) = aim_step(&lambda0, &s0, &lambda0, &s0);
        AimSequence { k: 1, lambda_km1: lambda0.clone(), s_km1: s0.clone(), lambda0, s0, lambda_k, s_k }
    }

    pub fn advance(&mut self) {
        let (l, s) = aim_step(&self.lambda_k, &self.s_k, &self.lambda0, &self.s0);
        self.lambda_km1 = std::mem::replace(&mut self.lambda_k, l);
        self.s_km1 = std::mem::replace(&mut self.s_k, s);
        self.k += 1;
    }

    /// Advances until the current index equals `k`.
    pub fn advance_to(&mut self, k: usize) {
        while self.k < k {
            self.advance();
        }
    }
}

/// `δₖ = λₖ sₖ₋₁ − λₖ₋₁ sₖ`.
pub fn delta_k(seq: &AimSequence) -> RatFunc {
    &(&seq.lambda_k * &seq.s_km1) - &(&seq.lambda_km1 * &seq.s_k)
}

/// `(sₖ/λₖ, sₖ₋₁/λₖ₋₁)` at `r0`. Equal values mean the iteration has terminated.
pub fn alpha_ratio(seq: &AimSequence, r0: &Rational) -> Result<(Rational, Rational)> {
    let ratio = |s: &RatFunc, l: &RatFunc| -> Result<Rational> {
        let lv = l.eval(r0)?;
        if lv.is_zero() {
            return Err(Error::EvaluationPole(r0.clone()));
        }
        Ok(s.eval(r0)? / lv)
    };
    Ok((ratio(&seq.s_k, &seq.lambda_k)?, ratio(&seq.s_km1, &seq.lambda_km1)?))
}

/// Exact `δₖ(r0)` through the [`RatFunc`] route.
pub fn delta_value(problem: &AimProblem, e: &Rational, k: usize, r0: &Rational) -> Result<Rational> {
    let (l0, s0) = problem.at(e)?;
    let mut seq = AimSequence::new(l0, s0);
    seq.advance_to(k.max(1));
    delta_k(&seq).eval(r0)
}

// ---------------------------------------------------------------------------
// Integer fast path

type IntPoly = Vec<BigInt>;

fn ip_trim(mut p: IntPoly) -> IntPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn ip_add(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    ip_trim(out)
}

fn ip_sub(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let neg: IntPoly = b.iter().map(|c| -c).collect();
    ip_add(a, &neg)
}

fn ip_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ip_trim(out)
}

fn ip_scale(a: &[BigInt], c: &BigInt) -> IntPoly {
    ip_trim(a.iter().map(|x| x * c).collect())
}

fn ip_derivative(a: &[BigInt]) -> IntPoly {
    a.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

/// `Σ cᵢ uⁱ v^(deg−i)`, i.e. `v^deg · p(u/v)`.
fn ip_eval_hom(p: &[BigInt], u: &BigInt, vpow: &[BigInt], deg: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for i in (0..=deg).rev() {
        acc *= u;
        if let Some(c) = p.get(i) {
            acc += c * &vpow[deg - i];
        }
    }
    acc
}

fn to_int_poly(p: &Poly, scale: &BigInt) -> IntPoly {
    let s = Rational::from_integer(scale.clone());
    ip_trim(p.coeffs().iter().map(|c| (c * &s).to_integer()).collect())
}

/// `λ₀ = a/d`, `s₀ = b/d` with integer coefficients.
#[derive(Clone, Debug)]
struct IntForm {
    a: IntPoly,
    b: IntPoly,
    d: IntPoly,
    dd: IntPoly,
}

impl IntForm {
    fn new(lambda0: &RatFunc, s0: &RatFunc) -> Self {
        // Common denominator D = lcm(den λ₀, den s₀).
        let g = Poly::gcd(lambda0.den(), s0.den()).expect("denominators are nonzero");
        let d = &lambda0.den().exact_div(&g).expect("gcd divides") * s0.den();
        let a = lambda0.num() * &d.exact_div(lambda0.den()).expect("lcm");
        let b = s0.num() * &d.exact_div(s0.den()).expect("lcm");
        let scale = [&a, &b, &d].iter().fold(BigInt::one(), |acc, p| acc.lcm(&p.denominator_lcm()));
        let d = to_int_poly(&d, &scale);
        let dd = ip_derivative(&d);
        IntForm { a: to_int_poly(&a, &scale), b: to_int_poly(&b, &scale), d, dd }
    }

    /// `(Lₖ, Sₖ)` from `(Lₖ₋₁, Sₖ₋₁)`; both scaled by the same positive content.
    fn step(&self, l: &[BigInt], s: &[BigInt], k: usize) -> (IntPoly, IntPoly) {
        let kk = BigInt::from(k);
        let dl = ip_derivative(l);
        let ds = ip_derivative(s);
        let l_next = ip_add(
            &ip_sub(&ip_mul(&dl, &self.d), &ip_scale(&ip_mul(l, &self.dd), &kk)),
            &ip_add(&ip_mul(s, &self.d), &ip_mul(&self.a, l)),
        );
        let s_next = ip_add(&ip_sub(&ip_mul(&ds, &self.d), &ip_scale(&ip_mul(s, &self.dd), &kk)), &ip_mul(&self.b, l));
        let g = l_next.iter().chain(&s_next).fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() || g.is_one() {
            (l_next, s_next)
        } else {
            (l_next.into_iter().map(|c| c / &g).collect(), s_next.into_iter().map(|c| c / &g).collect())
        }
    }

    /// Signs of `δ₁(r0) … δ_kmax(r0)`.
    fn delta_signs(&self, r0: &Rational, k_max: usize) -> Result<Vec<Ordering>> {
        let u = r0.numer().clone();
        let v = r0.denom().clone();
        let d_deg = self.d.len().saturating_sub(1);
        let vpow_d: Vec<BigInt> =
            std::iter::successors(Some(BigInt::one()), |p| Some(p * &v)).take(d_deg + 1).collect();
        let d_at = ip_eval_hom(&self.d, &u, &vpow_d, d_deg);
        if d_at.is_zero() {
            return Err(Error::EvaluationPole(r0.clone()));
        }
        let d_sign = d_at.sign();

        let mut vpow: Vec<BigInt> = vec![BigInt::one()];
        let mut out = Vec::with_capacity(k_max);
        let mut l_prev = self.a.clone();
        let mut s_prev = self.b.clone();
        for k in 1..=k_max {
            let (l, s) = self.step(&l_prev, &s_prev, k);
            let deg = [&l, &s, &l_prev, &s_prev].iter().map(|p| p.len()).max().unwrap_or(1).max(1) - 1;
            while vpow.len() <= deg {
                let next = vpow.last().expect("nonempty") * &v;
                vpow.push(next);
            }
            let e = |p: &IntPoly| ip_eval_hom(p, &u, &vpow, deg);
            let n = e(&l) * e(&s_prev) - e(&l_prev) * e(&s);
            let sign = match (n.sign(), d_sign) {
                (num_bigint::Sign::NoSign, _) => Ordering::Equal,
                (a, b) if a == b => Ordering::Greater,
                _ => Ordering::Less,
            };
            out.push(sign);
            l_prev = l;
            s_prev = s;
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Parameter-polynomial route
//
// When neither denominator depends on the parameter E, the numerators Lₖ, Sₖ
// are polynomials in (r, E) and δₖ(r0, E) is, up to a positive factor and
// the fixed sign of D(r0), a polynomial in E alone. Computing those once per
// level turns every bisection probe into a single Horner evaluation.

/// Index = power of r; entries are polynomials in E.
type BiPoly = Vec<IntPoly>;

fn bp_trim(mut p: BiPoly) -> BiPoly {
    for c in &mut p {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
    }
    while p.last().is_some_and(|c| c.is_empty()) {
        p.pop();
    }
    p
}

fn bp_add(a: &[IntPoly], b: &[IntPoly]) -> BiPoly {
    let n = a.len().max(b.len());
    let empty = Vec::new();
    bp_trim((0..n).map(|i| ip_add(a.get(i).unwrap_or(&empty), b.get(i).unwrap_or(&empty))).collect())
}

fn bp_sub(a: &[IntPoly], b: &[IntPoly]) -> BiPoly {
    let n = a.len().max(b.len());
    let empty = Vec::new();
    bp_trim((0..n).map(|i| ip_sub(a.get(i).unwrap_or(&empty), b.get(i).unwrap_or(&empty))).collect())
}

fn bp_mul(a: &[IntPoly], b: &[IntPoly]) -> BiPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out: BiPoly = vec![Vec::new(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_empty() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_empty() {
                out[i + j] = ip_add(&out[i + j], &ip_mul(x, y));
            }
        }
    }
    bp_trim(out)
}

/// Multiplies by a polynomial in r alone.
fn bp_mul_r(a: &[IntPoly], d: &[BigInt]) -> BiPoly {
    let lifted: BiPoly = d.iter().map(|c| if c.is_zero() { Vec::new() } else { vec![c.clone()] }).collect();
    bp_mul(a, &lifted)
}

fn bp_scale(a: &[IntPoly], c: &BigInt) -> BiPoly {
    bp_trim(a.iter().map(|p| ip_scale(p, c)).collect())
}

fn bp_derivative(a: &[IntPoly]) -> BiPoly {
    bp_trim(a.iter().enumerate().skip(1).map(|(i, p)| ip_scale(p, &BigInt::from(i))).collect())
}

/// `v^deg · p(u/v, E)` as a polynomial in E.
fn bp_eval_r(p: &[IntPoly], u: &BigInt, vpow: &[BigInt], deg: usize) -> IntPoly {
    let mut acc: IntPoly = Vec::new();
    for i in (0..=deg).rev() {
        acc = ip_scale(&acc, u);
        if let Some(c) = p.get(i) {
            acc = ip_add(&acc, &ip_scale(c, &vpow[deg - i]));
        }
    }
    acc
}

/// Sign of an integer polynomial at a rational point.
fn ip_sign_at(p: &[BigInt], e: &Rational) -> Ordering {
    if p.is_empty() {
        return Ordering::Equal;
    }
    let deg = p.len() - 1;
    let v = e.denom();
    let vpow: Vec<BigInt> = std::iter::successors(Some(BigInt::one()), |x| Some(x * v)).take(deg + 1).collect();
    let val = ip_eval_hom(p, e.numer(), &vpow, deg);
    val.cmp(&BigInt::zero())
}

/// `δₖ(r0, E)` sign polynomials for `k = 1..=k_max`.
#[derive(Clone, Debug)]
struct DeltaPolys {
    levels: Vec<IntPoly>,
    /// Positive rational with `δₖ(r0, E) = factors[k−1] · levels[k−1](E)`, signs aside.
    factors: Vec<Rational>,
    flip: bool,
}

impl DeltaPolys {
    /// `None` when a denominator depends on the parameter.
    fn new(problem: &AimProblem, r0: &Rational, k_max: usize) -> Result<Option<Self>> {
        let (l, s) = (&problem.lambda0, &problem.s0);
        if !l.den.param_part().is_zero() || !s.den.param_part().is_zero() {
            return Ok(None);
        }
        let (ld, sd) = (l.den.constant_part(), s.den.constant_part());
        let g = Poly::gcd(ld, sd)?;
        let d = &ld.exact_div(&g).expect("gcd divides") * sd;
        let ml = d.exact_div(ld).expect("lcm");
        let ms = d.exact_div(sd).expect("lcm");
        let a = [l.num.constant_part() * &ml, l.num.param_part() * &ml];
        let b = [s.num.constant_part() * &ms, s.num.param_part() * &ms];
        let scale = a.iter().chain(&b).chain([&d]).fold(BigInt::one(), |acc, p| acc.lcm(&p.denominator_lcm()));
        let lift = |pair: &[Poly; 2]| -> BiPoly {
            let c0 = to_int_poly(&pair[0], &scale);
            let c1 = to_int_poly(&pair[1], &scale);
            let n = c0.len().max(c1.len());
            let z = BigInt::zero();
            bp_trim(
                (0..n)
                    .map(|i| ip_trim(vec![c0.get(i).unwrap_or(&z).clone(), c1.get(i).unwrap_or(&z).clone()]))
                    .collect(),
            )
        };
        let (a, b) = (lift(&a), lift(&b));
        let d = to_int_poly(&d, &scale);
        let dd = ip_derivative(&d);

        let (u, v) = (r0.numer().clone(), r0.denom().clone());
        let d_deg = d.len().saturating_sub(1);
        let mut vpow: Vec<BigInt> =
            std::iter::successors(Some(BigInt::one()), |p| Some(p * &v)).take(d_deg + 1).collect();
        let d_at = ip_eval_hom(&d, &u, &vpow, d_deg);
        if d_at.is_zero() {
            return Err(Error::EvaluationPole(r0.clone()));
        }
        let flip = d_at.is_negative();
        // D(r0) on the integer scale, and the running content G_k removed from (L_k, S_k).
        let d_r0 = Rational::new(d_at.clone(), vpow[d_deg].clone());
        let mut g_prev = BigInt::one();

        let mut levels = Vec::with_capacity(k_max);
        let mut factors = Vec::with_capacity(k_max);
        let (mut l_prev, mut s_prev) = (a.clone(), b.clone());
        for k in 1..=k_max {
            let kk = BigInt::from(k);
            let l_next = bp_add(
                &bp_sub(&bp_mul_r(&bp_derivative(&l_prev), &d), &bp_scale(&bp_mul_r(&l_prev, &dd), &kk)),
                &bp_add(&bp_mul_r(&s_prev, &d), &bp_mul(&a, &l_prev)),
            );
            let s_next = bp_add(
                &bp_sub(&bp_mul_r(&bp_derivative(&s_prev), &d), &bp_scale(&bp_mul_r(&s_prev, &dd), &kk)),
                &bp_mul(&b, &l_prev),
            );
            let g = l_next.iter().chain(&s_next).flatten().fold(BigInt::zero(), |g, c| g.gcd(c));
            let (l_next, s_next, g) = if g.is_zero() || g.is_one() {
                (l_next, s_next, BigInt::one())
            } else {
                let div =
                    |p: BiPoly| -> BiPoly { p.into_iter().map(|c| c.into_iter().map(|x| x / &g).collect()).collect() };
                (div(l_next), div(s_next), g)
            };
            let g_k = &g_prev * g;
            let deg = [&l_next, &s_next, &l_prev, &s_prev].iter().map(|p| p.len()).max().unwrap_or(1).max(1) - 1;
            while vpow.len() <= deg {
                let next = vpow.last().expect("nonempty") * &v;
                vpow.push(next);
            }
            let e = |p: &BiPoly| bp_eval_r(p, &u, &vpow, deg);
            levels.push(ip_sub(&ip_mul(&e(&l_next), &e(&s_prev)), &ip_mul(&e(&l_prev), &e(&s_next))));
            let den = Rational::from_integer(&vpow[deg] * &vpow[deg]) * num_traits::pow(d_r0.abs(), 2 * k + 1);
            factors.push(Rational::from_integer(&g_k * &g_prev) / den);
            g_prev = g_k;
            l_prev = l_next;
            s_prev = s_next;
        }
        Ok(Some(DeltaPolys { levels, factors, flip }))
    }

    fn sign(&self, e: &Rational, k: usize) -> Ordering {
        let s = ip_sign_at(&self.levels[k - 1], e);
        if self.flip {
            s.reverse()
        } else {
            s
        }
    }
}

/// `δₖ(r0, E)` as an exact polynomial in the parameter `E`.
///
/// `None` when a denominator of `λ₀` or `s₀` depends on the parameter, in
/// which case `δₖ` is rational rather than polynomial in `E`.
pub fn delta_polynomial(problem: &AimProblem, r0: &Rational, k: usize) -> Result<Option<Poly>> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let Some(dp) = DeltaPolys::new(problem, r0, k)? else {
        return Ok(None);
    };
    let mut c = dp.factors[k - 1].clone();
    if dp.flip {
        c = -c;
    }
    let coeffs = dp.levels[k - 1].iter().map(|x| Rational::from_integer(x.clone()) * &c).collect();
    Ok(Some(Poly::from_coeffs(coeffs)))
}

/// Sign of `δₖ(r0)` at parameter `e` via the integer route.
pub fn delta_sign(problem: &AimProblem, e: &Rational, k: usize, r0: &Rational) -> Result<Ordering> {
    let (l0, s0) = problem.at(e)?;
    let signs = IntForm::new(&l0, &s0).delta_signs(r0, k.max(1))?;
    Ok(*signs.last().expect("k >= 1"))
}

// ---------------------------------------------------------------------------
// Bisection solver

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterativeOptions {
    pub r0: Rational,
    pub bracket: (Rational, Rational),
    pub k_max: usize,
    pub tol: Rational,
    pub scan_points: usize,
    pub execution: Execution,
}

impl IterativeOptions {
    pub const DEFAULT_K_MAX: usize = 40;
    pub const DEFAULT_SCAN_POINTS: usize = 64;

    /// Defaults: `k_max = 40`, `tol = 1e-8`, 64 scan points, parallel execution.
    pub fn new(r0: Rational, bracket: (Rational, Rational)) -> Self {
        IterativeOptions {
            r0,
            bracket,
            k_max: Self::DEFAULT_K_MAX,
            tol: Rational::new(BigInt::one(), BigInt::from(100_000_000)),
            scan_points: Self::DEFAULT_SCAN_POINTS,
            execution: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenvalueEstimate {
    /// Mode index, assigned by the iteration level at which the root stabilized.
    pub n: usize,
    /// Final bisection midpoint.
    pub value: Rational,
    /// Iteration level from which the value stayed within tolerance.
    pub k_used: usize,
    pub converged: bool,
    pub history: Vec<(usize, Rational)>,
}

struct Track {
    history: Vec<(usize, Rational)>,
    alive: bool,
}

/// Locates the roots of `δₖ(r0, E)` in the bracket for `k = 1..=k_max` and
/// tracks them across levels.
pub fn solve_iterative(problem: &AimProblem, opts: &IterativeOptions) -> Result<Vec<EigenvalueEstimate>> {
    let (lo, hi) = &opts.bracket;
    if lo >= hi {
        return Err(Error::InvalidInput(format!("empty bracket ({lo}, {hi})")));
    }
    if !opts.tol.is_positive() {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    if opts.scan_points < 2 {
        return Err(Error::InvalidInput("at least two scan points are required".into()));
    }
    if opts.k_max == 0 {
        return Err(Error::InvalidInput("k_max must be at least 1".into()));
    }
    if !problem.domain.contains(&opts.r0) {
        return Err(Error::InvalidInput(format!("r0 = {} lies outside the domain", opts.r0)));
    }

    let steps = Rational::from_integer(BigInt::from(opts.scan_points - 1));
    let width = hi - lo;
    let grid: Vec<Rational> =
        (0..opts.scan_points).map(|i| lo + &width * Rational::from_integer(BigInt::from(i)) / &steps).collect();

    let fast = DeltaPolys::new(problem, &opts.r0, opts.k_max)?;
    let signs_at = |e: &Rational, k_max: usize| -> Result<Vec<Ordering>> {
        if let Some(f) = &fast {
            return Ok((1..=k_max).map(|k| f.sign(e, k)).collect());
        }
        let (l0, s0) = problem.at(e)?;
        IntForm::new(&l0, &s0).delta_signs(&opts.r0, k_max)
    };
    let sign_at = |e: &Rational, k: usize| -> Result<Ordering> {
        if let Some(f) = &fast {
            return Ok(f.sign(e, k));
        }
        Ok(*signs_at(e, k)?.last().expect("k >= 1"))
    };

    let grid_signs: Vec<Vec<Ordering>> =
        opts.execution.map(&grid, |e| signs_at(e, opts.k_max)).into_iter().collect::<Result<_>>()?;

    // Bisection jobs across every level at once.
    enum Job {
        Exact(usize, Rational),
        Bisect(usize, Rational, Rational, Ordering),
    }
    let mut jobs = Vec::new();
    for k in 1..=opts.k_max {
        let s = |i: usize| grid_signs[i][k - 1];
        for i in 0..grid.len() {
            if s(i) == Ordering::Equal {
                jobs.push(Job::Exact(k, grid[i].clone()));
            } else if i + 1 < grid.len() && s(i + 1) != Ordering::Equal && s(i) != s(i + 1) {
                jobs.push(Job::Bisect(k, grid[i].clone(), grid[i + 1].clone(), s(i)));
            }
        }
    }
    let two = Rational::from_integer(BigInt::from(2));
    let refined: Vec<(usize, Rational)> = opts
        .execution
        .map(&jobs, |job| -> Result<(usize, Rational)> {
            match job {
                Job::Exact(k, e) => Ok((*k, e.clone())),
                Job::Bisect(k, a, b, sa) => {
                    let (mut a, mut b) = (a.clone(), b.clone());
                    while &b - &a >= opts.tol {
                        let m = (&a + &b) / &two;
                        let sm = sign_at(&m, *k)?;
                        match sm {
                            Ordering::Equal => return Ok((*k, m)),
                            _ if sm == *sa => a = m,
                            _ => b = m,
                        }
                    }
                    Ok((*k, (a + b) / &two))
                }
            }
        })
        .into_iter()
        .collect::<Result<_>>()?;

    let mut by_level: Vec<Vec<Rational>> = vec![Vec::new(); opts.k_max + 1];
    for (k, v) in refined {
        by_level[k].push(v);
    }
    for roots in &mut by_level {
        roots.sort();
    }
    if by_level[opts.k_max].is_empty() {
        return Err(Error::NoRootInBracket(Box::new((lo.clone(), hi.clone()))));
    }

    let tracks = match_levels(&by_level);
    Ok(finish_tracks(tracks, opts.k_max, &opts.tol))
}

/// Nearest-value matching of roots between consecutive levels; ties go to the smaller root.
fn match_levels(by_level: &[Vec<Rational>]) -> Vec<Track> {
    let mut tracks: Vec<Track> = Vec::new();
    for (k, roots) in by_level.iter().enumerate().skip(1) {
        let live: Vec<usize> = (0..tracks.len()).filter(|&t| tracks[t].alive).collect();
        let mut pairs: Vec<(Rational, usize, usize)> = Vec::new();
        for &t in &live {
            let last = &tracks[t].history.last().expect("nonempty").1;
            for (j, v) in roots.iter().enumerate() {
                pairs.push(((v - last).abs(), j, t));
            }
        }
        // Roots are sorted, so ordering by index breaks ties toward the smaller root.
        pairs.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        let mut root_taken = vec![false; roots.len()];
        let mut track_taken = vec![false; tracks.len()];
        for (_, j, t) in pairs {
            if root_taken[j] || track_taken[t] {
                continue;
            }
            root_taken[j] = true;
            track_taken[t] = true;
            tracks[t].history.push((k, roots[j].clone()));
        }
        for &t in &live {
            if !track_taken[t] {
                tracks[t].alive = false;
            }
        }
        for (j, v) in roots.iter().enumerate() {
            if !root_taken[j] {
                tracks.push(Track { history: vec![(k, v.clone())], alive: true });
            }
        }
    }
    tracks
}

fn finish_tracks(tracks: Vec<Track>, k_max: usize, tol: &Rational) -> Vec<EigenvalueEstimate> {
    let mut out: Vec<EigenvalueEstimate> = tracks
        .into_iter()
        .map(|t| {
            let h = &t.history;
            // Start of the trailing run of within-tolerance steps.
            let mut start = h.len() - 1;
            while start > 0 && (&h[start].1 - &h[start - 1].1).abs() < *tol {
                start -= 1;
            }
            let alive_at_end = t.alive && h.last().expect("nonempty").0 == k_max;
            let converged = alive_at_end && start < h.len() - 1;
            EigenvalueEstimate {
                n: 0,
                value: h.last().expect("nonempty").1.clone(),
                k_used: h[start].0,
                converged,
                history: t.history,
            }
        })
        .collect();
    out.sort_by(|a, b| b.converged.cmp(&a.converged).then(a.k_used.cmp(&b.k_used)).then(a.value.cmp(&b.value)));
    for (i, e) in out.iter_mut().enumerate() {
        e.n = i;
    }
    out
}
