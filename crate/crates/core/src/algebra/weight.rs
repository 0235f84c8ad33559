use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{format_rational, partial_fractions, to_f64, Poly, RatFunc, Rational};
use crate::{Error, Result};

/// `prefactor(r) · Π (r − cᵢ)^μᵢ · exp(exp_arg(r))`.
///
/// Stored exponents are nonzero and carry the full power of `(r − cᵢ)`: the
/// prefactor never has a zero or a pole at a stored root. Powers are kept
/// symbolic even when integral, so weights such as `(r − 25)^(−132)` never
/// expand. Equality is semantic: two expressions compare equal when they
/// denote the same function, however a power of `(r − c)` is split between
/// the factor list and the prefactor.
#[derive(Clone, Debug)]
pub struct WeightExpr {
    prefactor: RatFunc,
    factors: BTreeMap<Rational, Rational>,
    exp_arg: RatFunc,
}

impl PartialEq for WeightExpr {
    fn eq(&self, other: &Self) -> bool {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => true,
            (false, false) => self.aligned(other).is_some_and(|(a, b, _)| a == b),
            _ => false,
        }
    }
}

impl Eq for WeightExpr {}

/// Multiplicity of the root `c` in `p`, and `p` with it divided out.
fn split_root(p: &Poly, c: &Rational) -> (i64, Poly) {
    let lin = Poly::linear_root(c);
    let mut p = p.clone();
    let mut m = 0;
    while !p.is_zero() && p.eval(c).is_zero() {
        p = p.exact_div(&lin).expect("root divides");
        m += 1;
    }
    (m, p)
}

impl WeightExpr {
    pub fn new(prefactor: RatFunc, factors: impl IntoIterator<Item = (Rational, Rational)>, exp_arg: RatFunc) -> Self {
        let mut merged: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (c, mu) in factors {
            *merged.entry(c).or_insert_with(Rational::zero) += mu;
        }
        merged.retain(|_, mu| !mu.is_zero());
        WeightExpr { prefactor, factors: merged, exp_arg }.renormalized()
    }

    pub fn zero() -> Self {
        WeightExpr { prefactor: RatFunc::zero(), factors: BTreeMap::new(), exp_arg: RatFunc::zero() }
    }

    pub fn one() -> Self {
        WeightExpr::from_ratfunc(RatFunc::one())
    }

    pub fn from_ratfunc(f: RatFunc) -> Self {
        WeightExpr::new(f, [], RatFunc::zero())
    }

    pub fn exp(arg: RatFunc) -> Self {
        WeightExpr::new(RatFunc::one(), [], arg)
    }

    pub fn prefactor(&self) -> &RatFunc {
        &self.prefactor
    }

    /// Power factors `(root, exponent)` in ascending root order.
    pub fn factors(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.factors.iter()
    }

    pub fn exp_arg(&self) -> &RatFunc {
        &self.exp_arg
    }

    pub fn is_zero(&self) -> bool {
        self.prefactor.is_zero()
    }

    /// `Σ μᵢ/(r − cᵢ) + exp_arg'`, the log-derivative of the non-rational part.
    fn transcendental_log_derivative(&self) -> RatFunc {
        self.factors
            .iter()
            .fold(self.exp_arg.derivative(), |acc, (c, mu)| &acc + &RatFunc::linear_power(c, -1).scale(mu))
    }

    pub fn derivative(&self) -> WeightExpr {
        if self.is_zero() {
            return WeightExpr::zero();
        }
        let prefactor = &self.prefactor.derivative() + &(&self.prefactor * &self.transcendental_log_derivative());
        WeightExpr { prefactor, ..self.clone() }.renormalized()
    }

    pub fn nth_derivative(&self, n: usize) -> WeightExpr {
        (0..n).fold(self.clone(), |w, _| w.derivative())
    }

    /// `w'/w` as a rational function.
    pub fn log_derivative(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = &self.prefactor;
        Ok(&p.derivative().checked_div(p)? + &self.transcendental_log_derivative())
    }

    pub fn mul_ratfunc(&self, f: &RatFunc) -> WeightExpr {
        WeightExpr { prefactor: &self.prefactor * f, ..self.clone() }.renormalized()
    }

    pub fn mul(&self, other: &WeightExpr) -> WeightExpr {
        let factors = self.factors.iter().chain(other.factors.iter()).map(|(c, m)| (c.clone(), m.clone()));
        WeightExpr::new(&self.prefactor * &other.prefactor, factors.collect::<Vec<_>>(), &self.exp_arg + &other.exp_arg)
    }

    /// Both operands rewritten over the smaller exponent at every root, so
    /// that their prefactors can be combined directly. `None` unless the two
    /// share the exponential argument and every exponent difference is integral.
    fn aligned(&self, other: &WeightExpr) -> Option<(RatFunc, RatFunc, BTreeMap<Rational, Rational>)> {
        if self.exp_arg != other.exp_arg {
            return None;
        }
        let zero = Rational::zero();
        let (mut a, mut b) = (self.prefactor.clone(), other.prefactor.clone());
        let mut low = BTreeMap::new();
        for c in self.factors.keys().chain(other.factors.keys()) {
            if low.contains_key(c) {
                continue;
            }
            let ma = self.factors.get(c).unwrap_or(&zero);
            let mb = other.factors.get(c).unwrap_or(&zero);
            let d = ma - mb;
            if !d.is_integer() {
                return None;
            }
            let e = d.to_integer().to_i64()?;
            if e > 0 {
                a = &a * &RatFunc::linear_power(c, e);
            } else if e < 0 {
                b = &b * &RatFunc::linear_power(c, -e);
            }
            low.insert(c.clone(), ma.clone().min(mb.clone()));
        }
        low.retain(|_, mu| !mu.is_zero());
        Some((a, b, low))
    }

    /// `self − other` when both belong to the same class (same exponential
    /// argument, exponents equal modulo integers).
    pub fn checked_sub(&self, other: &WeightExpr) -> Option<WeightExpr> {
        if other.is_zero() {
            return Some(self.clone());
        }
        if self.is_zero() {
            return Some(WeightExpr { prefactor: -&other.prefactor, ..other.clone() });
        }
        let (a, b, factors) = self.aligned(other)?;
        Some(WeightExpr { prefactor: &a - &b, factors, exp_arg: self.exp_arg.clone() }.renormalized())
    }

    /// Restores the canonical form after the prefactor changed: zeros and
    /// poles of the prefactor at stored roots move into the exponents.
    fn renormalized(mut self) -> WeightExpr {
        if self.prefactor.is_zero() {
            return WeightExpr::zero();
        }
        let (mut num, mut den) = (self.prefactor.num().clone(), self.prefactor.den().clone());
        let mut moved = false;
        for (c, mu) in self.factors.iter_mut() {
            let (zn, n2) = split_root(&num, c);
            let (zd, d2) = split_root(&den, c);
            if zn != 0 || zd != 0 {
                *mu += Rational::from_integer(BigInt::from(zn - zd));
                num = n2;
                den = d2;
                moved = true;
            }
        }
        self.factors.retain(|_, mu| !mu.is_zero());
        if moved {
            self.prefactor = RatFunc::new(num, den).expect("denominator stays nonzero");
        }
        self
    }

    /// `a / b` when the quotient is a polynomial.
    pub fn ratio_to_poly(a: &WeightExpr, b: &WeightExpr) -> Result<Poly> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if a.is_zero() {
            return Ok(Poly::zero());
        }
        if a.exp_arg != b.exp_arg {
            return Err(Error::NotPolynomial(format!("exponential arguments differ: {} vs {}", a.exp_arg, b.exp_arg)));
        }
        let (pa, pb, _) = a.aligned(b).ok_or_else(|| Error::NotPolynomial("non-integer exponent difference".into()))?;
        let q = pa.checked_div(&pb)?;
        q.as_poly().cloned().ok_or_else(|| Error::NotPolynomial(format!("rational remainder {q}")))
    }

    /// Floating evaluation for diagnostics. `None` where a fractional power
    /// has a negative base or the prefactor has a pole.
    pub fn eval_f64(&self, r: f64) -> Option<f64> {
        let den = self.prefactor.den().eval_f64(r);
        if den == 0.0 {
            return None;
        }
        let mut v = self.prefactor.num().eval_f64(r) / den;
        for (c, mu) in &self.factors {
            let base = r - to_f64(c);
            if base <= 0.0 {
                return None;
            }
            v *= base.powf(to_f64(mu));
        }
        let ad = self.exp_arg.den().eval_f64(r);
        if ad == 0.0 {
            return None;
        }
        Some(v * (self.exp_arg.num().eval_f64(r) / ad).exp())
    }
}

/// Builds `w` with `w'/w = f` (up to a constant multiple) from the partial
/// fractions of `f`: simple poles become power factors, higher-order poles
/// and the polynomial part go into the exponential.
pub fn integrate_log_derivative(f: &RatFunc) -> Result<WeightExpr> {
    let pf = partial_fractions(f)?;
    let mut exp_arg = RatFunc::from_poly(pf.poly_part.antiderivative());
    let mut factors = Vec::new();
    for t in &pf.terms {
        if t.order == 1 {
            factors.push((t.root.clone(), t.coefficient.clone()));
        } else {
            // ∫ a/(r−c)^m = −a / ((m−1)(r−c)^(m−1))
            let m1 = Rational::from_integer(BigInt::from(t.order - 1));
            let coeff = -(&t.coefficient / &m1);
            exp_arg = &exp_arg + &RatFunc::linear_power(&t.root, -((t.order - 1) as i64)).scale(&coeff);
        }
    }
    Ok(WeightExpr::new(RatFunc::one(), factors, exp_arg))
}

impl fmt::Display for WeightExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if !self.prefactor.as_poly().is_some_and(Poly::is_one) {
            parts.push(format!("[{}]", self.prefactor));
        }
        for (c, mu) in &self.factors {
            parts.push(format!("({})^({})", Poly::linear_root(c), format_rational(mu)));
        }
        if !self.exp_arg.is_zero() {
            parts.push(format!("exp({})", self.exp_arg));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("·"))
        }
    }
}
