use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Poly, RatFunc, Rational};
use crate::{Error, Result};

/// One term `coefficient / (r − root)^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialTerm {
    pub root: Rational,
    pub order: usize,
    pub coefficient: Rational,
}

/// `poly_part + Σ coefficient/(r − root)^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractionForm {
    pub poly_part: Poly,
    pub terms: Vec<PartialTerm>,
}

impl PartialFractionForm {
    pub fn reassemble(&self) -> RatFunc {
        self.terms.iter().fold(RatFunc::from_poly(self.poly_part.clone()), |acc, t| {
            &acc + &RatFunc::linear_power(&t.root, -(t.order as i64)).scale(&t.coefficient)
        })
    }
}

/// Rational roots with multiplicity, sorted ascending, plus the cofactor left
/// after deflating them (monic; constant when `p` splits over Q).
pub fn rational_roots(p: &Poly) -> Result<(Vec<(Rational, usize)>, Poly)> {
    if p.is_zero() {
        return Err(Error::InvalidInput("roots of the zero polynomial".into()));
    }
    let mut rest = p.monic();
    let mut roots = Vec::new();

    let zero = Rational::zero();
    let mut m = 0;
    while rest.degree().unwrap_or(0) > 0 && rest.coeff(0).is_zero() {
        rest = rest.exact_div(&Poly::x()).expect("r divides");
        m += 1;
    }
    if m > 0 {
        roots.push((zero, m));
    }

    while rest.degree().unwrap_or(0) > 0 {
        if rest.degree() == Some(1) {
            let c = -rest.coeff(0) / rest.coeff(1);
            push_root(&mut roots, c);
            rest = Poly::one();
            break;
        }
        let ints = integer_primitive(&rest);
        let lead = ints.last().expect("nonzero").abs();
        let constant = ints[0].abs();
        let mut found = None;
        'search: for q in divisors(&lead) {
            for pnum in divisors(&constant) {
                for sign in [1, -1] {
                    let cand = Rational::new(&pnum * BigInt::from(sign), q.clone());
                    if rest.eval(&cand).is_zero() {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        let Some(c) = found else { break };
        rest = rest.exact_div(&Poly::linear_root(&c)).expect("root divides");
        push_root(&mut roots, c);
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok((roots, rest))
}

fn push_root(roots: &mut Vec<(Rational, usize)>, c: Rational) {
    match roots.iter_mut().find(|(r, _)| *r == c) {
        Some((_, m)) => *m += 1,
        None => roots.push((c, 1)),
    }
}

fn integer_primitive(p: &Poly) -> Vec<BigInt> {
    let l = p.denominator_lcm();
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= *n {
        if (n % &i).is_zero() {
            let j = n / &i;
            if j != i {
                large.push(j);
            }
            small.push(i.clone());
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Exact partial-fraction decomposition over rational linear factors.
pub fn partial_fractions(f: &RatFunc) -> Result<PartialFractionForm> {
    let (poly_part, rem) = f.num().div_rem(f.den())?;
    let (roots, cofactor) = rational_roots(f.den())?;
    if !cofactor.is_constant() {
        return Err(Error::UnsupportedDenominator(cofactor.to_string()));
    }
    let mut terms = Vec::new();
    if rem.is_zero() {
        return Ok(PartialFractionForm { poly_part, terms });
    }
    for (c, mult) in &roots {
        let local = Poly::linear_root(c).pow(*mult as u32);
        let other = f.den().exact_div(&local).expect("factor divides");
        // Laurent coefficients at c: expand rem(c+t)/other(c+t) to `mult` terms.
        let n = rem.shift(c);
        let d = other.shift(c);
        let series = series_div(&n, &d, *mult);
        for (i, g) in series.into_iter().enumerate() {
            if !g.is_zero() {
                terms.push(PartialTerm { root: c.clone(), order: mult - i, coefficient: g });
            }
        }
    }
    terms.sort_by(|a, b| a.root.cmp(&b.root).then(a.order.cmp(&b.order)));
    Ok(PartialFractionForm { poly_part, terms })
}

/// First `len` power-series coefficients of `n/d` at 0, assuming `d(0) ≠ 0`.
fn series_div(n: &Poly, d: &Poly, len: usize) -> Vec<Rational> {
    let d0_inv = d.coeff(0).recip();
    let mut out: Vec<Rational> = Vec::with_capacity(len);
    for i in 0..len {
        let mut acc = n.coeff(i);
        for (j, o) in out.iter().enumerate() {
            acc -= o * d.coeff(i - j);
        }
        out.push(acc * &d0_inv);
    }
    out
}
