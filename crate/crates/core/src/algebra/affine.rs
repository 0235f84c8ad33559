use std::fmt;

use num_traits::Zero;

use super::{format_rational, Poly, RatFunc, Rational};
use crate::Result;

/// `constant + param·p` for one scalar parameter `p`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Affine {
    pub constant: Rational,
    pub param: Rational,
}

impl Affine {
    pub fn new(constant: Rational, param: Rational) -> Self {
        Affine { constant, param }
    }

    pub fn constant(c: Rational) -> Self {
        Affine { constant: c, param: Rational::zero() }
    }

    pub fn eval(&self, p: &Rational) -> Rational {
        &self.constant + &self.param * p
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.param.is_zero()
    }

    pub fn depends_on_param(&self) -> bool {
        !self.param.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Affine {
        Affine { constant: &self.constant * c, param: &self.param * c }
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.constant.is_zero(), self.param.is_zero()) {
            (_, true) => write!(f, "{}", format_rational(&self.constant)),
            (true, false) => write!(f, "{}·p", format_rational(&self.param)),
            (false, false) => write!(f, "{} + {}·p", format_rational(&self.constant), format_rational(&self.param)),
        }
    }
}

/// Polynomial in `r` whose coefficients are affine in the parameter.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AffinePoly {
    constant: Poly,
    param: Poly,
}

impl AffinePoly {
    /// `constant(r) + p·param(r)`.
    pub fn new(constant: Poly, param: Poly) -> Self {
        AffinePoly { constant, param }
    }

    pub fn from_poly(p: Poly) -> Self {
        AffinePoly { constant: p, param: Poly::zero() }
    }

    pub fn from_coeffs(coeffs: Vec<Affine>) -> Self {
        let (c, p): (Vec<_>, Vec<_>) = coeffs.into_iter().map(|a| (a.constant, a.param)).unzip();
        AffinePoly { constant: Poly::from_coeffs(c), param: Poly::from_coeffs(p) }
    }

    pub fn constant_part(&self) -> &Poly {
        &self.constant
    }

    pub fn param_part(&self) -> &Poly {
        &self.param
    }

    pub fn coeff(&self, i: usize) -> Affine {
        Affine::new(self.constant.coeff(i), self.param.coeff(i))
    }

    /// Largest degree reached for any parameter value.
    pub fn max_degree(&self) -> Option<usize> {
        self.constant.degree().max(self.param.degree())
    }

    pub fn depends_on_param(&self) -> bool {
        !self.param.is_zero()
    }

    pub fn eval(&self, p: &Rational) -> Poly {
        &self.constant + &self.param.scale(p)
    }

    pub fn mul_poly(&self, q: &Poly) -> AffinePoly {
        AffinePoly { constant: &self.constant * q, param: &self.param * q }
    }

    pub fn scale(&self, c: &Rational) -> AffinePoly {
        AffinePoly { constant: self.constant.scale(c), param: self.param.scale(c) }
    }
}

/// Rational function with parameter-affine numerator and denominator coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineRatFunc {
    pub num: AffinePoly,
    pub den: AffinePoly,
}

impl AffineRatFunc {
    pub fn new(num: AffinePoly, den: AffinePoly) -> Self {
        AffineRatFunc { num, den }
    }

    /// Substitutes the parameter and normalizes.
    pub fn eval(&self, p: &Rational) -> Result<RatFunc> {
        RatFunc::new(self.num.eval(p), self.den.eval(p))
    }

    pub fn depends_on_param(&self) -> bool {
        self.num.depends_on_param() || self.den.depends_on_param()
    }
}
