use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, Rational};
use crate::{Error, Result};

/// Univariate polynomial in `r` with exact rational coefficients, lowest degree first.
///
/// The zero polynomial is the empty coefficient list and has no degree
/// ([`Poly::degree`] returns `None`, standing in for −∞).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The monomial `r`.
    pub fn x() -> Self {
        Poly::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, power: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = c;
        Poly::from_coeffs(coeffs)
    }

    /// `r − c`.
    pub fn linear_root(c: &Rational) -> Self {
        Poly::from_coeffs(vec![-c.clone(), Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// True when the polynomial is zero or has degree at most `d`.
    pub fn degree_at_most(&self, d: usize) -> bool {
        self.coeffs.len() <= d + 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Coefficient of `r^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(BigInt::from(i))).collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Poly {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Poly {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(self.coeffs.iter().enumerate().map(|(i, c)| c / Rational::from_integer(BigInt::from(i + 1))));
        Poly::from_coeffs(coeffs)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + super::to_f64(c))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `p(r + c)`, the Taylor shift.
    pub fn shift(&self, c: &Rational) -> Poly {
        // Horner in the shifted variable.
        let t = Poly::from_coeffs(vec![c.clone(), Rational::one()]);
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, a| &(&acc * &t) + &Poly::constant(a.clone()))
    }

    /// Euclidean division: `self = q·d + rem` with `deg rem < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = d.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        match self.div_rem(d) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Monic greatest common divisor. Fails only when both inputs are zero.
    pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::InvalidInput("gcd of two zero polynomials".into()));
        }
        let mut x = a.monic();
        let mut y = b.monic();
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y)?;
            x = y;
            y = r.monic();
        }
        Ok(x.monic())
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Exact square root when `self` is the square of a polynomial over Q.
    /// Returns the root with positive leading coefficient.
    pub fn sqrt(&self) -> Option<Poly> {
        let Some(deg) = self.degree() else {
            return Some(Poly::zero());
        };
        if deg % 2 == 1 {
            return None;
        }
        let m = deg / 2;
        let lead_root = rational_sqrt(&self.coeffs[deg])?;
        // Coefficients of the root from the top down.
        let mut root = vec![Rational::zero(); m + 1];
        root[m] = lead_root.clone();
        let two_lead = &lead_root * Rational::from_integer(2.into());
        for k in (0..m).rev() {
            // Coefficient of r^(m + k) in root²: 2·root[m]·root[k] + Σ root[i]·root[j], i+j=m+k, i,j in (k, m).
            let target = &self.coeffs[m + k];
            let mut acc = Rational::zero();
            for i in (k + 1)..m {
                let j = m + k - i;
                if j > k && j < m {
                    acc += &root[i] * &root[j];
                }
            }
            root[k] = (target - acc) / &two_lead;
        }
        let root = Poly::from_coeffs(root);
        (&root * &root == *self).then_some(root)
    }
}

/// Square root of a non-negative rational when it is a perfect square.
pub(crate) fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().magnitude().sqrt();
    let d = q.denom().magnitude().sqrt();
    let r = Rational::new(BigInt::from(n), BigInt::from(d));
    (&r * &r == *q).then_some(r)
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly { (&self).$m(rhs) }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                if mag.denom().is_one() {
                    write!(f, "{}", format_rational(&mag))?;
                } else {
                    write!(f, "({})", format_rational(&mag))?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "r")?,
                _ => write!(f, "r^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(p(&[0, 0, 0]), Poly::zero());
        assert_eq!(p(&[7]).degree(), Some(0));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p(&[0, 0, 1]).derivative(), p(&[0, 2]));
        assert_eq!(p(&[7]).derivative(), Poly::zero());
        let q = Poly::from_coeffs(vec![rat(0, 1), rat(-1, 1), rat(1, 4)]);
        assert_eq!(q.derivative(), Poly::from_coeffs(vec![rat(-1, 1), rat(1, 2)]));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(Poly::gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(Poly::gcd(&p(&[0, 0, 0, 1]), &p(&[0, 0, 1])).unwrap(), p(&[0, 0, 1]));
        assert_eq!(Poly::gcd(&p(&[1, 1]), &p(&[2, 1])).unwrap(), Poly::one());
        assert!(Poly::gcd(&Poly::zero(), &Poly::zero()).is_err());
        assert_eq!(Poly::gcd(&Poly::zero(), &p(&[2, 4])).unwrap(), Poly::from_coeffs(vec![rat(1, 2), rat(1, 1)]));
    }

    #[test]
    fn division_and_shift() {
        let (q, r) = p(&[1, 0, 0, 1]).div_rem(&p(&[1, 1])).unwrap();
        assert_eq!(q, p(&[1, -1, 1]));
        assert!(r.is_zero());
        assert!(p(&[1]).div_rem(&Poly::zero()).is_err());
        // (r+1)^2 shifted by -1 is r^2
        assert_eq!(p(&[1, 2, 1]).shift(&rat(-1, 1)), p(&[0, 0, 1]));
    }

    #[test]
    fn sqrt_of_squares() {
        let s = p(&[3, -2]);
        assert_eq!((&s * &s).sqrt().unwrap(), p(&[-3, 2]));
        assert_eq!(p(&[4]).sqrt().unwrap(), p(&[2]));
        assert!(p(&[2]).sqrt().is_none());
        assert!(p(&[1, 0, -1]).sqrt().is_none());
        assert!(p(&[0, 1]).sqrt().is_none());
        let q = Poly::from_coeffs(vec![rat(1, 9), rat(1, 3), rat(1, 4)]);
        assert_eq!(q.sqrt().unwrap(), Poly::from_coeffs(vec![rat(1, 3), rat(1, 2)]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-2, 0, 4]).to_string(), "4r^2 - 2");
        assert_eq!(Poly::from_coeffs(vec![rat(-1, 1), rat(1, 2)]).to_string(), "(1/2)r - 1");
        assert_eq!(p(&[0, -1]).to_string(), "-r");
    }
}
