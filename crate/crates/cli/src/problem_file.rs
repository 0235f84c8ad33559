//! JSON problem definitions.
//!
//! ```json
//! {
//!   "name": "hermite",
//!   "tau": {"r1": {"const": "-2", "param": "0"}, "r0": {"const": "0", "param": "0"}},
//!   "sigma": ["1", "0", "0"],
//!   "gamma": {"const": "0", "param": "2"},
//!   "parameter": "k",
//!   "domain": ["-inf", "inf"],
//!   "evalPoint": "1"
//! }
//! ```

use aimnu::aim::Domain;
use aimnu::algebra::{format_rational, parse_rational, Affine, AffinePoly, Poly, Rational};
use aimnu::hypergeometric::HypergeometricProblem;
use aimnu::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AffineField {
    #[serde(rename = "const")]
    pub constant: String,
    pub param: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TauField {
    pub r1: AffineField,
    pub r0: AffineField,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ProblemFile {
    pub name: String,
    pub tau: TauField,
    pub sigma: Vec<String>,
    pub gamma: AffineField,
    pub parameter: String,
    pub domain: [String; 2],
    pub eval_point: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NuFile {
    pub tau_tilde: Vec<String>,
    pub sigma: Vec<String>,
    pub sigma_tilde: Vec<String>,
}

fn affine(f: &AffineField) -> Result<Affine> {
    Ok(Affine::new(parse_rational(&f.constant)?, parse_rational(&f.param)?))
}

fn affine_field(a: &Affine) -> AffineField {
    AffineField { constant: format_rational(&a.constant), param: format_rational(&a.param) }
}

pub fn poly_from_strings(coeffs: &[String]) -> Result<Poly> {
    Ok(Poly::from_coeffs(coeffs.iter().map(|c| parse_rational(c)).collect::<Result<_>>()?))
}

fn bound(s: &str) -> Result<Option<Rational>> {
    match s.trim() {
        "-inf" | "inf" | "+inf" => Ok(None),
        other => parse_rational(other).map(Some),
    }
}

fn bound_string(b: &Option<Rational>, infinite: &str) -> String {
    b.as_ref().map_or_else(|| infinite.to_string(), format_rational)
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("problem file: {e}")))
    }

    pub fn to_problem(&self) -> Result<HypergeometricProblem> {
        let tau = AffinePoly::from_coeffs(vec![affine(&self.tau.r0)?, affine(&self.tau.r1)?]);
        let sigma = poly_from_strings(&self.sigma)?;
        let domain = Domain::new(bound(&self.domain[0])?, bound(&self.domain[1])?);
        HypergeometricProblem::new(
            self.name.clone(),
            tau,
            sigma,
            affine(&self.gamma)?,
            self.parameter.clone(),
            domain,
            parse_rational(&self.eval_point)?,
        )
    }

    pub fn from_problem(p: &HypergeometricProblem) -> Self {
        let mut sigma: Vec<String> = p.sigma.coeffs().iter().map(format_rational).collect();
        sigma.resize(3, "0".to_string());
        ProblemFile {
            name: p.name.clone(),
            tau: TauField { r1: affine_field(&p.tau.coeff(1)), r0: affine_field(&p.tau.coeff(0)) },
            sigma,
            gamma: affine_field(&p.gamma),
            parameter: p.parameter_name.clone(),
            domain: [bound_string(&p.domain.lo, "-inf"), bound_string(&p.domain.hi, "inf")],
            eval_point: format_rational(&p.eval_point),
        }
    }
}

impl NuFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("NU problem file: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use aimnu::catalog::catalog_get;
    use std::collections::BTreeMap;

    #[test]
    fn catalog_entries_round_trip() {
        for e in aimnu::catalog::entries() {
            let p = catalog_get(e.name, &BTreeMap::new()).unwrap();
            let text = serde_json::to_string(&ProblemFile::from_problem(&p)).unwrap();
            let back = ProblemFile::parse(&text).unwrap().to_problem().unwrap();
            assert_eq!(back, p, "{}", e.name);
        }
    }

    #[test]
    fn rejects_floats() {
        let text = r#"{"name":"x","tau":{"r1":{"const":"-2.0","param":"0"},"r0":{"const":"0","param":"0"}},
            "sigma":["1"],"gamma":{"const":"0","param":"2"},"parameter":"k","domain":["-inf","inf"],"evalPoint":"1"}"#;
        assert!(ProblemFile::parse(text).unwrap().to_problem().is_err());
    }
}
