use thiserror::Error;

use crate::algebra::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rational: zero denominator")]
    InvalidRational,
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator has a factor with no rational roots: {0}")]
    UnsupportedDenominator(String),
    #[error("quotient is not a polynomial: {0}")]
    NotPolynomial(String),
    #[error("pole at evaluation point r = {0}")]
    EvaluationPole(Rational),
    /// Boxed so the error stays small on the hot `Result` paths.
    #[error("no sign change of the quantization determinant in ({}, {})", .0.0, .0.1)]
    NoRootInBracket(Box<(Rational, Rational)>),
    #[error("not of hypergeometric type: {0}")]
    NotHypergeometricType(String),
    #[error("parameter coefficient vanishes at n = {0}; eigenvalue undetermined")]
    DegenerateParameterMap(u32),
    #[error("no rational k makes the radicand a perfect square")]
    NoRationalReduction,
    #[error("{0} candidate branches satisfy tau' < 0; select one explicitly")]
    AmbiguousBranch(usize),
    #[error("branch index {index} out of range ({count} candidates)")]
    BranchOutOfRange { index: usize, count: usize },
    #[error("degenerate spectrum: gamma_{n} equals gamma_{m}")]
    DegenerateSpectrum { n: u32, m: u32 },
    #[error("no degree-{0} polynomial solution for the computed gamma")]
    InconsistentGamma(u32),
    #[error("{0} is out of range")]
    OutOfRange(String),
    #[error("Pochhammer pole: lower parameter {0} hits a non-positive integer")]
    PochhammerPole(Rational),
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
}
