use crate::rational::Rational;
use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("comparison value {value} of ({i},{j}) by individual {p} lies outside [{min}, {max}]")]
    BoundViolation {
        p: usize,
        i: usize,
        j: usize,
        value: String,
        min: String,
        max: String,
    },
    #[error("entry ({i},{j}) of individual {p} has no paired entry ({j},{i})")]
    UnpairedEntry { p: usize, i: usize, j: usize },
    #[error("duplicate entry ({i},{j}) for individual {p}")]
    DuplicateEntry { p: usize, i: usize, j: usize },
    #[error("self-comparison ({i},{i}) for individual {p} is not allowed")]
    SelfComparison { p: usize, i: usize },
    #[error("index out of range: {what} = {got} (valid range {min}..={max})")]
    BadIndex {
        what: &'static str,
        got: usize,
        min: usize,
        max: usize,
    },
    #[error("enumeration over n = {n} exceeds the configured cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("method {method} requires parameter {param}")]
    MissingParameter {
        method: &'static str,
        param: &'static str,
    },
    #[error("array is not skew-symmetric: r_ji != -r_ij for ({i},{j}) of individual {p}")]
    NotSkewSymmetric { p: usize, i: usize, j: usize },
    #[error("epsilon must be non-negative")]
    NegativeEpsilon,
    #[error("the reasonable-epsilon bound 1/(m(n-2)) is undefined for n = {n}")]
    DegenerateN { n: usize },
    #[error("no outcome ({i},{k}) recorded for individual {p}")]
    UndefinedOutcome { p: usize, i: usize, k: usize },
    #[error("bad fixture parameter: {0}")]
    BadParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn bounds(
        p: usize,
        i: usize,
        j: usize,
        value: &Rational,
        min: &Rational,
        max: &Rational,
    ) -> Self {
        Error::BoundViolation {
            p,
            i,
            j,
            value: crate::rational::format_rational(value),
            min: crate::rational::format_rational(min),
            max: crate::rational::format_rational(max),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
