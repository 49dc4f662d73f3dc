use thiserror::Error;

/// Errors raised by the numeric routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid exponent pair (m, n) = ({m}, {n}): need m > n >= 1")]
    InvalidParams { m: u32, n: u32 },

    #[error("{op} requires {requirement}, got (m, n) = ({m}, {n})")]
    Parity {
        op: &'static str,
        requirement: &'static str,
        m: u32,
        n: u32,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{what} = {value} outside [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoSignChange {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("bisection did not converge after {iterations} iterations (width {width})")]
    NoConvergence { iterations: u32, width: f64 },

    #[error("pole: denominator vanishes at {0}")]
    Pole(f64),

    #[error("({a}, {c}) lies outside the projection hexagon")]
    OutsidePi { a: f64, c: f64 },

    #[error("no supporting plane is known at ({0}, {1}, {2})")]
    UnsupportedPoint(f64, f64, f64),
}

pub type Result<T> = std::result::Result<T, Error>;
