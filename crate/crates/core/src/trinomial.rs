//! Exponent pairs and coefficient triples.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Parity regime of an exponent pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ParityCase {
    /// `m` odd.
    AOddM,
    /// `m` and `n` both even.
    BBothEven,
    /// `m` even, `n` odd.
    CEvenMOddN,
}

impl ParityCase {
    pub fn letter(self) -> &'static str {
        match self {
            ParityCase::AOddM => "A",
            ParityCase::BBothEven => "B",
            ParityCase::CEvenMOddN => "C",
        }
    }
}

impl fmt::Display for ParityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.letter())
    }
}

/// A validated exponent pair `m > n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TrinomialParams {
    m: u32,
    n: u32,
    parity: ParityCase,
}

impl TrinomialParams {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if n < 1 || m <= n || m > 1 << 20 {
            return Err(Error::InvalidParams { m, n });
        }
        let parity = if m % 2 == 1 {
            ParityCase::AOddM
        } else if n.is_multiple_of(2) {
            ParityCase::BBothEven
        } else {
            ParityCase::CEvenMOddN
        };
        Ok(TrinomialParams { m, n, parity })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn parity(&self) -> ParityCase {
        self.parity
    }

    /// The pair `(m, m - n)`; the swap `a <-> c` is an isometry between the two.
    pub fn swapped(&self) -> TrinomialParams {
        TrinomialParams::new(self.m, self.m - self.n).expect("m - n is a valid partner")
    }
}

/// `a x^m + b x^(m-n) y^n + c y^m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Trinomial {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub params: TrinomialParams,
}

impl Trinomial {
    pub fn new(a: f64, b: f64, c: f64, params: TrinomialParams) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::Domain(format!(
                "non-finite coefficients ({a}, {b}, {c})"
            )));
        }
        Ok(Trinomial { a, b, c, params })
    }

    pub fn coeffs(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    /// Value at `(x, y)`.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let m = self.params.m as i32;
        let n = self.params.n as i32;
        self.a * x.powi(m) + self.b * x.powi(m - n) * y.powi(n) + self.c * y.powi(m)
    }

    /// The same polynomial written in the swapped pair: `(c, b, a)` over `(m, m - n)`.
    pub fn swapped(&self) -> Trinomial {
        Trinomial {
            a: self.c,
            b: self.b,
            c: self.a,
            params: self.params.swapped(),
        }
    }

    pub fn scaled(&self, s: f64) -> Trinomial {
        Trinomial {
            a: s * self.a,
            b: s * self.b,
            c: s * self.c,
            params: self.params,
        }
    }
}
