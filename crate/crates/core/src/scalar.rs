//! Real powers with rational exponents and a guarded bisection root finder.
//!
//! Negative bases are admitted only for exponents whose reduced denominator
//! is odd; the result is then the real root, `sign(t)^num * |t|^(num/den)`.

use std::fmt;
use std::ops::Add;

use serde::Serialize;

use crate::error::{Error, Result};

/// A reduced fraction `num / den` with `den >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RationalExponent {
    num: i64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl RationalExponent {
    /// Builds the canonical (gcd-reduced) form of `num / den`.
    ///
    /// Panics if `den == 0`.
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "rational exponent with zero denominator");
        let g = gcd(num.unsigned_abs(), den).max(1);
        RationalExponent {
            num: num / g as i64,
            den: den / g,
        }
    }

    /// Shorthand for the ratio `p / q` of two positive integers.
    pub fn ratio(p: u32, q: u32) -> Self {
        Self::new(i64::from(p), u64::from(q))
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// True when negative bases are admissible.
    pub fn odd_denominator(&self) -> bool {
        self.den % 2 == 1
    }
}

impl Add for RationalExponent {
    type Output = RationalExponent;

    fn add(self, rhs: Self) -> Self {
        let den = self.den / gcd(self.den, rhs.den) * rhs.den;
        let num = self.num * (den / self.den) as i64 + rhs.num * (den / rhs.den) as i64;
        RationalExponent::new(num, den)
    }
}

impl fmt::Display for RationalExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// `t^e` under the odd-denominator real-root convention.
pub fn signed_pow(t: f64, e: RationalExponent) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::Domain(format!("non-finite base {t}")));
    }
    if t == 0.0 {
        return if e.num > 0 {
            Ok(0.0)
        } else {
            Err(Error::Domain(format!("0^({e}) is undefined")))
        };
    }
    if t < 0.0 && !e.odd_denominator() {
        return Err(Error::Domain(format!(
            "negative base {t} with even-denominator exponent {e}"
        )));
    }
    let magnitude = if e.den == 1 && e.num.unsigned_abs() <= i32::MAX as u64 {
        t.abs().powi(e.num as i32)
    } else {
        t.abs().powf(e.value())
    };
    if t < 0.0 && e.num % 2 != 0 {
        Ok(-magnitude)
    } else {
        Ok(magnitude)
    }
}

/// A bracketing interval `[lo, hi]` on which `f` changes sign (or vanishes).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootBracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl RootBracket {
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        if lo.is_nan()
            || hi.is_nan()
            || lo >= hi
            || !f_lo.is_finite()
            || !f_hi.is_finite()
            || f_lo * f_hi > 0.0
        {
            return Err(Error::NoSignChange { lo, hi, f_lo, f_hi });
        }
        Ok(RootBracket { lo, hi, f_lo, f_hi })
    }

    /// Evaluates `f` at both ends and validates the sign change.
    pub fn around<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, f(lo), f(hi))
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Stopping rule for [`bisect`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub x: f64,
    pub f: f64,
    pub max_iter: u32,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            x: 1e-14,
            f: 1e-12,
            max_iter: 200,
        }
    }
}

/// Bisection on a validated bracket.
///
/// Halves until the bracket is no wider than `tol.x`, the midpoint is an
/// exact zero, or no double lies strictly inside the bracket. The returned
/// point always lies in the initial bracket and satisfies
/// `|f(x)| <= tol.f` or a final width `<= tol.x`; anything else is reported
/// as non-convergence.
pub fn bisect<F: Fn(f64) -> f64>(f: F, bracket: RootBracket, tol: Tolerances) -> Result<f64> {
    if !(tol.x > 0.0 && tol.f > 0.0) {
        return Err(Error::Domain(
            "bisection tolerances must be positive".into(),
        ));
    }
    if bracket.f_lo == 0.0 {
        return Ok(bracket.lo);
    }
    if bracket.f_hi == 0.0 {
        return Ok(bracket.hi);
    }
    let (mut lo, mut hi) = (bracket.lo, bracket.hi);
    let lo_negative = bracket.f_lo < 0.0;
    for _ in 0..tol.max_iter {
        let mid = lo + 0.5 * (hi - lo);
        if hi - lo <= tol.x || mid <= lo || mid >= hi {
            let width = hi - lo;
            if width <= tol.x || f(mid).abs() <= tol.f {
                return Ok(mid);
            }
            return Err(Error::NoConvergence {
                iterations: tol.max_iter,
                width,
            });
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NoConvergence {
        iterations: tol.max_iter,
        width: hi - lo,
    })
}

/// Scans `n` uniform sub-intervals of `[lo, hi]` and returns the first one
/// with a sign change. Used as a fallback when an analytic bracket fails.
pub fn scan_bracket<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize) -> Result<RootBracket> {
    let step = (hi - lo) / n as f64;
    let mut x0 = lo;
    let mut f0 = f(x0);
    for i in 1..=n {
        let x1 = if i == n { hi } else { lo + step * i as f64 };
        let f1 = f(x1);
        if f0 == 0.0 || f0 * f1 < 0.0 || f1 == 0.0 {
            return RootBracket::new(x0, x1, f0, f1);
        }
        x0 = x1;
        f0 = f1;
    }
    Err(Error::NoSignChange {
        lo,
        hi,
        f_lo: f(lo),
        f_hi: f(hi),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn newton_cbrt(v: f64) -> f64 {
        let mut y = 1.0;
        for _ in 0..60 {
            y -= (y * y * y - v) / (3.0 * y * y);
        }
        y
    }

    #[test]
    fn exponent_is_reduced() {
        let e = RationalExponent::new(10, 4);
        assert_eq!((e.num(), e.den()), (5, 2));
        let e = RationalExponent::new(-6, 9);
        assert_eq!((e.num(), e.den()), (-2, 3));
        assert_eq!(RationalExponent::new(0, 7), RationalExponent::new(0, 1));
    }

    #[test]
    fn exponent_addition() {
        let s = RationalExponent::new(1, 3) + RationalExponent::new(1, 6);
        assert_eq!(s, RationalExponent::new(1, 2));
    }

    #[test]
    fn signed_pow_examples() {
        assert_eq!(signed_pow(-1.0, RationalExponent::new(10, 7)).unwrap(), 1.0);
        assert_eq!(signed_pow(0.0, RationalExponent::new(3, 10)).unwrap(), 0.0);
        let oracle = -newton_cbrt(0.5);
        let got = signed_pow(-0.5, RationalExponent::new(1, 3)).unwrap();
        assert!((got - oracle).abs() < 1e-15);
        assert!((got + 0.793_700_525_98).abs() < 1e-11);
    }

    #[test]
    fn signed_pow_errors() {
        assert!(matches!(
            signed_pow(-2.0, RationalExponent::new(1, 2)),
            Err(Error::Domain(_))
        ));
        assert!(signed_pow(0.0, RationalExponent::new(-1, 3)).is_err());
        assert!(signed_pow(0.0, RationalExponent::new(0, 1)).is_err());
        assert!(signed_pow(f64::NAN, RationalExponent::new(1, 1)).is_err());
    }

    #[test]
    fn bisect_examples() {
        let tol = Tolerances {
            x: 1e-12,
            ..Tolerances::default()
        };
        let f = |x: f64| x * x - 2.0;
        let r = bisect(f, RootBracket::around(f, 1.0, 2.0).unwrap(), tol).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-12);

        let id = |x: f64| x;
        let r = bisect(id, RootBracket::around(id, -1.0, 1.0).unwrap(), tol).unwrap();
        assert_eq!(r, 0.0);

        let g = |x: f64| x * x * x - 0.5;
        let r = bisect(
            g,
            RootBracket::around(g, 0.0, 1.0).unwrap(),
            Tolerances::default(),
        )
        .unwrap();
        assert!((r - newton_cbrt(0.5)).abs() < 1e-13);
    }

    #[test]
    fn bracket_rejects_missing_sign_change() {
        let f = |x: f64| x * x + 1.0;
        assert!(matches!(
            RootBracket::around(f, -1.0, 1.0),
            Err(Error::NoSignChange { .. })
        ));
        assert!(RootBracket::new(1.0, 1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn bisect_reports_non_convergence() {
        // Jump discontinuity: the bracket shrinks to nothing but |f| stays 1.
        let step = |x: f64| if x < 0.3 { -1.0 } else { 1.0 };
        let b = RootBracket::around(step, 0.0, 1.0).unwrap();
        let tol = Tolerances {
            x: 1e-300,
            f: 1e-12,
            max_iter: 20,
        };
        assert!(matches!(
            bisect(step, b, tol),
            Err(Error::NoConvergence { .. })
        ));
    }

    #[test]
    fn scan_finds_first_crossing() {
        let f = |x: f64| (x - 0.25) * (x - 0.75);
        let b = scan_bracket(f, 0.0, 1.0, 10).unwrap();
        assert!(b.lo <= 0.25 && 0.25 <= b.hi);
    }
}
