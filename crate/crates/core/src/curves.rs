//! Named constants and the implicit curves that bound the formula regions.
//!
//! Everything here is parametrized by an exponent pair; the `Case*Constants`
//! types compute the pair-dependent numbers once and expose the curves as
//! methods. The free functions are thin wrappers for one-off use.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{bisect, scan_bracket, RootBracket, Tolerances};
use crate::trinomial::{ParityCase, TrinomialParams};

/// `(n/(m-n)) ((m-n)/m)^(m/n)`.
pub fn k_const(m: u32, n: u32) -> f64 {
    let (m, n) = (f64::from(m), f64::from(n));
    n / (m - n) * ((m - n) / m).powf(m / n)
}

/// `(m/(m-n)) ((m-n)/n)^(n/m)`.
pub fn l_const(m: u32, n: u32) -> f64 {
    let (m, n) = (f64::from(m), f64::from(n));
    m / (m - n) * ((m - n) / n).powf(n / m)
}

/// `(m/n) (n/(m-n))^((m-n)/m)`.
pub fn j_const(m: u32, n: u32) -> f64 {
    let (m, n) = (f64::from(m), f64::from(n));
    m / n * (n / (m - n)).powf((m - n) / m)
}

/// A point on a solved curve together with how well it solves its equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveSolution {
    pub input: f64,
    pub output: f64,
    pub residual: f64,
    pub bracket: RootBracket,
}

fn solve<F: Fn(f64) -> f64>(f: F, input: f64, lo: f64, hi: f64) -> Result<CurveSolution> {
    let bracket = match RootBracket::around(&f, lo, hi) {
        Ok(b) => b,
        Err(_) => scan_bracket(&f, lo, hi, 10_000)?,
    };
    let output = bisect(&f, bracket, Tolerances::default())?;
    Ok(CurveSolution {
        input,
        output,
        residual: f(output),
        bracket,
    })
}

fn require_case_c(op: &'static str, m: u32, n: u32) -> Result<TrinomialParams> {
    let p = TrinomialParams::new(m, n)?;
    if p.parity() != ParityCase::CEvenMOddN || m < 2 * n {
        return Err(Error::Parity {
            op,
            requirement: "m even, n odd, m >= 2n",
            m,
            n,
        });
    }
    Ok(p)
}

fn check_range(what: &'static str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if value.is_nan() || value < lo || value > hi {
        return Err(Error::OutOfRange {
            what,
            value,
            lo,
            hi,
        });
    }
    Ok(())
}

/// `|n + m x| - (m-n) |x|^(m/(m-n))`; its three real zeros are `-1`, `lambda0`, `lambda1`.
pub fn prop11_residual(m: u32, n: u32, x: f64) -> f64 {
    let (mf, nf) = (f64::from(m), f64::from(n));
    (nf + mf * x).abs() - (mf - nf) * x.abs().powf(mf / (mf - nf))
}

/// The zeros `lambda0 in (-n/m, 0)` and `lambda1 > 0` of [`prop11_residual`].
pub fn prop11_roots(m: u32, n: u32) -> Result<(f64, f64)> {
    TrinomialParams::new(m, n)?;
    let h = |x: f64| prop11_residual(m, n, x);
    let lo = -f64::from(n) / f64::from(m);
    let lambda0 = bisect(h, RootBracket::around(h, lo, 0.0)?, Tolerances::default())?;
    let mut hi = 1.0;
    while h(hi) >= 0.0 {
        hi *= 2.0;
        if hi > 1e12 {
            return Err(Error::NoSignChange {
                lo: 0.0,
                hi,
                f_lo: h(0.0),
                f_hi: h(hi),
            });
        }
    }
    let lambda1 = bisect(h, RootBracket::around(h, 0.0, hi)?, Tolerances::default())?;
    Ok((lambda0, lambda1))
}

/// `lambda0` of the pair `(m, m-n)`, for `m` odd and `n` even.
pub fn mu0(m: u32, n: u32) -> Result<f64> {
    let p = TrinomialParams::new(m, n)?;
    if p.parity() != ParityCase::AOddM || !n.is_multiple_of(2) {
        return Err(Error::Parity {
            op: "mu0",
            requirement: "m odd, n even",
            m,
            n,
        });
    }
    Ok(prop11_roots(m, m - n)?.0)
}

/// `(m-n) |t|^(m/(m-n)) + (2n-m) t - n`.
pub fn tau0_residual(m: u32, n: u32, t: f64) -> f64 {
    let (mf, nf) = (f64::from(m), f64::from(n));
    (mf - nf) * t.abs().powf(mf / (mf - nf)) + (2.0 * nf - mf) * t - nf
}

/// The zero of [`tau0_residual`] in `[-1, 0)`.
pub fn tau0(m: u32, n: u32) -> Result<f64> {
    require_case_c("tau0", m, n)?;
    if m == 2 * n {
        return Ok(-1.0);
    }
    let q = |t: f64| tau0_residual(m, n, t);
    bisect(q, RootBracket::around(q, -1.0, 0.0)?, Tolerances::default())
}

/// `1 / (1 + ((1-a)/a)^((m-n)/n))` with a minus sign, written to stay finite at `a = 1`.
pub fn upsilon_value(m: u32, n: u32, a: f64) -> f64 {
    let p = f64::from(m - n) / f64::from(n);
    let ap = a.powf(p);
    -ap / ((1.0 - a).powf(p) + ap)
}

/// Pair-dependent numbers for `m` even, `n` odd, `m >= 2n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CaseCConstants {
    pub m: u32,
    pub n: u32,
    pub k_mn: f64,
    pub k_m_mn: f64,
    pub j_mn: f64,
    pub j_m_mn: f64,
    pub lambda0: f64,
    pub tau0: f64,
    pub b_max: f64,
    pub a0: f64,
    pub c0: f64,
    pub a1: f64,
    pub c1: f64,
}

impl CaseCConstants {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        require_case_c("case C constants", m, n)?;
        let (mf, nf) = (f64::from(m), f64::from(n));
        let lambda0 = nf / (mf - nf);
        let a0 = nf / mf;
        let j_mn = j_const(m, n);
        let a1 = if m == 2 * n {
            a0
        } else {
            let psi = |a: f64| {
                j_mn * (1.0 - a).powf((mf - nf) / mf) * (1.0 - lambda0 * a).powf(nf / mf)
                    - (1.0 + lambda0) * a
            };
            bisect(
                psi,
                RootBracket::around(psi, a0, 1.0)?,
                Tolerances::default(),
            )?
        };
        Ok(CaseCConstants {
            m,
            n,
            k_mn: k_const(m, n),
            k_m_mn: k_const(m, m - n),
            j_mn,
            j_m_mn: j_const(m, m - n),
            lambda0,
            tau0: tau0(m, n)?,
            b_max: mf / (mf - nf),
            a0,
            c0: -a0,
            a1,
            c1: lambda0 * a1 - 1.0,
        })
    }

    fn mf(&self) -> f64 {
        f64::from(self.m)
    }

    fn nf(&self) -> f64 {
        f64::from(self.n)
    }

    /// `m K t b^(m/n) - n b - m t + (m-n) b |t|^(m/(m-n))`.
    ///
    /// Strictly decreasing in `t < 0` for fixed `b > 0`, so `t >= lambda(b)`
    /// exactly when this is `<= 0`.
    pub fn lambda_residual(&self, b: f64, t: f64) -> f64 {
        let (m, n) = (self.mf(), self.nf());
        m * self.k_mn * t * b.powf(m / n) - n * b - m * t + (m - n) * b * t.abs().powf(m / (m - n))
    }

    /// The decreasing curve `t = Lambda(b)` for `b in [0, m/(m-n)]`.
    pub fn lambda(&self, b: f64) -> Result<CurveSolution> {
        check_range("b", b, 0.0, self.b_max)?;
        let r = |t: f64| self.lambda_residual(b, t);
        if b == 0.0 {
            return Ok(CurveSolution {
                input: b,
                output: 0.0,
                residual: 0.0,
                bracket: RootBracket::new(self.tau0 - 1e-12, 0.0, r(self.tau0 - 1e-12), 0.0)?,
            });
        }
        solve(r, b, self.tau0 - 1e-12, 0.0)
    }

    /// `2nb / (m K b^(m/n) - m b - m)` on `[0, m/(m-n)]`.
    pub fn f(&self, b: f64) -> Result<f64> {
        check_range("b", b, 0.0, self.b_max)?;
        let (m, n) = (self.mf(), self.nf());
        let den = m * self.k_mn * b.powf(m / n) - m * b - m;
        if den == 0.0 {
            return Err(Error::Pole(b));
        }
        Ok(2.0 * n * b / den + 0.0)
    }

    /// `2mt / ((m-n)|t|^(m/(m-n)) + m t - n)` on `[-1, 0]`.
    pub fn g(&self, t: f64) -> Result<f64> {
        check_range("t", t, -1.0, 0.0)?;
        let (m, n) = (self.mf(), self.nf());
        let den = (m - n) * t.abs().powf(m / (m - n)) + m * t - n;
        if den == 0.0 {
            return Err(Error::Pole(t));
        }
        Ok(2.0 * m * t / den + 0.0)
    }

    /// `J (1-a)^((m-n)/m) |c|^(n/m) - 1 - a - c`; decreasing in `c` on `[-1, 0]`.
    pub fn gamma_residual(&self, a: f64, c: f64) -> f64 {
        let (m, n) = (self.mf(), self.nf());
        self.j_mn * (1.0 - a).powf((m - n) / m) * c.abs().powf(n / m) - 1.0 - a - c
    }

    /// The curve `c = Gamma(a)` for `a in [a0, a1]`.
    pub fn gamma(&self, a: f64) -> Result<CurveSolution> {
        check_range("a", a, self.a0, self.a1)?;
        let r = |c: f64| self.gamma_residual(a, c);
        // The end points are known exactly.
        let exact = if a == self.a0 {
            Some(self.c0)
        } else if a == self.a1 {
            Some(self.c1)
        } else {
            None
        };
        match exact {
            Some(c) => Ok(CurveSolution {
                input: a,
                output: c,
                residual: r(c),
                bracket: RootBracket::new(c, c + f64::EPSILON, 0.0, 0.0)?,
            }),
            None => solve(r, a, -1.0 + 1e-14, -1e-14),
        }
    }

    /// `-a^p / ((1-a)^p + a^p)` with `p = (m-n)/n`, for `a in (0, 1]`.
    pub fn upsilon(&self, a: f64) -> Result<f64> {
        if !(a > 0.0 && a <= 1.0) {
            return Err(Error::Domain(format!("upsilon needs a in (0, 1], got {a}")));
        }
        Ok(upsilon_value(self.m, self.n, a))
    }
}

/// Pair-dependent numbers for `m` odd, `n` even.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CaseAConstants {
    pub m: u32,
    pub n: u32,
    pub k_mn: f64,
    pub l_mn: f64,
    pub mu0: f64,
    pub eta1: f64,
    pub eta2: f64,
    pub a0_a: f64,
}

impl CaseAConstants {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        let mu0 = mu0(m, n)?;
        let (mf, nf) = (f64::from(m), f64::from(n));
        Ok(CaseAConstants {
            m,
            n,
            k_mn: k_const(m, n),
            l_mn: l_const(m, n),
            mu0,
            eta1: -mf / (mf - nf),
            eta2: mf / (mf - nf) * mu0,
            a0_a: (mf - nf) / nf,
        })
    }
}

/// Pair-dependent numbers for `m`, `n` both even.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CaseBConstants {
    pub m: u32,
    pub n: u32,
    pub l_mn: f64,
    pub l_m_mn: f64,
    pub lambda0_b: f64,
    pub r_mn: f64,
    pub r_m_mn: f64,
}

impl CaseBConstants {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        let p = TrinomialParams::new(m, n)?;
        if p.parity() != ParityCase::BBothEven {
            return Err(Error::Parity {
                op: "case B constants",
                requirement: "m and n even",
                m,
                n,
            });
        }
        let (mf, nf) = (f64::from(m), f64::from(n));
        let l_mn = l_const(m, n);
        let l_m_mn = l_const(m, m - n);
        Ok(CaseBConstants {
            m,
            n,
            l_mn,
            l_m_mn,
            lambda0_b: -nf / (mf - nf),
            r_mn: 2f64.powf((mf - nf) / mf) * l_mn,
            r_m_mn: 2f64.powf(nf / mf) * l_m_mn,
        })
    }
}

/// `Lambda(b)` for the pair `(m, n)`.
pub fn lambda_curve(m: u32, n: u32, b: f64) -> Result<f64> {
    Ok(CaseCConstants::new(m, n)?.lambda(b)?.output)
}

pub fn f_curve(m: u32, n: u32, b: f64) -> Result<f64> {
    CaseCConstants::new(m, n)?.f(b)
}

pub fn g_curve(m: u32, n: u32, t: f64) -> Result<f64> {
    CaseCConstants::new(m, n)?.g(t)
}

pub fn gamma_curve(m: u32, n: u32, a: f64) -> Result<f64> {
    Ok(CaseCConstants::new(m, n)?.gamma(a)?.output)
}

pub fn a1_c1(m: u32, n: u32) -> Result<(f64, f64)> {
    let k = CaseCConstants::new(m, n)?;
    Ok((k.a1, k.c1))
}

pub fn upsilon_curve(m: u32, n: u32, a: f64) -> Result<f64> {
    require_case_c("upsilon", m, n)?;
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::Domain(format!("upsilon needs a in (0, 1], got {a}")));
    }
    Ok(upsilon_value(m, n, a))
}
