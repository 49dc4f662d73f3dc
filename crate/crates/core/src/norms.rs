//! Closed-form norm formulas and the region classifiers that select them.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::curves::{CaseAConstants, CaseCConstants};
use crate::error::{Error, Result};
use crate::oracle::edge_norm;
use crate::trinomial::{ParityCase, Trinomial, TrinomialParams};

/// `sup_{x in [-1,1]} |a x^m + b x^n + c|` for `m` even, `n` odd.
pub fn line_norm(a: f64, b: f64, c: f64, m: u32, n: u32) -> Result<f64> {
    let p = TrinomialParams::new(m, n)?;
    if p.parity() != ParityCase::CEvenMOddN {
        return Err(Error::Parity {
            op: "line_norm",
            requirement: "m even, n odd",
            m,
            n,
        });
    }
    let (mf, nf) = (f64::from(m), f64::from(n));
    if a != 0.0 {
        let r = (nf * b / (mf * a)).abs();
        if r < 1.0 {
            let rp = r.powf(mf / (mf - nf));
            if 1.0 + c / a < 0.5 * ((mf - nf) / nf * rp - (b / a).abs() + 1.0) {
                return Ok(((mf - nf) * a / nf * rp - c).abs());
            }
        }
    }
    Ok((a + c).abs() + b.abs())
}

/// Position of `(b, t)` relative to the two Case C formula regions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RegionC {
    A1,
    A2,
    B1,
    B2,
    Outside,
    DegenerateAxis,
}

impl RegionC {
    pub fn mirrored(self) -> RegionC {
        match self {
            RegionC::A1 => RegionC::A2,
            RegionC::A2 => RegionC::A1,
            RegionC::B1 => RegionC::B2,
            RegionC::B2 => RegionC::B1,
            other => other,
        }
    }
}

// Sign of `t - Lambda(b)` for `0 < b <= b_max`, `t < 0`. At `b = b_max` the
// curve value is `tau0` by definition, so compare against it directly.
fn above_lambda(k: &CaseCConstants, b: f64, t: f64) -> Ordering {
    if b == k.b_max {
        return t.partial_cmp(&k.tau0).unwrap_or(Ordering::Less);
    }
    let r = k.lambda_residual(b, t);
    if r < 0.0 {
        Ordering::Greater
    } else if r > 0.0 {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// Closed membership in the first-quadrant piece of region A: `Lambda(b) <= t < 0`.
pub fn in_a1(k: &CaseCConstants, b: f64, t: f64) -> bool {
    b > 0.0 && b <= k.b_max && t < 0.0 && above_lambda(k, b, t).is_ge()
}

/// Closed membership in the first-quadrant piece of region B.
pub fn in_b1(k: &CaseCConstants, b: f64, t: f64) -> bool {
    if b > 0.0 && b <= k.b_max && k.tau0 <= t && t < 0.0 && above_lambda(k, b, t).is_le() {
        return true;
    }
    (-1.0..=k.tau0).contains(&t) && b > 0.0 && k.g(t).is_ok_and(|g| b <= g)
}

/// Region tag of `(b, t)`; points on the shared curve `t = Lambda(b)` go to B.
pub fn classify_case_c(k: &CaseCConstants, b: f64, t: f64) -> RegionC {
    if in_b1(k, b, t) {
        RegionC::B1
    } else if in_a1(k, b, t) {
        RegionC::A1
    } else if in_b1(k, -b, -t) {
        RegionC::B2
    } else if in_a1(k, -b, -t) {
        RegionC::A2
    } else if b == 0.0 || t == 0.0 {
        RegionC::DegenerateAxis
    } else {
        RegionC::Outside
    }
}

/// Region of `(x, y) = (b/a, c/a)` in the Case A formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RegionA {
    ARegion,
    BRegion,
    Otherwise,
}

pub fn classify_case_a(k: &CaseAConstants, x: f64, y: f64) -> RegionA {
    let (mf, nf) = (f64::from(k.m), f64::from(k.n));
    let in_i = k.eta1 <= x && x <= k.eta2;
    let curve = 1.0 - k.k_mn * x.abs().powf(mf / nf);
    if in_i && y.abs() >= curve {
        return RegionA::ARegion;
    }
    let in_diamond = (x + 1.0).abs() + y.abs() < 1.0;
    let in_f = in_i && curve < y.abs() && y.abs() < 1.0 - (1.0 + x).abs();
    if in_diamond && !in_f {
        RegionA::BRegion
    } else {
        RegionA::Otherwise
    }
}

/// Which formula produced a norm value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    /// Case C region A: `|K_{m,n} a |b/a|^(m/n) - c|`.
    CaseCRegionA,
    /// Case C region B: `|K_{m,m-n} c |b/c|^(m/(m-n)) - a|`.
    CaseCRegionB,
    /// Case C, `b = 0` and `ac <= 0`: `max(|a|, |c|)`.
    CaseCAxis,
    /// Case C fallback `|a+c| + |b|`.
    CaseCOtherwise,
    /// Case A region A.
    CaseARegionA,
    /// Case A region B: `|a|`.
    CaseARegionB,
    /// Case A fallback `|a+b| + |c|`.
    CaseAOtherwise,
    /// Case B, computed by the edge oracle.
    EdgeOracle,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::CaseCRegionA => "region A",
            Branch::CaseCRegionB => "region B",
            Branch::CaseCAxis => "b=0, ac≤0",
            Branch::CaseCOtherwise => "|a+c|+|b|",
            Branch::CaseARegionA => "region A",
            Branch::CaseARegionB => "|a|",
            Branch::CaseAOtherwise => "|a+b|+|c|",
            Branch::EdgeOracle => "edge oracle",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

fn case_c_value(k: &CaseCConstants, a: f64, b: f64, c: f64) -> (f64, Branch) {
    let (mf, nf) = (f64::from(k.m), f64::from(k.n));
    if a != 0.0 && b != 0.0 && c != 0.0 {
        let ratio = b / a;
        let t = nf * b / (mf * c);
        let (ratio, t) = if ratio < 0.0 {
            (-ratio, -t)
        } else {
            (ratio, t)
        };
        match classify_case_c(k, ratio, t) {
            RegionC::B1 | RegionC::B2 => {
                let v = k.k_m_mn * c * (b / c).abs().powf(mf / (mf - nf)) - a;
                return (v.abs(), Branch::CaseCRegionB);
            }
            RegionC::A1 | RegionC::A2 => {
                let v = k.k_mn * a * (b / a).abs().powf(mf / nf) - c;
                return (v.abs(), Branch::CaseCRegionA);
            }
            RegionC::Outside | RegionC::DegenerateAxis => {}
        }
    }
    if b == 0.0 && a * c <= 0.0 {
        return (a.abs().max(c.abs()), Branch::CaseCAxis);
    }
    ((a + c).abs() + b.abs(), Branch::CaseCOtherwise)
}

fn case_a_value(k: &CaseAConstants, a: f64, b: f64, c: f64) -> (f64, Branch) {
    if a != 0.0 {
        let (mf, nf) = (f64::from(k.m), f64::from(k.n));
        match classify_case_a(k, b / a, c / a) {
            RegionA::ARegion => {
                let v = nf * a.abs() / (mf - nf) * ((mf - nf) * b / (mf * a)).abs().powf(mf / nf)
                    + c.abs();
                return (v, Branch::CaseARegionA);
            }
            RegionA::BRegion => return (a.abs(), Branch::CaseARegionB),
            RegionA::Otherwise => {}
        }
    }
    ((a + b).abs() + c.abs(), Branch::CaseAOtherwise)
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Formula {
    A(CaseAConstants),
    B,
    C(CaseCConstants),
}

/// Precomputed constants for evaluating norms over one exponent pair.
///
/// Pairs that need the swap `a <-> c` (Case A with `n` odd, Case C with
/// `m < 2n`) hold the constants of `(m, m-n)` and swap on every call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormContext {
    params: TrinomialParams,
    formula: Formula,
    swap: bool,
}

impl NormContext {
    pub fn new(params: TrinomialParams) -> Result<Self> {
        let (m, n) = (params.m(), params.n());
        let (formula, swap) = match params.parity() {
            ParityCase::AOddM if n % 2 == 0 => (Formula::A(CaseAConstants::new(m, n)?), false),
            ParityCase::AOddM => (Formula::A(CaseAConstants::new(m, m - n)?), true),
            ParityCase::BBothEven => (Formula::B, false),
            ParityCase::CEvenMOddN if m >= 2 * n => (Formula::C(CaseCConstants::new(m, n)?), false),
            ParityCase::CEvenMOddN => (Formula::C(CaseCConstants::new(m, m - n)?), true),
        };
        Ok(NormContext {
            params,
            formula,
            swap,
        })
    }

    pub fn params(&self) -> TrinomialParams {
        self.params
    }

    /// True when coefficients are swapped before the formula is applied.
    pub fn swaps(&self) -> bool {
        self.swap
    }

    /// Case C constants of the reduced pair, if any.
    pub fn case_c(&self) -> Option<&CaseCConstants> {
        match &self.formula {
            Formula::C(k) => Some(k),
            _ => None,
        }
    }

    /// Case A constants of the reduced pair, if any.
    pub fn case_a(&self) -> Option<&CaseAConstants> {
        match &self.formula {
            Formula::A(k) => Some(k),
            _ => None,
        }
    }

    /// Norm of `(a, b, c)` and the branch that produced it.
    pub fn norm_with_branch(&self, a: f64, b: f64, c: f64) -> (f64, Branch) {
        let (a, c) = if self.swap { (c, a) } else { (a, c) };
        match &self.formula {
            Formula::A(k) => case_a_value(k, a, b, c),
            Formula::C(k) => case_c_value(k, a, b, c),
            Formula::B => {
                let p = Trinomial {
                    a,
                    b,
                    c,
                    params: self.params,
                };
                (edge_norm(&p), Branch::EdgeOracle)
            }
        }
    }

    pub fn norm(&self, a: f64, b: f64, c: f64) -> f64 {
        self.norm_with_branch(a, b, c).0
    }
}

fn context_for(
    m: u32,
    n: u32,
    case: ParityCase,
    op: &'static str,
    req: &'static str,
) -> Result<NormContext> {
    let p = TrinomialParams::new(m, n)?;
    if p.parity() != case {
        return Err(Error::Parity {
            op,
            requirement: req,
            m,
            n,
        });
    }
    NormContext::new(p)
}

/// Case C closed form for `m` even, `n` odd.
pub fn norm_case_c(a: f64, b: f64, c: f64, m: u32, n: u32) -> Result<f64> {
    Ok(context_for(m, n, ParityCase::CEvenMOddN, "norm_case_c", "m even, n odd")?.norm(a, b, c))
}

/// Case A closed form for `m` odd.
pub fn norm_case_a(a: f64, b: f64, c: f64, m: u32, n: u32) -> Result<f64> {
    Ok(context_for(m, n, ParityCase::AOddM, "norm_case_a", "m odd")?.norm(a, b, c))
}

/// Norm by parity dispatch: closed forms for Cases A and C, edge oracle for Case B.
pub fn norm(p: &Trinomial) -> f64 {
    NormContext::new(p.params)
        .expect("constants exist for every valid pair")
        .norm(p.a, p.b, p.c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(a: f64, b: f64, c: f64, m: u32, n: u32) -> Trinomial {
        Trinomial::new(a, b, c, TrinomialParams::new(m, n).unwrap()).unwrap()
    }

    fn line_oracle(a: f64, b: f64, c: f64, m: i32, n: i32) -> f64 {
        (0..=200_000)
            .map(|i| -1.0 + i as f64 / 100_000.0)
            .map(|x: f64| (a * x.powi(m) + b * x.powi(n) + c).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn line_norm_examples() {
        assert_eq!(line_norm(1.0, 0.0, 0.0, 2, 1).unwrap(), 1.0);
        assert_eq!(line_norm(2.0, 0.0, -1.0, 2, 1).unwrap(), 1.0);
        assert_eq!(line_oracle(2.0, 0.0, -1.0, 2, 1), 1.0);
        assert_eq!(line_norm(0.0, 1.0, 1.0, 2, 1).unwrap(), 2.0);
        assert!(line_norm(1.0, 0.0, 0.0, 4, 2).is_err());
        // Interior-extremum branch.
        let v = line_norm(1.0, 0.5, -0.2, 4, 1).unwrap();
        assert!((v - line_oracle(1.0, 0.5, -0.2, 4, 1)).abs() < 1e-9);
    }

    #[test]
    fn case_c_examples() {
        assert_eq!(norm_case_c(1.0, 0.0, -1.0, 10, 3).unwrap(), 1.0);
        assert_eq!(norm_case_c(1.0, 1.0, 1.0, 10, 3).unwrap(), 3.0);
        assert_eq!(edge_norm(&tri(1.0, 1.0, 1.0, 10, 3)), 3.0);
        assert_eq!(norm_case_c(0.0, 2.0, -3.0, 10, 3).unwrap(), 5.0);
        let ctx = NormContext::new(TrinomialParams::new(10, 3).unwrap()).unwrap();
        assert_eq!(ctx.norm_with_branch(1.0, 0.0, -1.0).1, Branch::CaseCAxis);
        assert!(norm_case_c(1.0, 0.0, 0.0, 5, 2).is_err());
    }

    #[test]
    fn case_a_examples() {
        assert_eq!(norm_case_a(0.0, 0.0, 1.0, 3, 2).unwrap(), 1.0);
        let v = norm_case_a(1.0, -2.0, 0.0, 5, 2).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        assert!((edge_norm(&tri(1.0, -2.0, 0.0, 5, 2)) - 1.0).abs() < 1e-12);
        assert_eq!(norm_case_a(1.0, 0.0, 0.0, 3, 2).unwrap(), 1.0);
        assert!(norm_case_a(1.0, 0.0, 0.0, 4, 1).is_err());
    }

    #[test]
    fn case_b_dispatch() {
        let p = tri(1.0, -1.0, 1.0, 20, 12);
        assert!((norm(&p) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn classifier_examples() {
        let k = CaseCConstants::new(10, 3).unwrap();
        assert_eq!(classify_case_c(&k, k.b_max, k.tau0), RegionC::B1);
        let (b, t) = (0.01, -0.001);
        let lam = k.lambda(b).unwrap().output;
        let want = if t >= lam { RegionC::A1 } else { RegionC::B1 };
        assert_eq!(classify_case_c(&k, b, t), want);
        assert_eq!(classify_case_c(&k, -b, -t), want.mirrored());
        assert_eq!(classify_case_c(&k, 0.0, -0.5), RegionC::DegenerateAxis);
        assert_eq!(classify_case_c(&k, 0.5, 0.5), RegionC::Outside);
    }

    #[test]
    fn boundary_values_agree() {
        for &(m, n) in &[(4, 1), (10, 3), (12, 5)] {
            let k = CaseCConstants::new(m, n).unwrap();
            let (mf, nf) = (m as f64, n as f64);
            for i in 1..50 {
                let b = k.b_max * i as f64 / 50.0;
                let t = k.lambda(b).unwrap().output;
                // Any (a, c) with b/a = b and nb/(mc) = t; take a = 1.
                let (a, bb, c) = (1.0, b, nf * b / (mf * t));
                let va = (k.k_mn * a * (bb / a).abs().powf(mf / nf) - c).abs();
                let vb = (k.k_m_mn * c * (bb / c).abs().powf(mf / (mf - nf)) - a).abs();
                assert!((va - vb).abs() <= 1e-10 * va.max(1.0), "({m},{n}) b={b}");
            }
        }
    }

    #[test]
    fn line_norm_boundary_agrees() {
        // On the I-set boundary both branches give the same value.
        let (m, n) = (4u32, 1u32);
        let (mf, nf) = (m as f64, n as f64);
        for &(a, b) in &[(1.0, 0.5), (2.0, -1.0), (-1.5, 1.0)] {
            let r = (nf * b / (mf * a)).abs();
            let rhs = 0.5 * ((mf - nf) / nf * r.powf(mf / (mf - nf)) - (b / a).abs() + 1.0);
            let c = (rhs - 1.0) * a;
            let inner = ((mf - nf) * a / nf * r.powf(mf / (mf - nf)) - c).abs();
            let outer = (a + c).abs() + b.abs();
            assert!((inner - outer).abs() < 1e-12);
            let v = line_norm(a, b, c, m, n).unwrap();
            assert!((v - outer).abs() < 1e-12);
        }
    }
}
