//! Extreme points of the unit ball and numerical checks of extremality.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::Serialize;

use crate::curves::{CaseAConstants, CaseBConstants, CaseCConstants};
use crate::error::{Error, Result};
use crate::oracle::edge_norm;
use crate::sphere::SphereSample;
use crate::trinomial::{ParityCase, Trinomial, TrinomialParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ExtremeFamily {
    /// `±(1, 0, 0)` in Case C.
    VertexP1,
    /// `±(0, 0, 1)` in Case C.
    VertexP2,
    CaseCGammaCurve,
    CaseCUpsilonCurve,
    CaseAKCurve,
    CaseALCurve,
    CaseAVertex,
    CaseBFamily1,
    CaseBFamily2,
    CaseBFamily3,
    CaseBVertex,
}

impl ExtremeFamily {
    pub fn label(self) -> &'static str {
        match self {
            ExtremeFamily::VertexP1 => "vertex_p1",
            ExtremeFamily::VertexP2 => "vertex_p2",
            ExtremeFamily::CaseCGammaCurve => "gamma_curve",
            ExtremeFamily::CaseCUpsilonCurve => "upsilon_curve",
            ExtremeFamily::CaseAKCurve => "k_curve",
            ExtremeFamily::CaseALCurve => "l_curve",
            ExtremeFamily::CaseAVertex => "vertex",
            ExtremeFamily::CaseBFamily1 => "family1",
            ExtremeFamily::CaseBFamily2 => "family2",
            ExtremeFamily::CaseBFamily3 => "family3",
            ExtremeFamily::CaseBVertex => "vertex",
        }
    }

    pub fn is_vertex(self) -> bool {
        matches!(
            self,
            ExtremeFamily::VertexP1
                | ExtremeFamily::VertexP2
                | ExtremeFamily::CaseAVertex
                | ExtremeFamily::CaseBVertex
        )
    }
}

/// A claimed extreme point; `parameter` is the curve parameter for curve families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremeSample {
    pub point: [f64; 3],
    pub family: ExtremeFamily,
    pub parameter: Option<f64>,
}

// Subtracting from +0 keeps zero coordinates unsigned.
fn neg(p: [f64; 3]) -> [f64; 3] {
    [0.0 - p[0], 0.0 - p[1], 0.0 - p[2]]
}

fn uniform(lo: f64, hi: f64, k: usize) -> impl Iterator<Item = f64> {
    (0..k).map(move |i| {
        if i + 1 == k {
            hi
        } else {
            lo + (hi - lo) * i as f64 / (k - 1) as f64
        }
    })
}

#[derive(Default)]
struct Collector {
    out: Vec<ExtremeSample>,
}

impl Collector {
    fn one(&mut self, point: [f64; 3], family: ExtremeFamily, parameter: Option<f64>) {
        self.out.push(ExtremeSample {
            point,
            family,
            parameter,
        });
    }

    /// `p` and `-p`.
    fn pm(&mut self, p: [f64; 3], family: ExtremeFamily, parameter: Option<f64>) {
        self.one(p, family, parameter);
        if p != [0.0; 3] {
            self.one(neg(p), family, parameter);
        }
    }

    /// `±(p0, ±p1, p2)`, skipping the duplicate when `p1 = 0`.
    fn pm_pm(&mut self, p: [f64; 3], family: ExtremeFamily, parameter: Option<f64>) {
        self.pm(p, family, parameter);
        if p[1] != 0.0 {
            self.pm([p[0], -p[1], p[2]], family, parameter);
        }
    }
}

fn require_samples(samples: usize) -> Result<()> {
    if samples < 2 {
        return Err(Error::Domain(format!(
            "need at least 2 samples per curve, got {samples}"
        )));
    }
    Ok(())
}

fn swap_ac(mut v: Vec<ExtremeSample>) -> Vec<ExtremeSample> {
    for s in &mut v {
        s.point.swap(0, 2);
    }
    v
}

/// Case C: vertices `±(1,0,0)`, `±(0,0,1)` and the Gamma and Upsilon curves.
pub fn extreme_case_c(m: u32, n: u32, samples: usize) -> Result<Vec<ExtremeSample>> {
    let p = TrinomialParams::new(m, n)?;
    if p.parity() != ParityCase::CEvenMOddN {
        return Err(Error::Parity {
            op: "extreme_case_c",
            requirement: "m even, n odd",
            m,
            n,
        });
    }
    require_samples(samples)?;
    if m < 2 * n {
        let mut v = swap_ac(extreme_case_c(m, m - n, samples)?);
        for s in &mut v {
            if s.family.is_vertex() {
                s.family = if s.point[0] != 0.0 {
                    ExtremeFamily::VertexP1
                } else {
                    ExtremeFamily::VertexP2
                };
            }
        }
        return Ok(v);
    }
    let k = CaseCConstants::new(m, n)?;
    let (mf, nf) = (f64::from(m), f64::from(n));
    let mut col = Collector::default();
    col.pm([1.0, 0.0, 0.0], ExtremeFamily::VertexP1, None);
    col.pm([0.0, 0.0, 1.0], ExtremeFamily::VertexP2, None);
    let q = (mf - nf) / nf;
    for a in uniform(k.a1, 1.0, samples) {
        let c = k.upsilon(a)?;
        let d = (1.0 - a).powf(q) + a.powf(q);
        let b = k.j_mn * ((1.0 - a) * a).powf((mf - nf) / mf) / d.powf(nf / mf);
        col.pm_pm([a, b, c], ExtremeFamily::CaseCUpsilonCurve, Some(a));
    }
    for a in uniform(k.a0, k.a1, samples) {
        let c = k.gamma(a)?.output;
        let b = 1.0 - (a + c).abs();
        col.pm_pm([a, b, c], ExtremeFamily::CaseCGammaCurve, Some(a));
    }
    Ok(col.out)
}

/// Case A (`m` odd). Pairs with `n` odd are reduced to `(m, m-n)` by swapping `a` and `c`.
pub fn extreme_case_a(m: u32, n: u32, samples: usize) -> Result<Vec<ExtremeSample>> {
    let p = TrinomialParams::new(m, n)?;
    if p.parity() != ParityCase::AOddM {
        return Err(Error::Parity {
            op: "extreme_case_a",
            requirement: "m odd",
            m,
            n,
        });
    }
    require_samples(samples)?;
    if n % 2 == 1 {
        return Ok(swap_ac(extreme_case_a(m, m - n, samples)?));
    }
    let k = CaseAConstants::new(m, n)?;
    let (mf, nf) = (f64::from(m), f64::from(n));
    let mut col = Collector::default();
    for v in [[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]] {
        col.pm(v, ExtremeFamily::CaseAVertex, None);
    }
    let t_hi = if m < 2 * n { k.l_mn } else { -k.eta1 };
    for t in uniform(-k.eta2, t_hi, samples) {
        let y = 1.0 - k.k_mn * t.abs().powf(mf / nf);
        col.pm([-1.0, t, y], ExtremeFamily::CaseAKCurve, Some(t));
        if y != 0.0 {
            col.pm([-1.0, t, -y], ExtremeFamily::CaseAKCurve, Some(t));
        }
    }
    if m < 2 * n {
        for s in uniform(-1.0, -k.a0_a, samples) {
            let b = k.l_mn * s.abs().powf((mf - nf) / mf);
            col.pm([s, b, 0.0], ExtremeFamily::CaseALCurve, Some(s));
        }
    } else {
        col.pm([1.0, -2.0, 0.0], ExtremeFamily::CaseAVertex, None);
    }
    Ok(col.out)
}

/// Case B (`m`, `n` even), in the three regimes of `n/m`.
pub fn extreme_case_b(m: u32, n: u32, samples: usize) -> Result<Vec<ExtremeSample>> {
    let k = CaseBConstants::new(m, n)?;
    require_samples(samples)?;
    let (mf, nf) = (f64::from(m), f64::from(n));
    let lam = k.lambda0_b;
    let mut col = Collector::default();
    let family1 = |col: &mut Collector, lo: f64| {
        for c in uniform(lo, 1.0, samples) {
            let b = k.l_mn * (1.0 - c).powf(nf / mf);
            col.pm([-1.0, b, c], ExtremeFamily::CaseBFamily1, Some(c));
        }
    };
    let family3 = |col: &mut Collector, lo: f64| {
        for a in uniform(lo, 1.0, samples) {
            let b = k.l_mn * (1.0 - a).powf((mf - nf) / mf);
            col.pm([a, b, -1.0], ExtremeFamily::CaseBFamily3, Some(a));
        }
    };
    for v in [[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [1.0, -1.0, 1.0]] {
        col.pm(v, ExtremeFamily::CaseBVertex, None);
    }
    if 3 * n < m {
        family1(&mut col, 1.0 + lam);
        for c in uniform(-1.0, 2.0 * lam, samples) {
            let b = k.r_mn * c.abs().powf(nf / mf);
            col.pm([-1.0, b, c], ExtremeFamily::CaseBFamily2, Some(c));
        }
        family3(&mut col, -1.0);
    } else if 3 * n <= 2 * m {
        col.pm([1.0, -3.0, 1.0], ExtremeFamily::CaseBVertex, None);
        family1(&mut col, 1.0 + lam);
        family3(&mut col, 1.0 + 1.0 / lam);
    } else {
        family1(&mut col, -1.0);
        for a in uniform(-1.0, 2.0 / lam, samples) {
            let b = k.r_m_mn * a.abs().powf((mf - nf) / mf);
            col.pm([a, b, -1.0], ExtremeFamily::CaseBFamily2, Some(a));
        }
        family3(&mut col, 1.0 + 1.0 / lam);
    }
    Ok(col.out)
}

/// Extreme points for any valid pair.
pub fn extreme_points(params: TrinomialParams, samples: usize) -> Result<Vec<ExtremeSample>> {
    let (m, n) = (params.m(), params.n());
    match params.parity() {
        ParityCase::AOddM => extreme_case_a(m, n, samples),
        ParityCase::BBothEven => extreme_case_b(m, n, samples),
        ParityCase::CEvenMOddN => extreme_case_c(m, n, samples),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CheckMethod {
    SupportingPlane,
    MidpointPerturbation,
}

/// Outcome of an extremality check.
///
/// For the plane check `margin` is the smallest distance, in functional
/// value, of any other mesh point from the plane. For the perturbation
/// check it is the smallest norm excess over 1, and `witness` is the
/// direction attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremalityReport {
    pub point: [f64; 3],
    pub family: Option<ExtremeFamily>,
    pub method: CheckMethod,
    pub passed: bool,
    pub margin: f64,
    pub witness: Option<[f64; 3]>,
}

/// Affine functional `u a + v b + w c + d`, nonpositive on the ball and zero at the vertex.
pub fn supporting_plane(params: TrinomialParams, p: [f64; 3]) -> Result<[f64; 4]> {
    let (m, n) = (params.m(), params.n());
    if params.parity() != ParityCase::CEvenMOddN {
        return Err(Error::Parity {
            op: "supporting_plane",
            requirement: "m even, n odd",
            m,
            n,
        });
    }
    let swap = m < 2 * n;
    let q = if swap { [p[2], p[1], p[0]] } else { p };
    let plane = match q {
        [1.0, 0.0, 0.0] => [2.0, 0.0, 1.0, -2.0],
        [-1.0, 0.0, 0.0] => [-2.0, 0.0, -1.0, -2.0],
        [0.0, 0.0, -1.0] => [-1.0, 0.0, -2.0, -2.0],
        [0.0, 0.0, 1.0] => [1.0, 0.0, 2.0, -2.0],
        _ => return Err(Error::UnsupportedPoint(p[0], p[1], p[2])),
    };
    Ok(if swap {
        [plane[2], plane[1], plane[0], plane[3]]
    } else {
        plane
    })
}

fn apply(plane: [f64; 4], q: [f64; 3]) -> f64 {
    plane[0] * q[0] + plane[1] * q[1] + plane[2] * q[2] + plane[3]
}

/// Checks that every mesh point other than the vertex lies strictly below its plane.
pub fn verify_supporting_plane(
    params: TrinomialParams,
    sample: &ExtremeSample,
    mesh: &[SphereSample],
) -> Result<ExtremalityReport> {
    if mesh.is_empty() {
        return Err(Error::Domain("empty mesh".into()));
    }
    let plane = supporting_plane(params, sample.point)?;
    let p = sample.point;
    let mut margin = f64::INFINITY;
    for s in mesh {
        let q = [s.a, s.b, s.c];
        let dist = ((q[0] - p[0]).powi(2) + (q[1] - p[1]).powi(2) + (q[2] - p[2]).powi(2)).sqrt();
        if dist > 1e-9 {
            margin = margin.min(-apply(plane, q));
        }
    }
    Ok(ExtremalityReport {
        point: p,
        family: Some(sample.family),
        method: CheckMethod::SupportingPlane,
        passed: apply(plane, p).abs() <= 1e-12 && margin > 1e-9,
        margin,
        witness: None,
    })
}

/// Unit directions: the 6 axis vectors, the 12 face diagonals, then a
/// Fibonacci lattice on the sphere, truncated to `count`.
pub fn direction_set(count: usize) -> Vec<[f64; 3]> {
    let mut d = Vec::with_capacity(count.max(18));
    for i in 0..3 {
        for s in [1.0, -1.0] {
            let mut v = [0.0; 3];
            v[i] = s;
            d.push(v);
        }
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        for s1 in [1.0, -1.0] {
            for s2 in [1.0, -1.0] {
                let mut v = [0.0; 3];
                v[i] = s1 * FRAC_1_SQRT_2;
                v[j] = s2 * FRAC_1_SQRT_2;
                d.push(v);
            }
        }
    }
    let extra = count.saturating_sub(d.len());
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    for i in 0..extra {
        let z = 1.0 - 2.0 * (i as f64 + 0.5) / extra as f64;
        let r = (1.0 - z * z).sqrt();
        let th = golden * i as f64;
        d.push([r * th.cos(), r * th.sin(), z]);
    }
    d.truncate(count);
    d
}

/// Perturbation proxy for extremality: along every direction `d`, at
/// least one of `p ± eps d` must leave the ball by more than `tol`.
pub fn verify_midpoint_extremality(
    params: TrinomialParams,
    p: [f64; 3],
    eps: f64,
    directions: usize,
    tol: f64,
) -> ExtremalityReport {
    let norm_at = |q: [f64; 3]| {
        edge_norm(&Trinomial {
            a: q[0],
            b: q[1],
            c: q[2],
            params,
        })
    };
    let mut margin = f64::INFINITY;
    let mut witness = None;
    for d in direction_set(directions) {
        let plus = [p[0] + eps * d[0], p[1] + eps * d[1], p[2] + eps * d[2]];
        let minus = [p[0] - eps * d[0], p[1] - eps * d[1], p[2] - eps * d[2]];
        let excess = norm_at(plus).max(norm_at(minus)) - 1.0;
        if excess < margin {
            margin = excess;
            witness = Some(d);
        }
    }
    ExtremalityReport {
        point: p,
        family: None,
        method: CheckMethod::MidpointPerturbation,
        passed: margin > tol,
        margin,
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::sphere_mesh;

    fn params(m: u32, n: u32) -> TrinomialParams {
        TrinomialParams::new(m, n).unwrap()
    }

    fn norm_of(p: [f64; 3], m: u32, n: u32) -> f64 {
        edge_norm(&Trinomial::new(p[0], p[1], p[2], params(m, n)).unwrap())
    }

    fn contains(v: &[ExtremeSample], p: [f64; 3]) -> bool {
        v.iter().any(|s| s.point == p)
    }

    #[test]
    fn case_c_examples() {
        let v = extreme_case_c(10, 3, 20).unwrap();
        for p in [
            [1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0],
        ] {
            assert!(contains(&v, p));
        }
        assert!(contains(&v, [1.0, 0.0, -1.0]));
        assert!(contains(&v, [0.3, 1.0, -0.3]));
        for s in &v {
            assert!((norm_of(s.point, 10, 3) - 1.0).abs() <= 1e-9, "{s:?}");
        }
        assert!(extreme_case_c(5, 2, 10).is_err());
    }

    #[test]
    fn case_c_curves_meet() {
        for &(m, n) in &[(10, 3), (4, 1)] {
            let v = extreme_case_c(m, n, 10).unwrap();
            let k = CaseCConstants::new(m, n).unwrap();
            let at = |f: ExtremeFamily| {
                v.iter()
                    .find(|s| {
                        s.family == f
                            && s.parameter == Some(k.a1)
                            && s.point[1] > 0.0
                            && s.point[0] > 0.0
                    })
                    .unwrap()
                    .point
            };
            let u = at(ExtremeFamily::CaseCUpsilonCurve);
            let g = at(ExtremeFamily::CaseCGammaCurve);
            for i in 0..3 {
                assert!((u[i] - g[i]).abs() <= 1e-8);
            }
        }
    }

    #[test]
    fn case_c_swapped_pair() {
        let v = extreme_case_c(10, 7, 10).unwrap();
        assert!(contains(&v, [-1.0, 0.0, 1.0]));
        for s in &v {
            assert!((norm_of(s.point, 10, 7) - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn case_a_examples() {
        let v = extreme_case_a(5, 2, 20).unwrap();
        assert!(contains(&v, [1.0, -2.0, 0.0]) && contains(&v, [-1.0, 2.0, 0.0]));
        let v = extreme_case_a(5, 4, 20).unwrap();
        let l = crate::curves::l_const(5, 4);
        assert!(contains(&v, [-1.0, l, 0.0]));
        for &(m, n) in &[(5, 2), (5, 4), (3, 2), (7, 3), (9, 4)] {
            for s in extreme_case_a(m, n, 20).unwrap() {
                assert!(
                    (norm_of(s.point, m, n) - 1.0).abs() <= 1e-9,
                    "({m},{n}) {s:?}"
                );
            }
        }
    }

    #[test]
    fn case_b_examples() {
        let v = extreme_case_b(20, 12, 20).unwrap();
        assert!(contains(&v, [1.0, -3.0, 1.0]) && contains(&v, [-1.0, 3.0, -1.0]));
        let v = extreme_case_b(16, 2, 20).unwrap();
        let k = CaseBConstants::new(16, 2).unwrap();
        let want = [-1.0, k.r_mn, -1.0];
        assert!(contains(&v, want));
        for &(m, n) in &[(16, 2), (20, 12), (10, 8), (12, 6), (28, 8)] {
            let v = extreme_case_b(m, n, 20).unwrap();
            assert!(contains(&v, [1.0, -1.0, 1.0]));
            for s in v {
                assert!(
                    (norm_of(s.point, m, n) - 1.0).abs() <= 1e-9,
                    "({m},{n}) {s:?}"
                );
            }
        }
    }

    #[test]
    fn symmetric_under_negation() {
        for (pr, v) in [
            (params(10, 3), extreme_case_c(10, 3, 9).unwrap()),
            (params(5, 2), extreme_case_a(5, 2, 9).unwrap()),
            (params(20, 12), extreme_case_b(20, 12, 9).unwrap()),
        ] {
            for s in &v {
                assert!(contains(&v, neg(s.point)), "{pr:?} {s:?}");
            }
        }
        let v = extreme_case_c(10, 3, 9).unwrap();
        for s in &v {
            assert!(contains(&v, [s.point[0], -s.point[1], s.point[2]]));
        }
    }

    #[test]
    fn supporting_planes() {
        let pr = params(10, 3);
        let mesh = sphere_mesh(10, 3, 60).unwrap();
        for (p, fam) in [
            ([1.0, 0.0, 0.0], ExtremeFamily::VertexP1),
            ([-1.0, 0.0, 0.0], ExtremeFamily::VertexP1),
            ([0.0, 0.0, -1.0], ExtremeFamily::VertexP2),
            ([0.0, 0.0, 1.0], ExtremeFamily::VertexP2),
        ] {
            let s = ExtremeSample {
                point: p,
                family: fam,
                parameter: None,
            };
            let r = verify_supporting_plane(pr, &s, &mesh).unwrap();
            assert!(r.passed && r.margin > 0.0, "{r:?}");
        }
        let plane = supporting_plane(pr, [1.0, 0.0, 0.0]).unwrap();
        assert_eq!(apply(plane, [0.5, 0.0, -1.0]), -2.0);
        let bad = ExtremeSample {
            point: [0.3, 1.0, -0.3],
            family: ExtremeFamily::CaseCGammaCurve,
            parameter: None,
        };
        assert!(matches!(
            verify_supporting_plane(pr, &bad, &mesh),
            Err(Error::UnsupportedPoint(..))
        ));
    }

    #[test]
    fn midpoint_examples() {
        let pr = params(10, 3);
        assert!(verify_midpoint_extremality(pr, [1.0, 0.0, 0.0], 1e-3, 82, 1e-10).passed);
        let r = verify_midpoint_extremality(pr, [0.5, 0.0, -1.0], 1e-3, 82, 1e-10);
        assert!(!r.passed);
        let r = verify_midpoint_extremality(pr, [0.0, 1.0, 0.0], 1e-3, 82, 1e-10);
        assert!(!r.passed);
        let w = r.witness.unwrap();
        let flat = [FRAC_1_SQRT_2, 0.0, -FRAC_1_SQRT_2];
        assert!(w == flat || w == neg(flat), "{w:?}");
    }

    #[test]
    fn direction_set_shape() {
        let d = direction_set(82);
        assert_eq!(d.len(), 82);
        assert_eq!(d[0], [1.0, 0.0, 0.0]);
        for v in &d {
            let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            assert!((n - 1.0).abs() < 1e-12);
        }
        assert_eq!(direction_set(4).len(), 4);
    }
}
