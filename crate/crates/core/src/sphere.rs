//! The unit sphere of Case C as a two-sheeted graph over the hexagon
//! `|a| <= 1, |c| <= 1, |a + c| <= 1`.

use serde::Serialize;

use crate::curves::CaseCConstants;
use crate::error::{Error, Result};
use crate::trinomial::{ParityCase, TrinomialParams};

/// Region of the hexagon; `U2`, `V2` are the point reflections of `U1`, `V1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PiRegion {
    U1,
    U2,
    V1,
    V2,
    W,
    OutsidePi,
}

impl PiRegion {
    pub fn label(self) -> &'static str {
        match self {
            PiRegion::U1 => "U1",
            PiRegion::U2 => "U2",
            PiRegion::V1 => "V1",
            PiRegion::V2 => "V2",
            PiRegion::W => "W",
            PiRegion::OutsidePi => "outside",
        }
    }
}

/// Sheet of the sphere: `b = +H` or `b = -H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SheetBranch {
    Plus,
    Minus,
}

impl SheetBranch {
    pub fn label(self) -> &'static str {
        match self {
            SheetBranch::Plus => "plus",
            SheetBranch::Minus => "minus",
        }
    }
}

/// A point `(a, b, c)` of the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphereSample {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub region: PiRegion,
    pub branch: SheetBranch,
}

pub fn in_pi(a: f64, c: f64) -> bool {
    a.abs() <= 1.0 && c.abs() <= 1.0 && (a + c).abs() <= 1.0
}

fn in_u1(k: &CaseCConstants, a: f64, c: f64) -> Result<bool> {
    let upper = k.lambda0 * (a - 1.0);
    if c > upper {
        return Ok(false);
    }
    if k.a0 <= a && a <= k.a1 && c >= k.gamma(a)?.output {
        return Ok(true);
    }
    Ok(k.a1 <= a && a <= 1.0 && c >= k.upsilon(a)?)
}

fn in_v1(k: &CaseCConstants, a: f64, c: f64) -> Result<bool> {
    if c < -1.0 {
        return Ok(false);
    }
    if (0.0..=k.a1).contains(&a) && c <= k.lambda0 * a - 1.0 {
        return Ok(true);
    }
    Ok(k.a1 <= a && a <= 1.0 && c <= k.upsilon(a)?)
}

/// Region of `(a, c)`, checked in the order U1, U2, V1, V2, W.
pub fn classify_pi(k: &CaseCConstants, a: f64, c: f64) -> Result<PiRegion> {
    if !in_pi(a, c) {
        return Err(Error::OutsidePi { a, c });
    }
    Ok(if in_u1(k, a, c)? {
        PiRegion::U1
    } else if in_u1(k, -a, -c)? {
        PiRegion::U2
    } else if in_v1(k, a, c)? {
        PiRegion::V1
    } else if in_v1(k, -a, -c)? {
        PiRegion::V2
    } else {
        PiRegion::W
    })
}

/// The formula attached to `region`, evaluated at `(a, c)` regardless of membership.
pub fn f_branch(k: &CaseCConstants, region: PiRegion, a: f64, c: f64) -> f64 {
    let (m, n) = (f64::from(k.m), f64::from(k.n));
    let p = (m - n) / m;
    let q = n / m;
    match region {
        PiRegion::U1 => k.j_mn * (1.0 - a).powf(p) * c.abs().powf(q),
        PiRegion::U2 => k.j_mn * (1.0 + a).powf(p) * c.abs().powf(q),
        PiRegion::V1 => k.j_m_mn * (1.0 + c).powf(q) * a.abs().powf(p),
        PiRegion::V2 => k.j_m_mn * (1.0 - c).powf(q) * a.abs().powf(p),
        PiRegion::W | PiRegion::OutsidePi => 1.0 - (a + c).abs(),
    }
}

/// Height `F_{m,n}(a, c)` of the upper sheet, with the region used.
pub fn f_height(k: &CaseCConstants, a: f64, c: f64) -> Result<(f64, PiRegion)> {
    let region = classify_pi(k, a, c)?;
    Ok((f_branch(k, region, a, c), region))
}

/// `F_{m,n}(a, c)` for `m >= 2n`.
#[allow(non_snake_case)]
pub fn F(m: u32, n: u32, a: f64, c: f64) -> Result<f64> {
    Ok(f_height(&CaseCConstants::new(m, n)?, a, c)?.0)
}

/// `G_{m,n}(a, c) = F_{m,m-n}(c, a)` for `m <= 2n`.
#[allow(non_snake_case)]
pub fn G(m: u32, n: u32, a: f64, c: f64) -> Result<f64> {
    TrinomialParams::new(m, n)?;
    if m > 2 * n {
        return Err(Error::OutOfRange {
            what: "m/n",
            value: f64::from(m) / f64::from(n),
            lo: 1.0,
            hi: 2.0,
        });
    }
    F(m, m - n, c, a)
}

/// `(F/a, nF/(mc))`, the map taking the hexagon to the `(b, t)` plane.
pub fn phi_map(k: &CaseCConstants, a: f64, c: f64) -> Result<(f64, f64)> {
    if a == 0.0 || c == 0.0 {
        return Err(Error::Domain(format!(
            "phi is undefined on the axes, got ({a}, {c})"
        )));
    }
    let (h, _) = f_height(k, a, c)?;
    let (m, n) = (f64::from(k.m), f64::from(k.n));
    Ok((h / a, n * h / (m * c)))
}

/// Upper-sheet height over the hexagon for a Case C pair.
///
/// For `m < 2n` this evaluates `F` of `(m, m-n)` at `(c, a)`, so region tags
/// refer to the swapped coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereChart {
    params: TrinomialParams,
    constants: CaseCConstants,
    swap: bool,
}

impl SphereChart {
    pub fn new(params: TrinomialParams) -> Result<Self> {
        let (m, n) = (params.m(), params.n());
        if params.parity() != ParityCase::CEvenMOddN {
            return Err(Error::Parity {
                op: "sphere chart",
                requirement: "m even, n odd",
                m,
                n,
            });
        }
        let swap = m < 2 * n;
        let constants = if swap {
            CaseCConstants::new(m, m - n)?
        } else {
            CaseCConstants::new(m, n)?
        };
        Ok(SphereChart {
            params,
            constants,
            swap,
        })
    }

    pub fn params(&self) -> TrinomialParams {
        self.params
    }

    pub fn constants(&self) -> &CaseCConstants {
        &self.constants
    }

    pub fn swaps(&self) -> bool {
        self.swap
    }

    /// `H(a, c)`: `F` when `m >= 2n`, `G` otherwise.
    pub fn height(&self, a: f64, c: f64) -> Result<(f64, PiRegion)> {
        if self.swap {
            f_height(&self.constants, c, a)
        } else {
            f_height(&self.constants, a, c)
        }
    }

    /// Both sheets over a `(grid+1) x (grid+1)` lattice of `[-1,1]^2`.
    ///
    /// Nodes are `(2i - grid)/grid`; rows run over `a`, columns over `c`.
    /// The lower sheet is omitted where `H = 0`, since it is the same point.
    pub fn mesh(&self, grid: usize) -> Result<Vec<SphereSample>> {
        if grid < 2 {
            return Err(Error::Domain(format!(
                "mesh grid must be at least 2, got {grid}"
            )));
        }
        let node = |i: usize| (2.0 * i as f64 - grid as f64) / grid as f64;
        let mut out = Vec::new();
        for i in 0..=grid {
            let a = node(i);
            for j in 0..=grid {
                let c = node(j);
                if !in_pi(a, c) {
                    continue;
                }
                let (h, region) = self.height(a, c)?;
                out.push(SphereSample {
                    a,
                    b: h,
                    c,
                    region,
                    branch: SheetBranch::Plus,
                });
                if h > 0.0 {
                    out.push(SphereSample {
                        a,
                        b: -h,
                        c,
                        region,
                        branch: SheetBranch::Minus,
                    });
                }
            }
        }
        Ok(out)
    }
}

pub fn sphere_mesh(m: u32, n: u32, grid: usize) -> Result<Vec<SphereSample>> {
    SphereChart::new(TrinomialParams::new(m, n)?)?.mesh(grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::edge_norm;
    use crate::trinomial::Trinomial;

    #[test]
    fn in_pi_examples() {
        assert!(in_pi(1.0, 0.0));
        assert!(!in_pi(1.0, 1.0));
        assert!(in_pi(0.6, -0.9));
    }

    #[test]
    fn classify_examples() {
        let k = CaseCConstants::new(10, 3).unwrap();
        assert_eq!(classify_pi(&k, k.a0, k.c0).unwrap(), PiRegion::U1);
        assert_eq!(classify_pi(&k, 0.0, -1.0).unwrap(), PiRegion::V1);
        assert_eq!(classify_pi(&k, 0.0, 0.0).unwrap(), PiRegion::W);
        assert_eq!(classify_pi(&k, -k.a0, -k.c0).unwrap(), PiRegion::U2);
        assert!(matches!(
            classify_pi(&k, 1.0, 1.0),
            Err(Error::OutsidePi { .. })
        ));
    }

    #[test]
    fn f_examples() {
        assert_eq!(F(10, 3, 0.0, 0.0).unwrap(), 1.0);
        let k = CaseCConstants::new(10, 3).unwrap();
        assert!((F(10, 3, k.a0, k.c0).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(F(10, 3, 1.0, -1.0).unwrap(), 0.0);
        let p = TrinomialParams::new(10, 3).unwrap();
        assert_eq!(edge_norm(&Trinomial::new(0.0, 1.0, 0.0, p).unwrap()), 1.0);
    }

    #[test]
    fn g_examples() {
        assert_eq!(G(6, 3, 0.0, 0.0).unwrap(), 1.0);
        let k = CaseCConstants::new(10, 3).unwrap();
        let g = G(10, 7, k.c0, k.a0).unwrap();
        assert!((g - F(10, 3, k.a0, k.c0).unwrap()).abs() < 1e-15);
        assert!((g - 1.0).abs() < 1e-12);
        assert!(G(10, 3, 0.0, 0.0).is_err());
        // At m = 2n both charts exist and agree.
        for &(a, c) in &[(0.2, -0.7), (0.9, -0.95), (-0.3, 0.1), (0.5, -0.5)] {
            assert!((G(6, 3, a, c).unwrap() - F(6, 3, a, c).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn phi_examples() {
        let k = CaseCConstants::new(10, 3).unwrap();
        for &a in &[0.1, 0.5, 1.0] {
            let (b, t) = phi_map(&k, a, -1.0).unwrap();
            assert_eq!((b, t), (0.0, 0.0));
        }
        for &c in &[-1.0, -0.5, -0.01] {
            let (b, t) = phi_map(&k, 1.0, c).unwrap();
            assert_eq!((b, t), (0.0, 0.0));
        }
        assert!(phi_map(&k, 0.0, -0.5).is_err());
        // V1 points on c = lam*a - 1.
        let (m, n) = (10.0f64, 3.0f64);
        for &(a, lam) in &[(0.2, 0.3), (0.1, 0.05), (0.25, 0.42)] {
            let c = lam * a - 1.0;
            assert_eq!(classify_pi(&k, a, c).unwrap(), PiRegion::V1);
            let (b, _) = phi_map(&k, a, c).unwrap();
            let want = m / (m - n) * ((m - n) * lam / n).powf(n / m);
            assert!((b - want).abs() < 1e-12);
        }
    }

    #[test]
    fn small_mesh() {
        let mesh = sphere_mesh(10, 3, 2).unwrap();
        assert_eq!(mesh.len(), 8);
        let has = |a: f64, b: f64, c: f64| mesh.iter().any(|s| (s.a, s.b, s.c) == (a, b, c));
        assert!(has(1.0, 0.0, 0.0));
        assert!(has(0.0, 0.0, -1.0));
        assert!(has(0.0, 1.0, 0.0) && has(0.0, -1.0, 0.0));
        assert!(sphere_mesh(10, 3, 1).is_err());
        assert!(sphere_mesh(5, 2, 4).is_err());
    }

    #[test]
    fn mesh_lies_on_sphere() {
        for &(m, n) in &[(10, 3), (4, 1), (10, 7), (6, 3)] {
            let p = TrinomialParams::new(m, n).unwrap();
            let mesh = sphere_mesh(m, n, 40).unwrap();
            assert!(mesh.len() <= 2 * 41 * 41);
            for s in mesh {
                assert!(in_pi(s.a, s.c));
                let e = edge_norm(&Trinomial::new(s.a, s.b, s.c, p).unwrap());
                assert!((e - 1.0).abs() <= 1e-9, "({m},{n}) {s:?} -> {e}");
            }
        }
    }

    #[test]
    fn continuity_on_boundaries() {
        for &(m, n) in &[(10, 3), (4, 1), (12, 5)] {
            let k = CaseCConstants::new(m, n).unwrap();
            for i in 0..=100 {
                let s = i as f64 / 100.0;
                // c = lambda0 (a - 1): U1 against W.
                let a = k.a0 + (1.0 - k.a0) * s;
                let c = k.lambda0 * (a - 1.0);
                let u = f_branch(&k, PiRegion::U1, a, c);
                assert!((u - f_branch(&k, PiRegion::W, a, c)).abs() <= 1e-9);
                // Gamma: U1 against W.
                let a = k.a0 + (k.a1 - k.a0) * s;
                let c = k.gamma(a).unwrap().output;
                let u = f_branch(&k, PiRegion::U1, a, c);
                assert!((u - f_branch(&k, PiRegion::W, a, c)).abs() <= 1e-9);
                // Upsilon: U1 against V1.
                let a = k.a1 + (1.0 - k.a1) * s;
                let c = k.upsilon(a).unwrap();
                let u = f_branch(&k, PiRegion::U1, a, c);
                assert!((u - f_branch(&k, PiRegion::V1, a, c)).abs() <= 1e-9);
                // c = lambda0 a - 1: V1 against W.
                let a = k.a1 * s;
                let c = k.lambda0 * a - 1.0;
                let v = f_branch(&k, PiRegion::V1, a, c);
                assert!((v - f_branch(&k, PiRegion::W, a, c)).abs() <= 1e-9);
            }
        }
    }
}
