//! Randomized consistency suites over one exponent pair.

use serde::Serialize;

use crate::error::Result;
use crate::norms::{classify_case_c, in_a1, in_b1, line_norm, NormContext, RegionC};
use crate::oracle::{edge_norm, grid_norm};
use crate::sampling::UniformSampler;
use crate::sphere::{classify_pi, in_pi, phi_map, PiRegion, SphereChart};
use crate::trinomial::{ParityCase, Trinomial, TrinomialParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub trials: usize,
    pub seed: u64,
    /// Relative closed-form vs oracle error.
    pub oracle: f64,
    /// Relative error of the relation and reduction identities.
    pub identity: f64,
    /// Relative error of homogeneity.
    pub homogeneity: f64,
    /// Allowed violation of the triangle inequality.
    pub triangle: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            trials: 10_000,
            seed: 0,
            oracle: 1e-9,
            identity: 1e-11,
            homogeneity: 1e-13,
            triangle: 1e-11,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    /// Largest observed error, or the number of violations for counting suites.
    pub max_error: f64,
    pub tolerance: f64,
    pub trials: usize,
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs().max(1.0)
}

fn tri(params: TrinomialParams, p: [f64; 3]) -> Trinomial {
    Trinomial {
        a: p[0],
        b: p[1],
        c: p[2],
        params,
    }
}

fn oracle_agreement(ctx: &NormContext, cfg: &SuiteConfig) -> SuiteResult {
    let params = ctx.params();
    let mut rng = UniformSampler::new(cfg.seed);
    let mut worst = 0.0f64;
    if params.parity() == ParityCase::BBothEven {
        // No closed form: compare the edge oracle against dense sampling instead.
        let trials = cfg.trials.min(100);
        let mut passed = true;
        for _ in 0..trials {
            let p = tri(params, rng.triple(-2.0, 2.0));
            let e = edge_norm(&p);
            let g = grid_norm(&p, 100_000);
            passed &= g <= e + 1e-12;
            worst = worst.max(e - g);
        }
        return SuiteResult {
            name: "oracle_vs_grid",
            passed: passed && worst <= 1e-7,
            max_error: worst,
            tolerance: 1e-7,
            trials,
        };
    }
    for _ in 0..cfg.trials {
        let [a, b, c] = rng.triple(-2.0, 2.0);
        let e = edge_norm(&tri(params, [a, b, c]));
        worst = worst.max(rel(ctx.norm(a, b, c), e));
    }
    SuiteResult {
        name: "closed_vs_oracle",
        passed: worst <= cfg.oracle,
        max_error: worst,
        tolerance: cfg.oracle,
        trials: cfg.trials,
    }
}

fn relation(ctx: &NormContext, cfg: &SuiteConfig) -> Result<SuiteResult> {
    let (m, n) = (ctx.params().m(), ctx.params().n());
    let mut rng = UniformSampler::new(cfg.seed ^ 0x5eed_0001);
    let trials = cfg.trials.min(1000);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let [a, b, c] = rng.triple(-2.0, 2.0);
        let lines = line_norm(a, b, c, m, m - n)?.max(line_norm(c, b, a, m, n)?);
        worst = worst.max(rel(ctx.norm(a, b, c), lines));
    }
    Ok(SuiteResult {
        name: "relation",
        passed: worst <= cfg.identity,
        max_error: worst,
        tolerance: cfg.identity,
        trials,
    })
}

fn reduction(ctx: &NormContext, cfg: &SuiteConfig) -> Result<SuiteResult> {
    let swapped = NormContext::new(ctx.params().swapped())?;
    let mut rng = UniformSampler::new(cfg.seed ^ 0x5eed_0002);
    let trials = cfg.trials.min(1000);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let [a, b, c] = rng.triple(-2.0, 2.0);
        worst = worst.max(rel(ctx.norm(a, b, c), swapped.norm(c, b, a)));
    }
    Ok(SuiteResult {
        name: "reduction",
        passed: worst <= cfg.identity,
        max_error: worst,
        tolerance: cfg.identity,
        trials,
    })
}

fn axioms(ctx: &NormContext, cfg: &SuiteConfig) -> Vec<SuiteResult> {
    let mut rng = UniformSampler::new(cfg.seed ^ 0x5eed_0003);
    let trials = cfg.trials.min(1000);
    let mut homog = 0.0f64;
    let mut triangle = 0.0f64;
    let mut sign_flips = 0usize;
    for _ in 0..trials {
        let [a, b, c] = rng.triple(-2.0, 2.0);
        let [d, e, f] = rng.triple(-2.0, 2.0);
        let s = rng.uniform(-3.0, 3.0);
        let np = ctx.norm(a, b, c);
        let nq = ctx.norm(d, e, f);
        homog = homog
            .max((ctx.norm(s * a, s * b, s * c) - s.abs() * np).abs() / (s.abs() * np).max(1e-300));
        triangle = triangle.max(ctx.norm(a + d, b + e, c + f) - np - nq);
        if ctx.params().parity() == ParityCase::CEvenMOddN
            && ctx.norm(a, -b, c).to_bits() != np.to_bits()
        {
            sign_flips += 1;
        }
    }
    let mut out = vec![
        SuiteResult {
            name: "homogeneity",
            passed: homog <= cfg.homogeneity,
            max_error: homog,
            tolerance: cfg.homogeneity,
            trials,
        },
        SuiteResult {
            name: "triangle",
            passed: triangle <= cfg.triangle,
            max_error: triangle.max(0.0),
            tolerance: cfg.triangle,
            trials,
        },
    ];
    if ctx.params().parity() == ParityCase::CEvenMOddN {
        out.push(SuiteResult {
            name: "b_sign_symmetry",
            passed: sign_flips == 0,
            max_error: sign_flips as f64,
            tolerance: 0.0,
            trials,
        });
    }
    out
}

fn projection(chart: &SphereChart, cfg: &SuiteConfig) -> SuiteResult {
    let params = chart.params();
    let mut rng = UniformSampler::new(cfg.seed ^ 0x5eed_0004);
    let mut violations = 0usize;
    for _ in 0..cfg.trials {
        let p = rng.triple(-2.0, 2.0);
        let e = edge_norm(&tri(params, p));
        if e == 0.0 {
            continue;
        }
        // Rescale into the ball.
        let s = rng.unit() / e;
        if !in_pi(s * p[0], s * p[2]) {
            violations += 1;
        }
    }
    SuiteResult {
        name: "projection",
        passed: violations == 0,
        max_error: violations as f64,
        tolerance: 0.0,
        trials: cfg.trials,
    }
}

/// Samples of each hexagon region away from the axes, mapped through Phi and
/// checked against the matching `(b, t)` region.
fn region_mapping(chart: &SphereChart, cfg: &SuiteConfig) -> Result<SuiteResult> {
    let k = chart.constants();
    let want = cfg.trials.min(1000);
    let mut rng = UniformSampler::new(cfg.seed ^ 0x5eed_0005);
    let (mut v1, mut u1, mut w) = (0usize, 0usize, 0usize);
    let mut violations = 0usize;
    let mut draws = 0usize;
    while (v1 < want || u1 < want || w < want) && draws < 50_000_000 {
        draws += 1;
        let a = rng.uniform(-1.0, 1.0);
        let c = rng.uniform(-1.0, 1.0);
        if !in_pi(a, c) || a == 0.0 || c == 0.0 {
            continue;
        }
        let region = classify_pi(k, a, c)?;
        let slot = match region {
            PiRegion::V1 => &mut v1,
            PiRegion::U1 => &mut u1,
            PiRegion::W => &mut w,
            _ => continue,
        };
        if *slot >= want {
            continue;
        }
        *slot += 1;
        let (b, t) = phi_map(k, a, c)?;
        let origin = b == 0.0 && t == 0.0;
        let ok = origin
            || match region {
                PiRegion::V1 => in_a1(k, b, t),
                PiRegion::U1 => in_b1(k, b, t),
                _ => classify_case_c(k, b, t) == RegionC::Outside,
            };
        if !ok {
            violations += 1;
        }
    }
    Ok(SuiteResult {
        name: "region_mapping",
        passed: violations == 0 && v1 == want && u1 == want && w == want,
        max_error: violations as f64,
        tolerance: 0.0,
        trials: v1 + u1 + w,
    })
}

/// Runs every suite that applies to the parity case of `params`.
pub fn run_suites(params: TrinomialParams, cfg: &SuiteConfig) -> Result<Vec<SuiteResult>> {
    let ctx = NormContext::new(params)?;
    let mut out = vec![oracle_agreement(&ctx, cfg)];
    if params.parity() == ParityCase::CEvenMOddN {
        out.push(relation(&ctx, cfg)?);
    }
    out.push(reduction(&ctx, cfg)?);
    out.extend(axioms(&ctx, cfg));
    if params.parity() == ParityCase::CEvenMOddN {
        let chart = SphereChart::new(params)?;
        out.push(projection(&chart, cfg));
        out.push(region_mapping(&chart, cfg)?);
    }
    Ok(out)
}
