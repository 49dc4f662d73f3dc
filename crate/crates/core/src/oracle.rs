//! Reference norms computed directly from the polynomial.
//!
//! The sup over the square is attained on the edges `x = 1` and `y = 1`.
//! On each edge the restriction is a univariate trinomial whose maximum is
//! taken over the finite set of endpoints, zero and real critical points.

use crate::trinomial::Trinomial;

/// `sup_{x in [-1,1]} |lead x^m + mid x^k + k0|` for `0 < k < m`.
pub fn line_sup(lead: f64, mid: f64, k0: f64, m: u32, k: u32) -> f64 {
    let mi = m as i32;
    let ki = k as i32;
    let value = |x: f64| (lead * x.powi(mi) + mid * x.powi(ki) + k0).abs();
    let mut best = value(-1.0).max(value(0.0)).max(value(1.0));
    if lead != 0.0 && mid != 0.0 {
        // Critical points of the non-constant part: x^(m-k) = -k mid / (m lead).
        let r = -(k as f64) * mid / (m as f64 * lead);
        let e = m - k;
        let mut consider = |x: f64| {
            if (-1.0..=1.0).contains(&x) {
                best = best.max(value(x));
            }
        };
        if e % 2 == 1 {
            consider(r.signum() * r.abs().powf(1.0 / e as f64));
        } else if r > 0.0 {
            let root = r.powf(1.0 / e as f64);
            consider(root);
            consider(-root);
        }
    }
    best
}

/// Exact sup-norm over `[-1,1]^2` via the two edge restrictions.
pub fn edge_norm(p: &Trinomial) -> f64 {
    let m = p.params.m();
    let n = p.params.n();
    let on_x_edge = line_sup(p.c, p.b, p.a, m, n);
    let on_y_edge = line_sup(p.a, p.b, p.c, m, m - n);
    on_x_edge.max(on_y_edge)
}

/// Max of `|p|` over `samples_per_edge` uniform points (endpoints included) of each edge.
///
/// Panics if `samples_per_edge < 2`.
pub fn grid_norm(p: &Trinomial, samples_per_edge: usize) -> f64 {
    assert!(
        samples_per_edge >= 2,
        "grid_norm needs at least two samples"
    );
    let last = (samples_per_edge - 1) as f64;
    let mut best = 0.0f64;
    for i in 0..samples_per_edge {
        let s = if i + 1 == samples_per_edge {
            1.0
        } else {
            -1.0 + 2.0 * i as f64 / last
        };
        best = best.max(p.eval(1.0, s).abs()).max(p.eval(s, 1.0).abs());
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trinomial::TrinomialParams;

    fn tri(a: f64, b: f64, c: f64, m: u32, n: u32) -> Trinomial {
        Trinomial::new(a, b, c, TrinomialParams::new(m, n).unwrap()).unwrap()
    }

    // Independent dense sweep of both edges.
    fn sweep(p: &Trinomial, n: usize) -> f64 {
        (0..=n)
            .map(|i| -1.0 + 2.0 * i as f64 / n as f64)
            .map(|s| p.eval(1.0, s).abs().max(p.eval(s, 1.0).abs()))
            .fold(0.0, f64::max)
    }

    #[test]
    fn edge_norm_examples() {
        assert_eq!(edge_norm(&tri(1.0, 0.0, 0.0, 10, 3)), 1.0);
        assert_eq!(edge_norm(&tri(0.0, 2.0, -3.0, 10, 3)), 5.0);
        let p = tri(2.0, 0.0, -1.0, 2, 1);
        assert_eq!(edge_norm(&p), 2.0);
        assert!((sweep(&p, 1_000_000) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn grid_norm_examples() {
        assert_eq!(grid_norm(&tri(1.0, 0.0, 0.0, 10, 3), 1001), 1.0);
        let g = grid_norm(&tri(0.0, 2.0, -3.0, 10, 3), 10001);
        assert!(5.0 - g <= 1e-6 && g <= 5.0);
        assert_eq!(grid_norm(&tri(2.0, 0.0, -1.0, 2, 1), 3), 2.0);
    }

    #[test]
    fn interior_critical_point() {
        // x^4 - 1.5x^2 peaks in modulus at x^2 = 0.75.
        assert!((line_sup(1.0, -1.5, 0.0, 4, 2) - 0.5625).abs() < 1e-15);
        let q = tri(0.1, 1.7, -1.9, 10, 3);
        assert!((edge_norm(&q) - sweep(&q, 1_000_000)).abs() < 1e-9);
    }
}
