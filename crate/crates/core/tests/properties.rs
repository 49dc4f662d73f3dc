use proptest::prelude::*;

use trinorm::curves::CaseCConstants;
use trinorm::norms::{classify_case_c, NormContext, RegionC};
use trinorm::oracle::edge_norm;
use trinorm::scalar::{bisect, signed_pow, RationalExponent, RootBracket, Tolerances};
use trinorm::sphere::{in_pi, SphereChart};
use trinorm::{ParityCase, Trinomial, TrinomialParams};

fn pair() -> impl Strategy<Value = TrinomialParams> {
    (2u32..=14)
        .prop_flat_map(|m| (Just(m), 1..m))
        .prop_map(|(m, n)| TrinomialParams::new(m, n).unwrap())
}

fn case_c_pair() -> impl Strategy<Value = TrinomialParams> {
    pair().prop_filter("m even, n odd", |p| p.parity() == ParityCase::CEvenMOddN)
}

fn coeff() -> impl Strategy<Value = f64> {
    -2.0f64..2.0
}

fn tri(params: TrinomialParams, a: f64, b: f64, c: f64) -> Trinomial {
    Trinomial::new(a, b, c, params).unwrap()
}

// Max of |p| over a full lattice of the square, interior included.
fn square_sup(p: &Trinomial, k: usize) -> f64 {
    let node = |i: usize| -1.0 + 2.0 * i as f64 / (k - 1) as f64;
    let mut best = 0.0f64;
    for i in 0..k {
        for j in 0..k {
            best = best.max(p.eval(node(i), node(j)).abs());
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn edge_norm_brackets_lattice_sup(params in pair(), a in coeff(), b in coeff(), c in coeff()) {
        let p = tri(params, a, b, c);
        let e = edge_norm(&p);
        let k = 801;
        let s = square_sup(&p, k);
        let lipschitz = f64::from(params.m()) * (a.abs() + b.abs() + c.abs());
        prop_assert!(s <= e * (1.0 + 1e-12) + 1e-15);
        prop_assert!(e - s <= lipschitz * 2.0 / (k - 1) as f64 + 1e-12);
    }

    #[test]
    fn edge_norm_axioms(
        params in pair(),
        p in (coeff(), coeff(), coeff()),
        q in (coeff(), coeff(), coeff()),
        s in -3.0f64..3.0,
    ) {
        let np = edge_norm(&tri(params, p.0, p.1, p.2));
        let nq = edge_norm(&tri(params, q.0, q.1, q.2));
        let sum = edge_norm(&tri(params, p.0 + q.0, p.1 + q.1, p.2 + q.2));
        prop_assert!(sum <= np + nq + 1e-12);
        let scaled = edge_norm(&tri(params, s * p.0, s * p.1, s * p.2));
        prop_assert!((scaled - s.abs() * np).abs() <= 1e-13 * (s.abs() * np).max(1.0));
        prop_assert_eq!(edge_norm(&tri(params, -p.0, -p.1, -p.2)), np);
    }

    #[test]
    fn swap_is_an_isometry(params in pair(), a in coeff(), b in coeff(), c in coeff()) {
        let p = tri(params, a, b, c);
        prop_assert_eq!(edge_norm(&p), edge_norm(&p.swapped()));
        let ctx = NormContext::new(params).unwrap();
        let other = NormContext::new(params.swapped()).unwrap();
        let x = ctx.norm(a, b, c);
        prop_assert!((x - other.norm(c, b, a)).abs() <= 1e-12 * x.max(1.0));
    }

    #[test]
    fn closed_form_matches_oracle(params in pair(), a in coeff(), b in coeff(), c in coeff()) {
        let ctx = NormContext::new(params).unwrap();
        let e = edge_norm(&tri(params, a, b, c));
        prop_assert!((ctx.norm(a, b, c) - e).abs() <= 1e-9 * e.max(1e-300));
    }

    #[test]
    fn case_c_ignores_sign_of_b(params in case_c_pair(), a in coeff(), b in coeff(), c in coeff()) {
        let ctx = NormContext::new(params).unwrap();
        prop_assert_eq!(ctx.norm(a, b, c).to_bits(), ctx.norm(a, -b, c).to_bits());
    }

    #[test]
    fn classifier_commutes_with_point_reflection(
        params in case_c_pair(),
        b in -3.0f64..3.0,
        t in -1.5f64..1.5,
    ) {
        prop_assume!(params.m() >= 2 * params.n());
        let k = CaseCConstants::new(params.m(), params.n()).unwrap();
        prop_assert_eq!(classify_case_c(&k, -b, -t), classify_case_c(&k, b, t).mirrored());
    }

    #[test]
    fn heights_are_centrally_symmetric(params in case_c_pair(), a in -1.0f64..1.0, c in -1.0f64..1.0) {
        prop_assume!(in_pi(a, c));
        let chart = SphereChart::new(params).unwrap();
        let (h, _) = chart.height(a, c).unwrap();
        let (hm, _) = chart.height(-a, -c).unwrap();
        prop_assert!(h >= 0.0);
        prop_assert!((h - hm).abs() <= 1e-12);
        let lifted = edge_norm(&tri(params, a, h, c));
        prop_assert!((lifted - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn signed_pow_rules(t in -4.0f64..4.0, p in -6i64..6, q in 1u64..6, r in -6i64..6) {
        prop_assume!(t != 0.0);
        let e = RationalExponent::new(p, 2 * q - 1);
        let f = RationalExponent::new(r, 2 * q - 1);
        let x = signed_pow(t, e).unwrap();
        let y = signed_pow(t, f).unwrap();
        let xy = signed_pow(t, e + f).unwrap();
        prop_assert!((x * y - xy).abs() <= 1e-12 * xy.abs().max(1.0));
        let mirrored = signed_pow(-t, e).unwrap();
        let sign = if e.num() % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((mirrored - sign * x).abs() <= 1e-12 * x.abs().max(1.0));
        prop_assert!(signed_pow(-t.abs(), RationalExponent::new(1, 2 * q)).is_err());
    }

    #[test]
    fn bisect_stays_in_bracket(root in -0.9f64..0.9, scale in 0.1f64..10.0) {
        let f = |x: f64| scale * (x - root) * (1.0 + (x - root).powi(2));
        let bracket = RootBracket::around(f, -1.0, 1.0).unwrap();
        let x = bisect(f, bracket, Tolerances::default()).unwrap();
        prop_assert!((-1.0..=1.0).contains(&x));
        prop_assert!((x - root).abs() <= 1e-13);
    }
}

#[test]
fn axis_points_are_degenerate() {
    let k = CaseCConstants::new(10, 3).unwrap();
    assert_eq!(classify_case_c(&k, 0.0, 0.5), RegionC::DegenerateAxis);
    assert_eq!(classify_case_c(&k, 0.5, 0.0), RegionC::DegenerateAxis);
}
