use proptest::prelude::*;
use sl2cb::cgamma::{
    digamma, dougall_closed, dougall_partial_sums, dougall_series_extrapolated, gamma, gamma_ratio_half,
    log_gamma, DougallParams,
};
use sl2cb::Complex64 as C;
use std::f64::consts::PI;

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / b.norm()
}

fn away_from_integers() -> impl Strategy<Value = C> {
    (-8.0f64..8.0, -6.0f64..6.0).prop_filter("distance to Z > 0.05", |(re, im)| {
        C::new(*re - re.round(), *im).norm() > 0.05
    })
    .prop_map(|(re, im)| C::new(re, im))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn reflection(z in away_from_integers()) {
        let lhs = gamma(z).unwrap() * gamma(C::new(1.0, 0.0) - z).unwrap();
        let rhs = C::new(PI, 0.0) / (z * PI).sin();
        prop_assert!(rel(lhs, rhs) <= 1e-10, "z={z} {lhs} {rhs}");
    }

    #[test]
    fn duplication(re in 0.05f64..20.0, im in -5.0f64..5.0) {
        let z = C::new(re, im);
        let lhs = gamma(z + 0.5).unwrap() * gamma(z).unwrap();
        let rhs = gamma(z * 2.0).unwrap() * PI.sqrt() * C::new(2.0, 0.0).powc(C::new(1.0, 0.0) - z * 2.0);
        prop_assert!(rel(lhs, rhs) <= 1e-10, "z={z}");
    }

    #[test]
    fn conjugation(z in away_from_integers()) {
        let a = gamma(z.conj()).unwrap();
        let b = gamma(z).unwrap().conj();
        prop_assert!(rel(a, b) <= 1e-13);
    }

    #[test]
    fn recurrence(re in -6.0f64..12.0, im in -4.0f64..4.0) {
        let z = C::new(re, im);
        prop_assume!(C::new(re - re.round(), im).norm() > 0.05);
        let g = gamma(z).unwrap();
        let g1 = gamma(z + 1.0).unwrap();
        prop_assert!(rel(g1, g * z) <= 1e-12);
        let p = digamma(z).unwrap();
        let p1 = digamma(z + 1.0).unwrap();
        prop_assert!((p1 - p - C::new(1.0, 0.0) / z).norm() <= 1e-12 * (1.0 + p1.norm()));
    }

    #[test]
    fn digamma_is_log_derivative(re in 0.3f64..8.0, im in -3.0f64..3.0) {
        let z = C::new(re, im);
        let h = 1e-4;
        let d = (log_gamma(z + h).unwrap() - log_gamma(z - h).unwrap()) / (2.0 * h);
        prop_assert!((d - digamma(z).unwrap()).norm() < 1e-7);
    }

    /// Checked against a direct quotient of gammas rather than the fold used internally.
    #[test]
    fn ratio_sign_identity(re in -0.45f64..0.45, im in -2.0f64..2.0, k in -40i64..=40) {
        let z = C::new(re, im);
        let direct = |k: i64| {
            let b = 0.5 + k as f64 / 2.0;
            gamma(z + b).unwrap() / gamma(-z + b).unwrap()
        };
        let got = gamma_ratio_half(z, k).unwrap();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!(rel(got, direct(k)) <= 1e-10, "k={k} {got} {}", direct(k));
        prop_assert!(rel(got, direct(-k) * sign) <= 1e-10);
    }

    #[test]
    fn ratio_asymptotics(re in -0.45f64..0.45, im in -1.0f64..1.0) {
        let z = C::new(re, im);
        let k = 400;
        let r = gamma_ratio_half(z, k).unwrap().norm() / (k as f64 / 2.0).powf(2.0 * re);
        prop_assert!((r - 1.0).abs() < 0.02, "{r}");
    }
}

#[test]
fn stirling_agreement() {
    // independent Stirling series
    let z = C::new(10.0, 10.0);
    let ln2pi = (2.0 * PI).ln();
    let lead = (z - 0.5) * z.ln() - z + ln2pi / 2.0;
    let inv = C::new(1.0, 0.0) / z;
    let series = lead + inv / 12.0 - inv.powi(3) / 360.0 + inv.powi(5) / 1260.0 - inv.powi(7) / 1680.0;
    let lg = log_gamma(z).unwrap();
    assert!((lg - series).norm() < 1e-12, "{lg} {series}");
    // leading term alone is within the first correction
    let rel_err = ((lg - lead).exp() - 1.0).norm();
    assert!(rel_err <= 1.5 / (12.0 * z.norm()));
}

#[test]
fn dougall_tail_order() {
    let h = C::new(0.5, 0.0);
    let two = C::new(2.0, 0.0);
    let p = DougallParams::new(h, h, two, two).unwrap();
    let closed = dougall_closed(&p).unwrap();
    let ks = [250u32, 500, 1000, 2000];
    let sums = dougall_partial_sums(&p, &ks);
    let errs: Vec<f64> = sums.iter().map(|s| (closed - s).norm()).collect();
    for w in errs.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!((order - 2.0).abs() < 0.02, "order {order}");
    }
}

#[test]
fn dougall_complex_parameter() {
    let p = DougallParams::new(C::new(0.5, 0.0), C::new(0.5, 0.7), C::new(2.0, 0.0), C::new(2.0, 0.0)).unwrap();
    let closed = dougall_closed(&p).unwrap();
    let series = dougall_series_extrapolated(&p, 4000).unwrap();
    assert!((closed - series).norm() < 1e-6 * closed.norm(), "{closed} {series}");
}
