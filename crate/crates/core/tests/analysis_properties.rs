use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use ulam::asymptotics::{characteristic_delta, empirical_exponent, polynomial_rho, RecurrencePoly, Root};
use ulam::continuous::{
    classify_regions, generalized_mean_ode, mean_continuized, oscillation_discriminant, second_moment_continuized_base,
    sigma_roots, RegionLabel,
};
use ulam::process::{simulate_continuized_with, PathInit, ProcessSpec, WeightSpec};
use ulam::stats::{ensemble_map, Estimate};

fn sorted_re(roots: &[Root]) -> Vec<f64> {
    let mut v: Vec<f64> = roots.iter().flat_map(|r| std::iter::repeat_n(r.re, r.multiplicity)).collect();
    v.sort_by(f64::total_cmp);
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constant_coefficient_deltas(r1 in -3.0f64..3.0, gap in 0.2f64..3.0) {
        // (delta - r1)(delta - r2) = delta^2 - (r1 + r2) delta + r1 r2
        let r2 = r1 + gap;
        prop_assume!(r1.abs() > 0.05 && r2.abs() > 0.05);
        let rec = RecurrencePoly::new(vec![vec![r1 * r2], vec![-(r1 + r2)], vec![1.0]]).unwrap();
        let got = sorted_re(&characteristic_delta(&rec).unwrap());
        prop_assert_eq!(got.len(), 2);
        prop_assert!((got[0] - r1).abs() < 1e-9 && (got[1] - r2).abs() < 1e-9);
    }

    #[test]
    fn sigma_roots_solve_quadratic(alpha in 0.1f64..5.0, beta in 0.1f64..5.0, a in -3.0f64..3.0, b in -3.0f64..3.0) {
        // sigma^2 + [beta(1 - B) + alpha(1 - A)] sigma + (1 - A - B) alpha beta = 0
        let lin = beta * (1.0 - b) + alpha * (1.0 - a);
        let cst = (1.0 - a - b) * alpha * beta;
        for s in sigma_roots(alpha, beta, a, b) {
            let r = s * s + lin * s + cst;
            prop_assert!(r.norm() < 1e-9 * (1.0 + s.norm_sqr() + lin.abs() + cst.abs()));
        }
        let report = classify_regions(alpha, beta, a, b).unwrap();
        prop_assert_eq!(report.oscillatory, oscillation_discriminant(alpha, beta, a, b) < 0.0 && !report.repeated_root);
    }

    #[test]
    fn unit_weights_dominant_root(alpha in 0.1f64..10.0, beta in 0.1f64..10.0) {
        let s = sigma_roots(alpha, beta, 1.0, 1.0);
        prop_assert!((s[0] - Complex64::new((alpha * beta).sqrt(), 0.0)).norm() < 1e-12 * (alpha * beta).sqrt().max(1.0));
    }

    #[test]
    fn equal_rates_never_oscillate(alpha in 0.05f64..10.0, a in -4.0f64..4.0, b in -4.0f64..4.0) {
        prop_assert!(oscillation_discriminant(alpha, alpha, a, b) >= -1e-9);
        prop_assert!(!classify_regions(alpha, alpha, a, b).unwrap().oscillatory);
    }

    #[test]
    fn circle_boundary_branches_meet(alpha in 0.05f64..10.0, phi in 0.0f64..(2.0 * PI)) {
        let (a, b) = (1.0 + phi.cos(), 1.0 + phi.sin());
        let left = alpha * (a * a + b * b - 1.0);
        let right = 2.0 * alpha * (a + b - 1.0);
        prop_assert!((left - right).abs() < 1e-12 * alpha.max(1.0));
        let e = classify_regions(alpha, alpha, a, b).unwrap().second_moment_exponent.unwrap();
        prop_assert!((e - left.max(right)).abs() < 1e-12 * alpha.max(1.0));
    }
}

#[test]
fn rho_invariant_under_polynomial_multiple() {
    for rec in [
        RecurrencePoly::discrete_second_moment(),
        RecurrencePoly::discrete_third_moment(),
        RecurrencePoly::p_adding_second_moment(0.4),
    ] {
        let multiplied = rec.times_polynomial(&[3.0, -1.0, 2.0]);
        for delta in characteristic_delta(&rec).unwrap() {
            let a = sorted_re(&polynomial_rho(&rec, &delta).unwrap());
            let b = sorted_re(&polynomial_rho(&multiplied, &delta).unwrap());
            assert_eq!(a.len(), b.len());
            assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-6), "{a:?} vs {b:?}");
        }
    }
}

#[test]
fn forward_iterates_follow_dominant_exponent() {
    let fixtures = [
        (RecurrencePoly::discrete_second_moment(), 2.0, 100_000),
        (RecurrencePoly::discrete_third_moment(), 3.0, 100_000),
        // quintuple unit root: f64 round-off in the reduced form grows like n^5, so stay short
        (RecurrencePoly::discrete_fourth_moment(), 4.0, 4000),
        (RecurrencePoly::p_adding_second_moment(0.5), 2.0, 100_000),
    ];
    for (rec, want, n_last) in fixtures {
        let start: Vec<f64> = (0..rec.order()).map(|i| 1.0 + 0.37 * i as f64).collect();
        // the dominant coefficient of generic data may be negative
        let u: Vec<f64> = rec.iterate::<f64>(&start, 5, n_last).unwrap().iter().map(|x| x.abs()).collect();
        let index: Vec<f64> = (0..u.len()).map(|i| (5 + i) as f64).collect();
        let slope = empirical_exponent(&index, &u, 0.2).unwrap().slope;
        assert!((slope - want).abs() < 0.02, "{slope} vs {want}");
    }
}

#[test]
fn second_moment_dominates_squared_mean() {
    let grid: Vec<f64> = (1..=100).map(|i| i as f64 * 2.0).collect();
    let init = PathInit::point(1.0).unwrap();
    for s in second_moment_continuized_base(&grid).unwrap() {
        let m = mean_continuized(&init, s.t).unwrap();
        assert!(s.q >= m * m && s.big_q >= 0.0);
    }
}

#[test]
fn generalized_mean_matches_monte_carlo() {
    // decaying real sigma: ensemble means shrink with the ODE solution
    let points =
        [(1.0, 1.0, 0.2, 0.3), (2.0, 1.0, 0.4, 0.2), (0.7, 1.5, 0.1, 0.5), (1.5, 0.5, 0.3, 0.3), (1.0, 2.0, 0.5, 0.1)];
    let init = PathInit::point(1.0).unwrap();
    let times = [1.0, 3.0];
    for (alpha, beta, a, b) in points {
        let report = classify_regions(alpha, beta, a, b).unwrap();
        assert_eq!(report.region_label, RegionLabel::RealDecaying, "{alpha} {beta} {a} {b}");
        let ode = generalized_mean_ode(alpha, beta, a, b, &times).unwrap();
        let spec = ProcessSpec::Continuized { alpha, beta, weights: WeightSpec::constant(a, b) };
        let values = ensemble_map(40_000, |k| {
            let tr = simulate_continuized_with(&init, &spec, times[1], 21, k)?;
            Ok(times.map(|t| tr.value_at(t)))
        })
        .unwrap();
        for (i, &m) in ode.m.iter().enumerate() {
            let e = Estimate::from_samples(values.iter().map(|v| v[i]));
            assert!(e.within(m, 3.0), "({alpha}, {beta}, {a}, {b}) t = {}: {e:?} vs {m}", times[i]);
        }
        assert!(ode.m[1] < ode.m[0] || report.mean_exponent < 0.0);
    }
}
