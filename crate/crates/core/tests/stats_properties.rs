use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Gamma};
use ulam::process::DiscreteInit;
use ulam::stats::{gamma2_cdf, gamma2_quantile, limit_density_samples, loggamma_fit, wasserstein2, Estimate, Target};

fn quantile_grid(n: usize, target: Target) -> Vec<f64> {
    (0..n).map(|i| target.quantile((i as f64 + 0.5) / n as f64).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn zero_on_exact_quantiles(n in 100usize..2000) {
        prop_assert!(wasserstein2(&quantile_grid(n, Target::Gamma2), Target::Gamma2).unwrap() < 1e-12);
        prop_assert!(wasserstein2(&quantile_grid(n, Target::Exp1), Target::Exp1).unwrap() < 1e-12);
    }

    #[test]
    fn nonnegative_and_permutation_symmetric(mut xs in prop::collection::vec(0.001f64..20.0, 100..400), seed in any::<u64>()) {
        let d = wasserstein2(&xs, Target::Gamma2).unwrap();
        prop_assert!(d >= 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rand::seq::SliceRandom::shuffle(xs.as_mut_slice(), &mut rng);
        prop_assert_eq!(wasserstein2(&xs, Target::Gamma2).unwrap(), d);
    }

    #[test]
    fn gamma_quantile_inverts_cdf(u in 1e-9f64..(1.0 - 1e-9)) {
        let w = gamma2_quantile(u).unwrap();
        prop_assert!((gamma2_cdf(w) - u).abs() < 1e-12);
    }

    #[test]
    fn loggamma_scale_consistent(theta in 0.02f64..0.24, k in 0.5f64..30.0, c in -1.0f64..1.0, lambda in 0.2f64..5.0) {
        let mu = |s: f64| (c * s - k * (-s * theta).ln_1p()).exp();
        let base = loggamma_fit(mu(1.0), mu(2.0), mu(3.0)).unwrap();
        let scaled = loggamma_fit(lambda * mu(1.0), lambda.powi(2) * mu(2.0), lambda.powi(3) * mu(3.0)).unwrap();
        prop_assert!((scaled.c - base.c - lambda.ln()).abs() < 1e-7 * (1.0 + base.c.abs()));
        prop_assert!((scaled.k / base.k - 1.0).abs() < 1e-7 && (scaled.theta / base.theta - 1.0).abs() < 1e-7);
        for (f, m) in base.fitted.iter().zip([mu(1.0), mu(2.0), mu(3.0)]) {
            prop_assert!((f / m - 1.0).abs() < 1e-8);
        }
        prop_assert!(base.theta < 0.25);
    }
}

#[test]
fn self_distance_from_sampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let gamma = Gamma::new(2.0, 1.0).unwrap();
    let g: Vec<f64> = (0..100_000).map(|_| gamma.sample(&mut rng)).collect();
    let e: Vec<f64> = (0..100_000).map(|_| Exp1.sample(&mut rng)).collect();
    assert!(wasserstein2(&g, Target::Gamma2).unwrap() < 0.02);
    assert!(wasserstein2(&e, Target::Exp1).unwrap() < 0.02);
}

#[test]
fn quantile_examples() {
    assert!(gamma2_quantile(1e-300).unwrap() < 1e-100);
    let q = gamma2_quantile(1.0 - 2.0 * (-1f64).exp()).unwrap();
    assert!((q - 1.0).abs() < 1e-12);
    let half = gamma2_quantile(0.5).unwrap();
    assert!(((-half).exp() * (1.0 + half) - 0.5).abs() < 1e-12);
}

#[test]
fn fit_examples_and_errors() {
    let fit = loggamma_fit(1.0, 1.225, 1.932).unwrap();
    assert!((fit.predicted_mu4 - 4.2099).abs() < 1e-3);
    assert!(loggamma_fit(1.0, 1.0, 1.0).is_err());
    assert!(loggamma_fit(1.0, 1.2, 1.5).is_err());
    assert!(wasserstein2(&[1.0; 50], Target::Exp1).is_err());
    assert!(wasserstein2(&[-1.0; 200], Target::Exp1).is_err());
}

#[test]
fn limit_histogram_tracks_gamma_density() {
    // bin noise at the peak is about sqrt(0.037 / reps) / 0.1, so 1e4 replicates cannot reach 0.03
    let n = 10_000;
    let s = limit_density_samples(&DiscreteInit::unit(), n, 50_000, 3).unwrap();
    let dev = s.hist_scaled.max_deviation(Target::Gamma2);
    assert!(dev < 0.03, "max bin deviation {dev}");
    assert!(Estimate::from_samples(s.scaled.iter().copied()).within(2.0, 3.0));
    // E W_n = 2 (n + 1) / n exactly
    assert!(Estimate::from_samples(s.w.iter().copied()).within(2.0 * (n + 1) as f64 / n as f64, 3.0));
    let bins: Vec<_> = s.hist_scaled.bins().collect();
    assert_eq!(bins.len(), 100);
    assert!((bins[0].left, bins[99].right) == (0.0, 10.0));
}
