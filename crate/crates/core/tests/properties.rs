//! Property tests across the series engine, generators, verifier and report.

use std::f64::consts::PI;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use subordination::catalog::{self, LemmaId, LemmaParams};
use subordination::generators::{self, make_schwarz, SchwarzFamily};
use subordination::report::{sig9, RunConfig};
use subordination::series::PowerSeries;
use subordination::verifier::{Verifier, VerifierSettings};
use subordination::Complex64;

const N: usize = 24;

/// `1 + Σ cₙzⁿ` with `|cₙ| ≤ 0.6·2⁻ⁿ`: zero-free on the closed disk.
fn unit_series() -> impl Strategy<Value = PowerSeries> {
    prop::collection::vec((0.0..0.6f64, -PI..PI), N).prop_map(|v| {
        let tail = v
            .into_iter()
            .enumerate()
            .map(|(i, (r, t))| Complex64::from_polar(r * 0.5f64.powi(i as i32 + 1), t));
        PowerSeries::from_coeffs(std::iter::once(Complex64::new(1.0, 0.0)).chain(tail), N).unwrap()
    })
}

fn lemma() -> impl Strategy<Value = LemmaId> {
    prop::sample::select(LemmaId::ALL.to_vec())
}

fn margin_lemma() -> impl Strategy<Value = LemmaId> {
    prop::sample::select(LemmaId::WITH_MARGIN.to_vec())
}

fn small_disk_point() -> impl Strategy<Value = Complex64> {
    (0.0..0.5f64, -PI..PI).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn product_is_commutative_and_associative(a in unit_series(), b in unit_series(), c in unit_series()) {
        prop_assert!(a.mul(&b).max_abs_diff(&b.mul(&a)) <= 1e-14);
        prop_assert!(a.mul(&b).mul(&c).max_abs_diff(&a.mul(&b.mul(&c))) <= 1e-13);
    }

    #[test]
    fn powers_add_exponents(s in unit_series(), x in -2.0..2.0f64, y in -2.0..2.0f64) {
        let lhs = s.powf(x).unwrap().mul(&s.powf(y).unwrap());
        prop_assert!(lhs.max_abs_diff(&s.powf(x + y).unwrap()) <= 1e-12);
    }

    #[test]
    fn log_of_product_is_sum(a in unit_series(), b in unit_series()) {
        let lhs = a.mul(&b).ln().unwrap();
        let rhs = &a.ln().unwrap() + &b.ln().unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-13);
    }

    #[test]
    fn evaluation_is_a_ring_map(a in unit_series(), b in unit_series(), z in small_disk_point()) {
        let prod = a.mul(&b).eval(z);
        // Truncation error at |z| < 1/2 is below 2^{-N} times the coefficient scale.
        prop_assert!((prod - a.eval(z) * b.eval(z)).norm() <= 1e-6);
    }

    #[test]
    fn zderiv_of_antiderivative_is_shift(s in unit_series()) {
        let shifted = s.integrate0().zderiv();
        for n in 1..=N {
            prop_assert!((shifted.coeff(n) - s.coeff(n - 1)).norm() <= 1e-15);
        }
        prop_assert_eq!(shifted.coeff(0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn composing_with_identity_is_neutral(s in unit_series()) {
        let z = PowerSeries::identity(N).unwrap();
        prop_assert!(s.compose(&z).unwrap().max_abs_diff(&s) <= 1e-15);
    }

    #[test]
    fn composition_commutes_with_evaluation(s in unit_series(), seed in any::<u64>(), z in small_disk_point()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = make_schwarz(SchwarzFamily::random_mixture(&mut rng), N).unwrap();
        let composed = s.compose(w.series()).unwrap();
        let direct = s.eval(w.eval(z));
        prop_assert!((composed.eval(z) - direct).norm() <= 1e-5);
    }

    #[test]
    fn schwarz_draws_fix_zero_and_map_into_disk(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = make_schwarz(SchwarzFamily::random_mixture(&mut rng), 64).unwrap();
        prop_assert_eq!(w.series().constant_term(), Complex64::new(0.0, 0.0));
        prop_assert!(w.sampled_sup(4096) <= 1.0 + 1e-12);
        for j in 0..32 {
            let z = Complex64::from_polar(0.9, j as f64 * PI / 16.0);
            prop_assert!(w.eval(z).norm() <= z.norm() + 1e-12);
        }
    }

    #[test]
    fn sig9_is_idempotent_and_close(x in -1e6..1e6f64) {
        let r = sig9(x);
        prop_assert_eq!(sig9(r), r);
        prop_assert!((r - x).abs() <= 5e-9 * x.abs());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn premise_solutions_satisfy_the_premise(l in lemma(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = match catalog::random_feasible(l, &mut rng) {
            Some(p) => p,
            None => catalog::random_params(l, &mut rng),
        };
        let w = make_schwarz(SchwarzFamily::random_mixture(&mut rng), 48).unwrap();
        let sol = generators::solve_premise_ode(l, &p, &w, 48).unwrap();
        prop_assert_eq!(sol.p.constant_term(), Complex64::new(1.0, 0.0));
        prop_assert!(sol.residual <= 1e-9, "residual {}", sol.residual);
        let lhs = generators::premise_expression(l, &p, &sol.p).unwrap();
        let rhs = generators::premise_series(l, &p, w.series()).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-9);
    }

    #[test]
    fn margin_profile_is_even(l in margin_lemma(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = catalog::random_feasible(l, &mut rng).unwrap();
        let v = Verifier::new(VerifierSettings { margin_grid: 256, ..VerifierSettings::default() });
        let m = v.boundary_margin_profile(l, &p).unwrap();
        let at = |t: f64| {
            let h = catalog::premise_h_eval(l, &p, Complex64::from_polar(1.0, t)).unwrap();
            catalog::premise_region(l, &p).phi_inverse(h).unwrap().norm()
        };
        for (&t, &margin) in m.t_samples.iter().zip(&m.margins).step_by(7) {
            if m.punctures.iter().any(|&s| (t.abs() - s.abs()).abs() < 1e-3) {
                continue;
            }
            prop_assert!((at(-t) - margin).abs() <= 1e-9 * margin.max(1.0));
        }
    }

    #[test]
    fn feasibility_is_monotone_above_threshold(l in margin_lemma(), seed in any::<u64>(), f in 1.0..4.0f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = catalog::random_feasible(l, &mut rng).unwrap();
        prop_assert!(catalog::feasibility_check(l, &p));
        let scaled = p.with_beta(p.beta * f);
        // The L8 cap bounds β from above.
        if l != LemmaId::L8SumJanowski {
            prop_assert!(catalog::feasibility_check(l, &scaled));
        }
        prop_assert!(!catalog::feasibility_check(l, &p.with_beta(p.beta * (1.0 - 1e-6))));
    }

    #[test]
    fn sweep_is_the_full_grid(a in 1usize..4, b in 1usize..4, k in 1usize..4) {
        let mut cfg = RunConfig::new(LemmaId::L1KFamily);
        cfg.a = (0..a).map(|i| 1.0 - 0.1 * i as f64).collect();
        cfg.b = (0..b).map(|i| -0.1 * i as f64).collect();
        cfg.k = (0..k).map(|i| i as f64).collect();
        let pts = cfg.sweep_points();
        prop_assert_eq!(pts.len(), a * b * k);
        prop_assert_eq!(pts[0], LemmaParams { a: 1.0, b: 0.0, d: 1.0, e: 0.0, k: 0.0, beta: 1.0 });
        prop_assert_eq!(pts.last().unwrap().k, (k - 1) as f64);
    }
}
