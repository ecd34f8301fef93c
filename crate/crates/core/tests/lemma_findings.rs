//! Pinned cases where a stated threshold does not deliver its conclusion,
//! each checked against a closed-form oracle.

use std::f64::consts::SQRT_2;

use subordination::catalog::{self, LemmaId, LemmaParams};
use subordination::generators::{make_schwarz, SchwarzFamily};
use subordination::tolerance::MAX_ORDER;
use subordination::verifier::{Verdict, Verifier, VerifierSettings};
use subordination::Complex64;

fn beta_star(lemma: LemmaId, p: &LemmaParams) -> f64 {
    catalog::closed_form_threshold(lemma, p)
        .unwrap()
        .beta_star()
        .expect("finite threshold")
}

/// `|h(−1)² − 1|` for the lemniscate premise, with `h(−1)` in closed form.
fn margin_at_pi(lemma: LemmaId, p: &LemmaParams) -> f64 {
    let (a, b, beta) = (p.a, p.b, p.beta);
    let h = match lemma {
        LemmaId::L3OverP => 1.0 - beta * (a - b) / ((1.0 - a) * (1.0 - b)),
        LemmaId::L4OverP2 => 1.0 - beta * (a - b) / (1.0 - a).powi(2),
        LemmaId::L8SumJanowski => (1.0 - a) / (1.0 - b) - beta * (a - b) / ((1.0 - a) * (1.0 - b)),
        _ => unreachable!(),
    };
    (h * h - 1.0).abs()
}

#[test]
fn threshold_does_not_reach_the_boundary_criterion() {
    let v = Verifier::default();
    let cases = [
        (LemmaId::L3OverP, 0.0, -0.5, Some(4.0 * SQRT_2 - 5.0)),
        (LemmaId::L4OverP2, 0.0, -0.5, Some(2.0 * SQRT_2 - 2.0)),
        (LemmaId::L8SumJanowski, 0.3, -0.3, None),
    ];
    for (lemma, a, b, exact) in cases {
        let base = LemmaParams::default().with_ab(a, b);
        let p = base.with_beta(beta_star(lemma, &base));
        assert!(catalog::feasibility_check(lemma, &p), "{lemma}");
        let oracle = margin_at_pi(lemma, &p);
        if let Some(exact) = exact {
            assert!((oracle - exact).abs() <= 1e-9, "{lemma}: {oracle} vs {exact}");
        }
        assert!(oracle < 0.95, "{lemma}: {oracle}");
        let profile = v.boundary_margin_profile(lemma, &p).unwrap();
        assert!(profile.min_margin <= oracle + 1e-9, "{lemma}: {} > {oracle}", profile.min_margin);
        let report = v.check_superordination(lemma, &p).unwrap();
        assert!(report.feasible);
        assert_eq!(report.verdict, Verdict::CriterionFails, "{lemma}");
    }
}

/// Premise-exact solution of `1 + βzp′/p = √(1+z)`:
/// `log p = (2(u − 1) − 2 log((1 + u)/2)) / β` with `u = √(1+z)`.
fn l3_identity_solution(beta: f64, z: Complex64) -> Complex64 {
    let u = (1.0 + z).sqrt();
    ((2.0 * (u - 1.0) - 2.0 * ((1.0 + u) / 2.0).ln()) / beta).exp()
}

#[test]
fn l3_conclusion_fails_above_threshold() {
    let base = LemmaParams::default().with_ab(-0.018885994571760323, -0.4317135256402901);
    let star = beta_star(LemmaId::L3OverP, &base);
    let p = base.with_beta(1.05 * star);
    assert!(catalog::feasibility_check(LemmaId::L3OverP, &p));

    // p is real on (−1, 1); the Janowski disk meets the negative side at (1−A)/(1−B).
    let z = Complex64::new(-0.999, 0.0);
    let exact = l3_identity_solution(p.beta, z);
    let left_end = (1.0 - p.a) / (1.0 - p.b);
    assert!(exact.im.abs() < 1e-15);
    assert!(exact.re < left_end - 0.03, "p(-0.999) = {} vs {left_end}", exact.re);
    let inverse = (exact - 1.0) / (p.a - p.b * exact);
    assert!(inverse.norm() > 1.0);

    let v = Verifier::new(VerifierSettings {
        order: MAX_ORDER,
        ..VerifierSettings::default()
    });
    let w = make_schwarz(SchwarzFamily::Monomial { power: 1 }, MAX_ORDER).unwrap();
    let trial = v.implication_trial(LemmaId::L3OverP, &p, &w).unwrap();
    assert!(trial.residual <= 1e-9);
    assert!(trial.conclusion.margin < -0.1, "{}", trial.conclusion.margin);
    assert!((trial.conclusion.t.abs() - std::f64::consts::PI).abs() < 1e-9);
}

#[test]
fn l3_series_solution_matches_closed_form() {
    let p = LemmaParams::default().with_ab(0.3, -0.6).with_beta(1.7);
    let w = make_schwarz(SchwarzFamily::Monomial { power: 1 }, 256).unwrap();
    let sol = subordination::generators::solve_premise_ode(LemmaId::L3OverP, &p, &w, 256).unwrap();
    for j in 0..16 {
        let z = Complex64::from_polar(0.9, -3.0 + 0.4 * j as f64);
        let err = (sol.p.eval(z) - l3_identity_solution(p.beta, z)).norm();
        assert!(err <= 1e-9, "z = {z}: {err}");
    }
}

#[test]
fn l1_negative_b_has_a_premise_pole_but_verifies() {
    let p = LemmaParams::default().with_ab(0.7, -0.2);
    let p = p.with_beta(beta_star(LemmaId::L1KFamily, &p));
    let v = Verifier::default();
    let profile = v.boundary_margin_profile(LemmaId::L1KFamily, &p).unwrap();
    assert_eq!(profile.premise_poles, 1);
    assert!(profile.min_margin >= 1.0 - 1e-9);
    let strict = Verifier::new(VerifierSettings {
        strict_poles: true,
        ..VerifierSettings::default()
    });
    assert!(strict.boundary_margin_profile(LemmaId::L1KFamily, &p).is_err());
}
