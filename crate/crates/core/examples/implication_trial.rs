//! Premise-exact solutions: solve Ψ(p) = Φ(w) for p and test p ≺ q.

use subordination::catalog::{self, LemmaId, LemmaParams};
use subordination::generators::{make_schwarz, SchwarzFamily};
use subordination::verifier::{Verifier, VerifierSettings};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let verifier = Verifier::new(VerifierSettings {
        order: 128,
        ..VerifierSettings::default()
    });
    let families = [
        SchwarzFamily::Monomial { power: 1 },
        SchwarzFamily::Monomial { power: 2 },
        SchwarzFamily::BlaschkeFactor { a: subordination::Complex64::new(0.4, -0.3) },
    ];
    let cases = [
        (LemmaId::L2Full, LemmaParams::default().with_ab(1.0, 0.0)),
        (LemmaId::L9De, LemmaParams::default().with_ab(0.5, -0.5).with_de(0.5, 0.0)),
        // Above its stated threshold, L3 still fails for w = z here.
        (LemmaId::L3OverP, LemmaParams::default().with_ab(-0.018885994571760323, -0.4317135256402901)),
    ];
    for (lemma, base) in cases {
        let beta = 1.05 * catalog::closed_form_threshold(lemma, &base)?.beta_star().expect("finite");
        let p = base.with_beta(beta);
        println!("{} at beta = {beta:.6}: {}", lemma.label(), lemma.statement());
        for family in &families {
            let w = make_schwarz(family.clone(), 128)?;
            let r = verifier.implication_trial(lemma, &p, &w)?;
            println!(
                "  {:<28} order {:>3}  residual {:.1e}  conclusion margin {:+.6} at r = {}, t = {:+.4}{}",
                r.schwarz,
                r.order,
                r.residual,
                r.conclusion.margin,
                r.conclusion.radius,
                r.conclusion.t,
                if r.conclusion.certified { "" } else { "  (tail not certified)" }
            );
        }
    }
    Ok(())
}
