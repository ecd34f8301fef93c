//! Boundary minima of the admissibility quantities for the sum lemmas.

use subordination::catalog::{LemmaId, LemmaParams};
use subordination::verifier::Verifier;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let verifier = Verifier::default();
    let p = LemmaParams::default().with_beta(0.5);
    for lemma in [LemmaId::L5Sum, LemmaId::L6SumOverP, LemmaId::L7SumOverP2] {
        println!("{}: {}", lemma.label(), lemma.statement());
        for &quantity in lemma.required_admissibility() {
            for radius in [1.0, 0.999] {
                let m = verifier.admissibility_min(lemma, &p, quantity, radius)?;
                println!(
                    "  {quantity:?} on |z| = {radius}: min {:.12} at t = {:+.6} (finite-difference error {:.1e})",
                    m.value, m.argmin_t, m.fd_max_error
                );
            }
        }
    }
    Ok(())
}
