//! Numeric threshold (smallest β meeting the boundary criterion) next to the
//! closed-form one.

use subordination::catalog::{self, LemmaId, LemmaParams};
use subordination::verifier::Verifier;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let verifier = Verifier::default();
    let cases = [
        (LemmaId::L1KFamily, LemmaParams::default().with_ab(1.0, 0.0).with_k(2.0)),
        (LemmaId::L1KFamily, LemmaParams::default().with_ab(0.6, -0.4).with_k(0.5)),
        (LemmaId::L2Full, LemmaParams::default().with_ab(1.0, 0.0)),
        (LemmaId::L3OverP, LemmaParams::default().with_ab(0.0, -0.5)),
        (LemmaId::L9De, LemmaParams::default().with_ab(1.0, 0.0).with_de(1.0, 0.0)),
        (LemmaId::L10DeOverP, LemmaParams::default().with_ab(0.9, -0.5).with_de(0.5, 0.0)),
    ];
    println!("{:<4} {:>6} {:>6} {:>14} {:>14} {:>12}", "", "A", "B", "closed", "numeric", "gap");
    for (lemma, p) in cases {
        let closed = catalog::closed_form_threshold(lemma, &p)?.beta_star();
        let numeric = verifier.numeric_threshold(lemma, &p)?;
        let gap = closed.map(|c| numeric.beta - c);
        println!(
            "{:<4} {:>6} {:>6} {:>14} {:>14.9} {:>12}",
            lemma.label(),
            p.a,
            p.b,
            closed.map_or("-".into(), |c| format!("{c:.9}")),
            numeric.beta,
            gap.map_or("-".into(), |g| format!("{g:+.2e}"))
        );
    }
    Ok(())
}
