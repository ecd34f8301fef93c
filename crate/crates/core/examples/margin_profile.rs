//! Boundary margin |Φ⁻¹(h(e^{it}))| of L2 at its threshold β* = 1 + √2.

use subordination::catalog::{self, LemmaId, LemmaParams};
use subordination::verifier::Verifier;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let base = LemmaParams::default().with_ab(1.0, 0.0);
    let beta = catalog::closed_form_threshold(LemmaId::L2Full, &base)?
        .beta_star()
        .expect("finite");
    let p = base.with_beta(beta);
    let verifier = Verifier::default();
    let m = verifier.boundary_margin_profile(LemmaId::L2Full, &p)?;
    println!("beta* = {beta:.12}");
    println!("min margin {:.12} at t = {:.9} ({} samples, refined: {})", m.min_margin, m.argmin_t, m.t_samples.len(), m.refined);
    for (t, margin) in m.t_samples.iter().zip(&m.margins).step_by(m.t_samples.len() / 16) {
        println!("  t = {t:+.4}  margin = {margin:.6}");
    }
    let report = verifier.check_superordination(LemmaId::L2Full, &p)?;
    println!("verdict {:?}", report.verdict);
    Ok(())
}
