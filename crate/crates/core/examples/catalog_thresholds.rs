//! Closed-form β thresholds of all eleven lemmas at one parameter point.

use subordination::catalog::{self, LemmaId, LemmaParams, ThresholdStatus};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = LemmaParams::default().with_ab(0.5, -0.5).with_de(0.8, -0.2).with_k(1.0);
    println!("A = {}, B = {}, D = {}, E = {}, k = {}", p.a, p.b, p.d, p.e, p.k);
    for lemma in LemmaId::ALL {
        let t = catalog::closed_form_threshold(lemma, &p)?;
        let status = match t.status {
            ThresholdStatus::Feasible { beta_star } => format!("beta* = {beta_star:.9}"),
            ThresholdStatus::AlwaysFeasible => "any beta > 0".to_string(),
            ThresholdStatus::Infeasible => "infeasible".to_string(),
        };
        println!("{:<4} {:<56} {status:<22} [{}]", lemma.label(), lemma.statement(), t.binding_constraint);
    }
    Ok(())
}
