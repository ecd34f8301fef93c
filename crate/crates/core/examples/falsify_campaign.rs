//! Seeded falsification campaign below and above the threshold, with a JSON report.

use subordination::catalog::LemmaId;
use subordination::report::{self, Command, RunConfig, ReportData};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::temp_dir().join("subordination-falsify.json");
    for factor in [0.2, 1.05] {
        let mut cfg = RunConfig::new(LemmaId::L2Full);
        cfg.beta_factor = Some(factor);
        cfg.trials = 60;
        cfg.seed = 7;
        cfg.json = Some(out.clone());
        let outcome = report::execute(Command::Falsify, &cfg)?;
        println!("beta = {factor}·beta*: {} (exit code {})", outcome.summary, outcome.exit_code);
        if let ReportData::Falsify(data) = &outcome.document.data {
            let worst = data
                .trials
                .iter()
                .filter_map(|t| Some((t.conclusion_margin?.value?, &t.schwarz)))
                .min_by(|a, b| a.0.total_cmp(&b.0));
            if let Some((m, w)) = worst {
                println!("  worst trial: {w} with margin {m:+.6}");
            }
        }
    }
    println!("last report written to {}", out.display());
    Ok(())
}
