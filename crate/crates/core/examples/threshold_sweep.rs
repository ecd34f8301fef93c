//! CSV sweep of closed-form and numeric thresholds over the L1 family.

use subordination::catalog::LemmaId;
use subordination::report::{self, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut cfg = RunConfig::new(LemmaId::L1KFamily);
    cfg.b = vec![0.0, -0.5];
    cfg.k = vec![0.0, 1.0, 2.0, 3.0];
    let (_, csv) = report::cmd_threshold(&cfg)?;
    print!("{csv}");
    Ok(())
}
