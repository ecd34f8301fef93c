//! SVG of the regions and the dominant's boundary curve for L2 at β*.
//!
//! Usage: `cargo run --example plot_regions [-- out.svg]`

use subordination::catalog::LemmaId;
use subordination::report::{self, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .map(Into::into)
        .unwrap_or_else(|| std::env::temp_dir().join("subordination-l2.svg"));
    let cfg = RunConfig::new(LemmaId::L2Full);
    let (data, svg) = report::cmd_plot(&cfg)?;
    std::fs::write(&path, &svg)?;
    println!("curves: {}", data.curves.join(", "));
    if let (Some(m), Some([x, y])) = (data.min_margin, data.touch_point) {
        println!("h comes closest to the premise boundary at {x:.8}{y:+.1e}i, margin {:.12}", m.value.unwrap_or(f64::NAN));
    }
    println!("wrote {} ({} bytes)", path.display(), svg.len());
    Ok(())
}
