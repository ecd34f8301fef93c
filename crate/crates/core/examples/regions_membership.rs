//! Target regions: the lemniscate image of √(1+z) and Janowski disks.

use subordination::regions::TargetRegion;
use subordination::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lemniscate = TargetRegion::SqrtLemniscate;
    let janowski = TargetRegion::janowski(1.0, 0.0)?;
    let half_plane = TargetRegion::janowski(1.0, -1.0)?;

    let points = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(2f64.sqrt(), 0.0),
        Complex64::new(1.2, 0.3),
        Complex64::new(-0.5, 0.0),
        Complex64::new(1.5, 1.5),
    ];
    println!("{:>16} {:>22} {:>22} {:>22}", "w", "sqrt(1+z)", "(1+z)", "(1+z)/(1-z)");
    for w in points {
        let row: Vec<String> = [lemniscate, janowski, half_plane]
            .iter()
            .map(|r| {
                let m = r.membership(w);
                format!("{:?} {:+.4}", m.classification, m.margin)
            })
            .collect();
        println!("{:>16} {:>22} {:>22} {:>22}", format!("{w:.3}"), row[0], row[1], row[2]);
    }

    let z = Complex64::from_polar(0.7, 2.0);
    for r in [lemniscate, janowski] {
        let w = r.eval(z)?;
        println!("{r:?}: Φ({z:.3}) = {w:.6}, Φ⁻¹(Φ(z)) = {:.6}", r.phi_inverse(w)?);
    }
    Ok(())
}
