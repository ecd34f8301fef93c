//! Truncated power series: products, quotients, powers, log/exp and composition.

use subordination::series::PowerSeries;
use subordination::Complex64;

fn show(name: &str, s: &PowerSeries, n: usize) {
    let cs: Vec<String> = s.coeffs().iter().take(n).map(|c| format!("{:.6}", c.re)).collect();
    println!("{name:<24} {}", cs.join(", "));
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 16;
    let z = PowerSeries::identity(n)?;
    let one = PowerSeries::one(n)?;
    let one_plus_z = &one + &z;

    show("1/(1+z)", &one.div(&one_plus_z)?, 8);
    show("sqrt(1+z)", &one_plus_z.sqrt()?, 8);
    show("log(1+z)", &one_plus_z.ln()?, 8);
    show("exp(z)", &z.exp()?, 8);

    // √(1+z) ∘ (z/2): coefficients of √(1+z/2)
    let half = z.scale(Complex64::new(0.5, 0.0));
    show("sqrt(1+z/2)", &one_plus_z.sqrt()?.compose(&half)?, 8);

    let s = &one + &z.scale(Complex64::new(0.3, 0.2)).mul(&z);
    let root = s.sqrt()?;
    println!("max |(sqrt s)^2 - s|     {:.1e}", root.mul(&root).max_abs_diff(&s));
    println!("max |exp(log s) - s|     {:.1e}", s.ln()?.exp()?.max_abs_diff(&s));
    println!("max |(s*t)/t - s|        {:.1e}", s.mul(&one_plus_z).div(&one_plus_z)?.max_abs_diff(&s));
    println!("sqrt(1+z) at z = 0.5     {:.12} (exact {:.12})", one_plus_z.sqrt()?.eval(Complex64::new(0.5, 0.0)).re, 1.5f64.sqrt());
    Ok(())
}
