use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use subordination::catalog::LemmaId;
use subordination::report::{self, Command, RunConfig, SchwarzChoice, EXIT_CONFIG};

/// Numerical verification of differential subordination lemmas.
///
/// Exit codes: 0 pass, 1 verdict failure or counterexample, 2 invalid
/// configuration, 3 IO or numerical error.
#[derive(Parser)]
#[command(name = "subord", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check one lemma at one parameter point, β included.
    Verify(Opts),
    /// Closed-form and numeric β thresholds; comma lists sweep A, B, D, E, k.
    Threshold(Opts),
    /// Seeded implication trials with premise-exact solutions.
    Falsify(Opts),
    /// SVG of the regions and the dominant's boundary curve.
    Plot(Opts),
}

#[derive(Args)]
struct Opts {
    /// Lemma id, L1 to L11.
    #[arg(long)]
    lemma: LemmaId,
    #[arg(long = "A", value_delimiter = ',', default_value = "1", allow_hyphen_values = true)]
    a: Vec<f64>,
    #[arg(long = "B", value_delimiter = ',', default_value = "0", allow_hyphen_values = true)]
    b: Vec<f64>,
    #[arg(long = "D", value_delimiter = ',', default_value = "1", allow_hyphen_values = true)]
    d: Vec<f64>,
    #[arg(long = "E", value_delimiter = ',', default_value = "0", allow_hyphen_values = true)]
    e: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "1", allow_hyphen_values = true)]
    k: Vec<f64>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    /// Use β = factor·β* instead of --beta.
    #[arg(long)]
    beta_factor: Option<f64>,
    /// Boundary margin grid size.
    #[arg(long, default_value_t = 4096)]
    grid: usize,
    /// Admissibility grid size.
    #[arg(long, default_value_t = 8192)]
    adm_grid: usize,
    /// Angular samples per radius in subordination checks.
    #[arg(long, default_value_t = 2048)]
    sub_grid: usize,
    #[arg(long, value_delimiter = ',', default_value = "0.9,0.99,0.999")]
    radii: Vec<f64>,
    /// Initial truncation order (doubled up to 512 when needed).
    #[arg(long, default_value_t = 64)]
    order: usize,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Slack on the margin criterion and conclusion margins.
    #[arg(long, default_value = "1e-9")]
    tol: f64,
    /// Schwarz draws: mixture, z, z^m, blaschke, polynomial.
    #[arg(long, default_value = "mixture")]
    schwarz: SchwarzChoice,
    /// Count a pole of the premise inverse map inside the disk as failure.
    #[arg(long)]
    strict_poles: bool,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

impl Opts {
    fn into_config(self) -> RunConfig {
        RunConfig {
            a: self.a,
            b: self.b,
            d: self.d,
            e: self.e,
            k: self.k,
            beta: self.beta,
            beta_factor: self.beta_factor,
            grid: self.grid,
            admissibility_grid: self.adm_grid,
            subordination_grid: self.sub_grid,
            radii: self.radii,
            order: self.order,
            trials: self.trials,
            seed: self.seed,
            tol: self.tol,
            schwarz: self.schwarz,
            strict_poles: self.strict_poles,
            json: self.json,
            csv: self.csv,
            svg: self.svg,
            ..RunConfig::new(self.lemma)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_CONFIG as u8 } else { 0 });
        }
    };
    if let Some(n) = std::env::var(report::WORKERS_ENV).ok().and_then(|v| v.parse().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let (command, opts) = match cli.command {
        Cmd::Verify(o) => (Command::Verify, o),
        Cmd::Threshold(o) => (Command::Threshold, o),
        Cmd::Falsify(o) => (Command::Falsify, o),
        Cmd::Plot(o) => (Command::Plot, o),
    };
    let cfg = opts.into_config();
    match report::execute(command, &cfg) {
        Ok(outcome) => {
            println!("{}", outcome.summary);
            if command == Command::Threshold && cfg.csv.is_none() {
                print!("{}", outcome.csv.unwrap_or_default());
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
