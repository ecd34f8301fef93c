//! The `verify`, `threshold`, `falsify` and `plot` commands and their
//! artifacts.
//!
//! Every command produces a [`ReportDocument`]. Its `metadata` block holds
//! the wall-clock timestamp and the echoed configuration; its `data` block is
//! a pure function of the configuration and seed, so two runs can be compared
//! byte for byte. `threshold` additionally produces CSV and `plot` an SVG.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{self, AdmissibilityQuantity, LemmaId, LemmaParams, ThresholdStatus};
use crate::generators::{make_schwarz, solve_premise_ode, SchwarzFamily};
use crate::regions::TargetRegion;
use crate::svg::{self, Curve, Marker, Plot};
use crate::tolerance::{
    Tolerances, DEFAULT_ADMISSIBILITY_GRID, DEFAULT_MARGIN_GRID, DEFAULT_ORDER, DEFAULT_RADII,
    DEFAULT_SUBORDINATION_GRID, MAX_ORDER,
};
use crate::verifier::{Verdict, Verifier, VerifierError, VerifierSettings, MIN_GRID};

pub const SCHEMA_VERSION: &str = "1.0.0";
/// Environment variable holding the worker-thread count.
pub const WORKERS_ENV: &str = "SUBORD_WORKERS";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
/// IO and internal numerical errors.
pub const EXIT_RUNTIME: i32 = 3;

/// Rounds to 9 significant digits; non-finite values pass through.
pub fn sig9(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.8e}").parse().unwrap_or(x)
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Verify,
    Threshold,
    Falsify,
    Plot,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Verify => "verify",
            Command::Threshold => "threshold",
            Command::Falsify => "falsify",
            Command::Plot => "plot",
        })
    }
}

/// Which Schwarz functions a falsification campaign draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SchwarzChoice {
    /// [`SchwarzFamily::random_mixture`].
    Mixture,
    /// `z^power` in every trial.
    Monomial { power: u32 },
    Blaschke,
    Polynomial,
}

impl SchwarzChoice {
    fn draw(self, rng: &mut ChaCha8Rng) -> SchwarzFamily {
        match self {
            SchwarzChoice::Mixture => SchwarzFamily::random_mixture(rng),
            SchwarzChoice::Monomial { power } => SchwarzFamily::Monomial { power },
            SchwarzChoice::Blaschke => SchwarzFamily::random_blaschke(rng, 0.95),
            SchwarzChoice::Polynomial => SchwarzFamily::random_polynomial(rng, crate::generators::DEFAULT_DEGREE, 1.0),
        }
    }
}

impl FromStr for SchwarzChoice {
    type Err = String;

    /// `mixture`, `blaschke`, `polynomial`, `z`, `z^m` or `monomial:m`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        let power = |m: &str| {
            m.parse::<u32>()
                .ok()
                .filter(|&m| m >= 1)
                .map(|power| SchwarzChoice::Monomial { power })
                .ok_or_else(|| format!("invalid monomial power '{m}'"))
        };
        match s.as_str() {
            "mixture" => Ok(SchwarzChoice::Mixture),
            "blaschke" => Ok(SchwarzChoice::Blaschke),
            "polynomial" => Ok(SchwarzChoice::Polynomial),
            "z" => Ok(SchwarzChoice::Monomial { power: 1 }),
            _ => {
                if let Some(m) = s.strip_prefix("z^").or_else(|| s.strip_prefix("monomial:")) {
                    power(m)
                } else {
                    Err(format!(
                        "unknown Schwarz family '{s}' (expected mixture, blaschke, polynomial, z, z^m)"
                    ))
                }
            }
        }
    }
}

/// Everything a command needs. Parameter fields are lists so `threshold`
/// can sweep them; the other commands need exactly one value each.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub lemma: LemmaId,
    #[serde(rename = "A")]
    pub a: Vec<f64>,
    #[serde(rename = "B")]
    pub b: Vec<f64>,
    #[serde(rename = "D")]
    pub d: Vec<f64>,
    #[serde(rename = "E")]
    pub e: Vec<f64>,
    pub k: Vec<f64>,
    pub beta: Option<f64>,
    /// `β = beta_factor · β*` when `beta` is absent.
    pub beta_factor: Option<f64>,
    pub grid: usize,
    pub admissibility_grid: usize,
    pub subordination_grid: usize,
    pub radii: Vec<f64>,
    pub order: usize,
    pub trials: usize,
    pub seed: u64,
    /// Slack on the margin criterion and on conclusion margins.
    pub tol: f64,
    pub schwarz: SchwarzChoice,
    pub strict_poles: bool,
    pub json: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(lemma: LemmaId) -> Self {
        Self {
            lemma,
            a: vec![1.0],
            b: vec![0.0],
            d: vec![1.0],
            e: vec![0.0],
            k: vec![1.0],
            beta: None,
            beta_factor: None,
            grid: DEFAULT_MARGIN_GRID,
            admissibility_grid: DEFAULT_ADMISSIBILITY_GRID,
            subordination_grid: DEFAULT_SUBORDINATION_GRID,
            radii: DEFAULT_RADII.to_vec(),
            order: DEFAULT_ORDER,
            trials: 50,
            seed: 0,
            tol: Tolerances::default().criterion,
            schwarz: SchwarzChoice::Mixture,
            strict_poles: false,
            json: None,
            csv: None,
            svg: None,
        }
    }

    pub fn with_params(mut self, p: &LemmaParams) -> Self {
        self.a = vec![p.a];
        self.b = vec![p.b];
        self.d = vec![p.d];
        self.e = vec![p.e];
        self.k = vec![p.k];
        self.beta = Some(p.beta);
        self
    }

    pub fn settings(&self) -> VerifierSettings {
        let tol = Tolerances {
            criterion: self.tol,
            ..Tolerances::default()
        };
        VerifierSettings {
            margin_grid: self.grid,
            admissibility_grid: self.admissibility_grid,
            subordination_grid: self.subordination_grid,
            radii: self.radii.clone(),
            order: self.order,
            strict_poles: self.strict_poles,
            tol,
            ..VerifierSettings::default()
        }
    }

    fn axes(&self) -> [(&'static str, &Vec<f64>); 5] {
        [("A", &self.a), ("B", &self.b), ("D", &self.d), ("E", &self.e), ("k", &self.k)]
    }

    /// The single parameter point of a non-sweep command, `β` unset.
    fn point(&self) -> LemmaParams {
        LemmaParams {
            a: self.a[0],
            b: self.b[0],
            d: self.d[0],
            e: self.e[0],
            k: self.k[0],
            beta: self.beta.unwrap_or(1.0),
        }
    }

    /// Every parameter combination, in nested `A, B, D, E, k` order.
    pub fn sweep_points(&self) -> Vec<LemmaParams> {
        let mut out = Vec::new();
        for &a in &self.a {
            for &b in &self.b {
                for &d in &self.d {
                    for &e in &self.e {
                        for &k in &self.k {
                            out.push(LemmaParams { a, b, d, e, k, beta: 1.0 });
                        }
                    }
                }
            }
        }
        out
    }

    /// Checks the whole configuration and reports every problem at once.
    pub fn validate(&self, command: Command) -> Result<(), ConfigError> {
        let mut issues = Vec::new();
        if self.grid < MIN_GRID {
            issues.push(format!("--grid must be >= {MIN_GRID}, got {}", self.grid));
        }
        if self.admissibility_grid < MIN_GRID {
            issues.push(format!("admissibility grid must be >= {MIN_GRID}, got {}", self.admissibility_grid));
        }
        if self.subordination_grid < 8 {
            issues.push(format!("subordination grid must be >= 8, got {}", self.subordination_grid));
        }
        if self.radii.is_empty() {
            issues.push("--radii must not be empty".into());
        }
        for &r in &self.radii {
            if !(r > 0.0 && r < 1.0) {
                issues.push(format!("radius {r} outside (0, 1)"));
            }
        }
        if self.order == 0 || self.order > MAX_ORDER {
            issues.push(format!("--order must be in 1..={MAX_ORDER}, got {}", self.order));
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            issues.push(format!("--tol must be in (0, 1), got {}", self.tol));
        }
        for (name, values) in self.axes() {
            if values.is_empty() {
                issues.push(format!("--{name} needs at least one value"));
            }
            if values.iter().any(|v| !v.is_finite()) {
                issues.push(format!("--{name} values must be finite"));
            }
            if command != Command::Threshold && values.len() > 1 {
                issues.push(format!("--{name} takes a single value outside `threshold`"));
            }
        }
        if let Some(f) = self.beta_factor {
            if !(f.is_finite() && f > 0.0) {
                issues.push(format!("--beta-factor must be positive, got {f}"));
            }
        }
        if self.beta.is_some() && self.beta_factor.is_some() {
            issues.push("--beta and --beta-factor are mutually exclusive".into());
        }
        match command {
            Command::Verify if self.beta.is_none() => issues.push("verify needs --beta".into()),
            Command::Falsify if self.trials == 0 => issues.push("--trials must be >= 1".into()),
            _ => {}
        }
        if command == Command::Threshold {
            let lemma = self.lemma;
            let ranges = [
                ("A", &self.a, lemma.uses_ab(), -1.0, 1.0),
                ("B", &self.b, lemma.uses_ab(), -1.0, 1.0),
                ("D", &self.d, lemma.uses_de(), -1.0, 1.0),
                ("E", &self.e, lemma.uses_de(), -1.0, 1.0),
                ("k", &self.k, lemma.uses_k(), -1.0, 3.0),
            ];
            for (name, values, used, lo, hi) in ranges {
                if used && values.iter().any(|&v| v < lo || v > hi) {
                    issues.push(format!("--{name} values must lie in [{lo}, {hi}]"));
                }
            }
        } else if self.axes().iter().all(|(_, v)| v.len() == 1 && v[0].is_finite()) {
            let p = self.point();
            let check = if self.beta.is_some() {
                p.validate(self.lemma)
            } else {
                p.validate_shape(self.lemma)
            };
            if let Err(catalog::CatalogError::InvalidParameters { issues: found, .. }) = check {
                issues.extend(found);
            }
        }
        if issues.is_empty() {
            Ok(())
        } else {
            Err(ConfigError { issues })
        }
    }
}

/// All problems found in a configuration.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("invalid configuration: {}", issues.join("; "))]
pub struct ConfigError {
    pub issues: Vec<String>,
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Verifier(#[from] VerifierError),
    #[error("serialization failed: {0}")]
    Serialize(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => EXIT_CONFIG,
            _ => EXIT_RUNTIME,
        }
    }
}

/// A measured number and the tolerance it is judged with. Non-finite
/// values serialize as `null`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Measured {
    pub value: Option<f64>,
    pub tolerance: f64,
}

impl Measured {
    pub fn new(value: f64, tolerance: f64) -> Self {
        Self {
            value: finite(value),
            tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub timestamp: String,
    pub seed: u64,
    pub tool_version: String,
    pub config: RunConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub metadata: Metadata,
    pub data: ReportData,
}

impl ReportDocument {
    pub fn to_json(&self) -> Result<String, RunError> {
        serde_json::to_string_pretty(self).map_err(|e| RunError::Serialize(e.to_string()))
    }

    /// The deterministic part, for comparing runs.
    pub fn data_json(&self) -> Result<String, RunError> {
        serde_json::to_string_pretty(&self.data).map_err(|e| RunError::Serialize(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum ReportData {
    Verify(VerifyData),
    Threshold(ThresholdData),
    Falsify(FalsifyData),
    Plot(PlotData),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdSummary {
    pub status: String,
    pub beta_star: Option<f64>,
    pub binding_constraint: String,
}

fn threshold_summary(lemma: LemmaId, p: &LemmaParams) -> Result<ThresholdSummary, RunError> {
    let t = catalog::closed_form_threshold(lemma, p).map_err(VerifierError::from)?;
    let status = match t.status {
        ThresholdStatus::Feasible { .. } => "Feasible",
        ThresholdStatus::AlwaysFeasible => "AlwaysFeasible",
        ThresholdStatus::Infeasible => "Infeasible",
    };
    Ok(ThresholdSummary {
        status: status.into(),
        beta_star: t.beta_star().map(sig9),
        binding_constraint: t.binding_constraint,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarginSummary {
    pub min_margin: Measured,
    pub argmin_t: f64,
    pub grid_size: usize,
    pub samples: usize,
    pub punctures: Vec<f64>,
    pub premise_poles: i64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilitySummary {
    pub quantity: AdmissibilityQuantity,
    pub boundary_min: Measured,
    pub boundary_argmin_t: f64,
    pub interior_min: Measured,
    pub interior_radius: f64,
    pub fd_max_error: Measured,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyData {
    pub lemma: LemmaId,
    pub params: LemmaParams,
    pub feasible: bool,
    pub threshold: ThresholdSummary,
    pub margin: Option<MarginSummary>,
    pub admissibility: Vec<AdmissibilitySummary>,
    pub verdict: Verdict,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdRow {
    pub lemma: LemmaId,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "D")]
    pub d: f64,
    #[serde(rename = "E")]
    pub e: f64,
    pub k: f64,
    pub beta_star_closed: Option<f64>,
    pub beta_numeric: Option<f64>,
    pub gap: Option<f64>,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdData {
    pub rows: Vec<ThresholdRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub index: usize,
    pub schwarz: String,
    pub order: usize,
    pub residual: Option<Measured>,
    pub conclusion_margin: Option<Measured>,
    pub radius: Option<f64>,
    pub t: Option<f64>,
    pub tail: Option<f64>,
    pub certified: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FalsifySummary {
    pub trials: usize,
    pub errors: usize,
    pub min_conclusion_margin: Option<f64>,
    pub negative_margins: usize,
    pub max_residual: Option<f64>,
    pub uncertified: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FalsifyVerdict {
    NoCounterexample,
    CounterexampleFound,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FalsifyData {
    pub lemma: LemmaId,
    pub params: LemmaParams,
    pub beta_star: Option<f64>,
    pub hypothesis_holds: bool,
    pub schwarz: SchwarzChoice,
    pub trials: Vec<TrialRecord>,
    pub summary: FalsifySummary,
    pub verdict: FalsifyVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotData {
    pub lemma: LemmaId,
    pub params: LemmaParams,
    pub curves: Vec<String>,
    pub min_margin: Option<Measured>,
    /// `h(e^{i·argmin})`, where `h` comes closest to the premise boundary.
    pub touch_point: Option<[f64; 2]>,
    pub argmin_t: Option<f64>,
}

/// Result of a command: its report, any CSV/SVG text, a short human
/// summary and the process exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub document: ReportDocument,
    pub csv: Option<String>,
    pub svg: Option<String>,
    pub summary: String,
    pub exit_code: i32,
}

fn rounded(mut p: LemmaParams) -> LemmaParams {
    p.beta = sig9(p.beta);
    p
}

/// `β` of a single-point command: explicit, or `factor · β*` (factor
/// defaults to 1; lemmas without a finite `β*` use 1 as the base).
fn resolve_beta(cfg: &RunConfig, p: &LemmaParams) -> Result<f64, RunError> {
    if let Some(b) = cfg.beta {
        return Ok(b);
    }
    let factor = cfg.beta_factor.unwrap_or(1.0);
    let t = catalog::closed_form_threshold(cfg.lemma, &p.with_beta(1.0)).map_err(VerifierError::from)?;
    match t.status {
        ThresholdStatus::Feasible { beta_star } => Ok(factor * beta_star),
        ThresholdStatus::AlwaysFeasible => Ok(factor),
        ThresholdStatus::Infeasible => Err(ConfigError {
            issues: vec![format!("{} has no finite threshold here; pass --beta", cfg.lemma)],
        }
        .into()),
    }
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<(VerifyData, i32), RunError> {
    cfg.validate(Command::Verify)?;
    let settings = cfg.settings();
    let tol = settings.tol;
    let verifier = Verifier::new(settings);
    let p = cfg.point();
    let r = verifier.check_superordination(cfg.lemma, &p)?;
    let margin = r.margin.as_ref().map(|m| MarginSummary {
        min_margin: Measured::new(m.min_margin, tol.criterion),
        argmin_t: m.argmin_t,
        grid_size: m.grid_size,
        samples: m.t_samples.len(),
        punctures: m.punctures.clone(),
        premise_poles: m.premise_poles,
        passed: m.passes(&tol),
    });
    let admissibility = r
        .admissibility
        .iter()
        .map(|a| AdmissibilitySummary {
            quantity: a.quantity,
            boundary_min: Measured::new(a.boundary.value, tol.criterion),
            boundary_argmin_t: a.boundary.argmin_t,
            interior_min: Measured::new(a.interior.value, 0.0),
            interior_radius: a.interior.radius,
            fd_max_error: Measured::new(a.boundary.fd_max_error.max(a.interior.fd_max_error), tol.fd_agreement),
            passed: a.passed,
        })
        .collect();
    let code = if r.verdict == Verdict::Verified { EXIT_PASS } else { EXIT_FAIL };
    Ok((
        VerifyData {
            lemma: cfg.lemma,
            params: rounded(p),
            feasible: r.feasible,
            threshold: threshold_summary(cfg.lemma, &p)?,
            margin,
            admissibility,
            verdict: r.verdict,
            diagnostics: r.diagnostics,
        },
        code,
    ))
}

fn threshold_row(verifier: &Verifier, lemma: LemmaId, p: &LemmaParams) -> ThresholdRow {
    let mut row = ThresholdRow {
        lemma,
        a: p.a,
        b: p.b,
        d: p.d,
        e: p.e,
        k: p.k,
        beta_star_closed: None,
        beta_numeric: None,
        gap: None,
        status: String::new(),
    };
    let closed = match catalog::closed_form_threshold(lemma, p) {
        Ok(t) => t,
        Err(_) => {
            row.status = "Invalid".into();
            return row;
        }
    };
    let beta_star = match closed.status {
        ThresholdStatus::Feasible { beta_star } => beta_star,
        ThresholdStatus::AlwaysFeasible => {
            row.status = "AlwaysFeasible".into();
            return row;
        }
        ThresholdStatus::Infeasible => {
            row.status = "Infeasible".into();
            return row;
        }
    };
    row.beta_star_closed = Some(sig9(beta_star));
    match verifier.numeric_threshold(lemma, p) {
        Ok(t) => {
            row.beta_numeric = Some(sig9(t.beta));
            row.gap = Some(sig9(t.beta - beta_star));
            row.status = "Feasible".into();
        }
        Err(VerifierError::NonMonotoneMargin { .. }) => row.status = "NonMonotone".into(),
        Err(VerifierError::NoThreshold(_)) => row.status = "NoCrossing".into(),
        Err(_) => row.status = "Error".into(),
    }
    row
}

pub const CSV_HEADER: [&str; 10] = [
    "lemma",
    "A",
    "B",
    "D",
    "E",
    "k",
    "beta_star_closed",
    "beta_numeric",
    "gap",
    "status",
];

pub fn threshold_csv(rows: &[ThresholdRow]) -> Result<String, RunError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
    let io = |e: csv::Error| RunError::Serialize(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in rows {
        w.write_record([
            r.lemma.label().to_string(),
            r.a.to_string(),
            r.b.to_string(),
            r.d.to_string(),
            r.e.to_string(),
            r.k.to_string(),
            opt(r.beta_star_closed),
            opt(r.beta_numeric),
            opt(r.gap),
            r.status.clone(),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| RunError::Serialize(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| RunError::Serialize(e.to_string()))
}

pub fn cmd_threshold(cfg: &RunConfig) -> Result<(ThresholdData, String), RunError> {
    cfg.validate(Command::Threshold)?;
    let verifier = Verifier::new(cfg.settings());
    let rows: Vec<ThresholdRow> = cfg
        .sweep_points()
        .par_iter()
        .map(|p| threshold_row(&verifier, cfg.lemma, p))
        .collect();
    let csv = threshold_csv(&rows)?;
    Ok((ThresholdData { rows }, csv))
}

/// Runs trial `index` of a campaign with its own RNG stream.
fn falsify_trial(verifier: &Verifier, cfg: &RunConfig, p: &LemmaParams, index: usize) -> TrialRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let family = cfg.schwarz.draw(&mut rng);
    let mut rec = TrialRecord {
        index,
        schwarz: family.describe(),
        order: cfg.order,
        residual: None,
        conclusion_margin: None,
        radius: None,
        t: None,
        tail: None,
        certified: false,
        error: None,
    };
    let tol = verifier.settings.tol;
    let result = make_schwarz(family, cfg.order)
        .map_err(VerifierError::from)
        .and_then(|w| verifier.trial_unchecked(cfg.lemma, p, &w));
    match result {
        Ok(r) => {
            rec.order = r.order;
            rec.residual = Some(Measured::new(r.residual, tol.residual));
            rec.conclusion_margin = Some(Measured::new(r.conclusion.margin, tol.criterion));
            rec.radius = Some(r.conclusion.radius);
            rec.t = Some(r.conclusion.t);
            rec.tail = finite(r.conclusion.tail);
            rec.certified = r.conclusion.certified;
        }
        Err(e) => rec.error = Some(e.to_string()),
    }
    rec
}

pub fn cmd_falsify(cfg: &RunConfig) -> Result<(FalsifyData, i32), RunError> {
    cfg.validate(Command::Falsify)?;
    let base = cfg.point();
    let beta = resolve_beta(cfg, &base)?;
    let p = base.with_beta(beta);
    p.validate(cfg.lemma).map_err(|e| match e {
        catalog::CatalogError::InvalidParameters { issues, .. } => RunError::Config(ConfigError { issues }),
        other => RunError::Verifier(other.into()),
    })?;
    let verifier = Verifier::new(cfg.settings());
    let trials: Vec<TrialRecord> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| falsify_trial(&verifier, cfg, &p, i))
        .collect();
    let margins: Vec<f64> = trials
        .iter()
        .filter_map(|t| t.conclusion_margin.map(|m| m.value.unwrap_or(f64::NEG_INFINITY)))
        .collect();
    let min = margins.iter().copied().fold(f64::INFINITY, f64::min);
    let negative = margins.iter().filter(|&&m| m < -cfg.tol).count();
    let summary = FalsifySummary {
        trials: trials.len(),
        errors: trials.iter().filter(|t| t.error.is_some()).count(),
        min_conclusion_margin: if margins.is_empty() { None } else { Some(min).filter(|m| m.is_finite()) },
        negative_margins: negative,
        max_residual: trials
            .iter()
            .filter_map(|t| t.residual.and_then(|r| r.value))
            .reduce(f64::max),
        uncertified: trials.iter().filter(|t| t.error.is_none() && !t.certified).count(),
    };
    let verdict = if negative > 0 {
        FalsifyVerdict::CounterexampleFound
    } else {
        FalsifyVerdict::NoCounterexample
    };
    let code = if negative > 0 { EXIT_FAIL } else { EXIT_PASS };
    Ok((
        FalsifyData {
            lemma: cfg.lemma,
            params: rounded(p),
            beta_star: threshold_summary(cfg.lemma, &p)?.beta_star,
            hypothesis_holds: catalog::feasibility_check(cfg.lemma, &p),
            schwarz: cfg.schwarz,
            trials,
            summary,
            verdict,
        },
        code,
    ))
}

const PLOT_SAMPLES: usize = 1024;

fn sample_curve<F: Fn(Complex64) -> Option<Complex64>>(f: F, radius: f64) -> Vec<Complex64> {
    (0..=PLOT_SAMPLES)
        .map(|j| {
            let t = -std::f64::consts::PI + std::f64::consts::TAU * j as f64 / PLOT_SAMPLES as f64;
            f(Complex64::from_polar(radius, t)).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
        })
        .collect()
}

fn region_label(r: TargetRegion) -> String {
    match r {
        TargetRegion::SqrtLemniscate => "sqrt(1+z)".into(),
        TargetRegion::Janowski { a, b } => format!("(1+{a}z)/(1+{b}z)"),
    }
}

pub fn cmd_plot(cfg: &RunConfig) -> Result<(PlotData, String), RunError> {
    cfg.validate(Command::Plot)?;
    let base = cfg.point();
    let beta = resolve_beta(cfg, &base)?;
    let p = base.with_beta(beta);
    let lemma = cfg.lemma;
    p.validate(lemma).map_err(|e| match e {
        catalog::CatalogError::InvalidParameters { issues, .. } => RunError::Config(ConfigError { issues }),
        other => RunError::Verifier(other.into()),
    })?;
    let conclusion = catalog::conclusion_region(lemma, &p);
    let premise = catalog::premise_region(lemma, &p);
    let boundary = |r: TargetRegion| sample_curve(|z| r.eval(z).ok(), 1.0);
    let mut plot = Plot {
        title: format!("{lemma}, beta = {}", sig9(beta)),
        ..Plot::default()
    };
    plot.curves.push(Curve {
        label: format!("conclusion q = {}", region_label(conclusion)),
        color: "#1f77b4",
        dashed: false,
        points: boundary(conclusion),
    });
    plot.curves.push(Curve {
        label: format!("premise Phi = {}", region_label(premise)),
        color: "#2ca02c",
        dashed: true,
        points: boundary(premise),
    });
    let mut data = PlotData {
        lemma,
        params: rounded(p),
        curves: vec!["conclusion boundary".into(), "premise boundary".into()],
        min_margin: None,
        touch_point: None,
        argmin_t: None,
    };
    let verifier = Verifier::new(cfg.settings());
    if lemma.has_margin_criterion() {
        plot.curves.push(Curve {
            label: "h(e^it)".into(),
            color: "#d62728",
            dashed: false,
            points: sample_curve(|z| catalog::premise_h_eval(lemma, &p, z).ok(), 1.0),
        });
        data.curves.push("h(e^it)".into());
        let prof = verifier.boundary_margin_profile(lemma, &p)?;
        let touch = catalog::premise_h_eval(lemma, &p, Complex64::from_polar(1.0, prof.argmin_t))
            .map_err(VerifierError::from)?;
        plot.markers.push(Marker {
            label: format!("min |Phi^-1(h)| = {:.6} at t = {:.6}", prof.min_margin, prof.argmin_t),
            color: "#ff7f0e",
            at: touch,
        });
        data.min_margin = Some(Measured::new(prof.min_margin, cfg.tol));
        data.touch_point = Some([touch.re, touch.im]);
        data.argmin_t = Some(prof.argmin_t);
    }
    let w = make_schwarz(SchwarzFamily::Monomial { power: 1 }, cfg.order).map_err(VerifierError::from)?;
    let sol = solve_premise_ode(lemma, &p, &w, cfg.order).map_err(VerifierError::from)?;
    plot.curves.push(Curve {
        label: "p(0.999 e^it), w = z".into(),
        color: "#9467bd",
        dashed: false,
        points: sample_curve(|z| Some(sol.p.eval(z)), 0.999),
    });
    data.curves.push("p(0.999e^it)".into());
    Ok((data, svg::render(&plot)))
}

fn write_file(path: &Path, contents: &str) -> Result<(), RunError> {
    std::fs::write(path, contents).map_err(|source| RunError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn summarize(data: &ReportData) -> String {
    match data {
        ReportData::Verify(v) => {
            let mut s = format!("{} {:?}", v.lemma, v.verdict);
            if let Some(m) = &v.margin {
                s += &format!(
                    ", min margin {} at t = {:.9}",
                    m.min_margin.value.map_or("-inf".into(), |x| format!("{x:.12}")),
                    m.argmin_t
                );
            }
            for a in &v.admissibility {
                s += &format!(
                    ", {:?} {}",
                    a.quantity,
                    a.boundary_min.value.map_or("n/a".into(), |x| format!("{x:.12}"))
                );
            }
            s
        }
        ReportData::Threshold(t) => format!("{} rows", t.rows.len()),
        ReportData::Falsify(f) => format!(
            "{} {:?}: {} trials, min conclusion margin {}, {} negative",
            f.lemma,
            f.verdict,
            f.summary.trials,
            f.summary.min_conclusion_margin.map_or("n/a".into(), |x| format!("{x:.6e}")),
            f.summary.negative_margins
        ),
        ReportData::Plot(p) => format!("{} plot, curves: {}", p.lemma, p.curves.join(", ")),
    }
}

/// Runs `command`, writes any requested files and returns the outcome.
pub fn execute(command: Command, cfg: &RunConfig) -> Result<Outcome, RunError> {
    let (data, csv, svg, exit_code) = match command {
        Command::Verify => {
            let (d, code) = cmd_verify(cfg)?;
            (ReportData::Verify(d), None, None, code)
        }
        Command::Threshold => {
            let (d, csv) = cmd_threshold(cfg)?;
            (ReportData::Threshold(d), Some(csv), None, EXIT_PASS)
        }
        Command::Falsify => {
            let (d, code) = cmd_falsify(cfg)?;
            (ReportData::Falsify(d), None, None, code)
        }
        Command::Plot => {
            let (d, svg) = cmd_plot(cfg)?;
            (ReportData::Plot(d), None, Some(svg), EXIT_PASS)
        }
    };
    let document = ReportDocument {
        schema_version: SCHEMA_VERSION.into(),
        metadata: Metadata {
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            seed: cfg.seed,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            config: cfg.clone(),
        },
        data,
    };
    if let Some(path) = &cfg.json {
        write_file(path, &document.to_json()?)?;
    }
    if let (Some(path), Some(text)) = (&cfg.csv, &csv) {
        write_file(path, text)?;
    }
    if let (Some(path), Some(text)) = (&cfg.svg, &svg) {
        write_file(path, text)?;
    }
    let summary = summarize(&document.data);
    Ok(Outcome {
        document,
        csv,
        svg,
        summary,
        exit_code,
    })
}
