//! Command implementations. Every command returns a machine-readable payload
//! on success or a [`CliError`] that maps onto the exit-code taxonomy:
//! 0 success, 1 domain/configuration error, 2 I/O error.

use serde_json::json;
use std::path::{Path, PathBuf};

use fqkd_core::exact::ExactState;
use fqkd_core::protocol::{exact_error_rate, ErrorCondition, EveStrategy};
use fqkd_core::session::{
    run_session_with_workers, sweep, SessionConfig, SessionError, SessionReport, SweepParameter,
};

use crate::config::{RawFiber, RawSession};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Exit code 1: bad values, infeasible physics, malformed config content.
    Domain,
    /// Exit code 2: unreadable inputs or unwritable outputs.
    Io,
}

#[derive(Debug)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    fn domain(message: impl Into<String>) -> Self {
        Self {
            kind: ErrorKind::Domain,
            message: message.into(),
        }
    }

    fn io(message: impl Into<String>) -> Self {
        Self {
            kind: ErrorKind::Io,
            message: message.into(),
        }
    }
}

impl From<SessionError> for CliError {
    fn from(err: SessionError) -> Self {
        match err {
            SessionError::Persistence { .. } => CliError::io(err.to_string()),
            _ => CliError::domain(err.to_string()),
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::io(format!("cannot read {}: {e}", path.display())))
}

fn parse_json<'a, T: serde::Deserialize<'a>>(text: &'a str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::domain(format!("invalid {what}: {e}")))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display())))
}

fn check_dim(dim: usize) -> Result<(), CliError> {
    if dim == 2 || dim == 4 {
        Ok(())
    } else {
        Err(CliError::domain(format!("dim must be 2 or 4, got {dim}")))
    }
}

// ---------------------------------------------------------------------------
// fiber
// ---------------------------------------------------------------------------

pub fn cmd_fiber(config_path: &Path) -> Result<String, CliError> {
    let text = read_file(config_path)?;
    let raw: RawFiber = parse_json(&text, "fiber config")?;
    let setup = raw.build().map_err(CliError::domain)?;
    // Report all four ring processes; a two-character session just uses the
    // first one.
    let (params, pairs) = setup.resolve(4).map_err(|e| CliError::domain(e.to_string()))?;
    let payload = json!({
        "gamma_per_w_m": params.gamma,
        "pump_mode": match raw.pumps.budget_w { Some(_) => "budget", None => "explicit" },
        "pump_powers_w": [params.p1, params.p2, params.p3],
        "kappa_rad_per_m": params.kappa,
        "lambda_ft_m": params.lambda_ft,
        "half_translation_length_m": params.lambda_ft / 2.0,
        "mismatches": pairs
            .iter()
            .map(|(pair, delta)| json!({"pair": pair.label(), "delta_rad_per_m": delta}))
            .collect::<Vec<_>>(),
    });
    Ok(serde_json::to_string_pretty(&payload).expect("payload serializes"))
}

// ---------------------------------------------------------------------------
// bases
// ---------------------------------------------------------------------------

pub fn cmd_bases(dim: usize) -> Result<String, CliError> {
    check_dim(dim)?;
    let psi: Vec<ExactState> = (1..=dim).map(|m| ExactState::standard(dim, m)).collect();
    let phi: Vec<ExactState> = (0..dim).map(|s| ExactState::phi(dim, s)).collect();
    let rows = |states: &[ExactState]| {
        states
            .iter()
            .map(|s| {
                (1..=dim)
                    .map(|m| s.amplitude(m).to_string())
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
    };
    // |⟨ψ_j|φ_k⟩|²: exactly 1/dim everywhere for mutually unbiased bases.
    let overlaps: Vec<Vec<f64>> = psi
        .iter()
        .map(|p| {
            phi.iter()
                .map(|q| {
                    let r = p.overlap_sqr(q);
                    *r.numer() as f64 / *r.denom() as f64
                })
                .collect()
        })
        .collect();
    let payload = json!({
        "dim": dim,
        "psi": rows(&psi),
        "phi": rows(&phi),
        "overlap_sqr": overlaps,
    });
    Ok(serde_json::to_string_pretty(&payload).expect("payload serializes"))
}

// ---------------------------------------------------------------------------
// attack
// ---------------------------------------------------------------------------

pub fn cmd_attack(dim: usize, strategy: &str, condition: &str) -> Result<String, CliError> {
    check_dim(dim)?;
    let strategy: EveStrategy = strategy.parse().map_err(CliError::domain)?;
    let condition: ErrorCondition = condition.parse().map_err(CliError::domain)?;
    let rate = exact_error_rate(dim, strategy, condition);
    let payload = json!({
        "dim": dim,
        "strategy": strategy.to_string(),
        "condition": match condition {
            ErrorCondition::AllSifted => "all-sifted",
            ErrorCondition::PhiOnly => "phi-only",
        },
        "rate": rate.to_string(),
        "rate_decimal": *rate.numer() as f64 / *rate.denom() as f64,
    });
    Ok(serde_json::to_string_pretty(&payload).expect("payload serializes"))
}

// ---------------------------------------------------------------------------
// run / sweep
// ---------------------------------------------------------------------------

#[derive(clap::Args, Debug, Default)]
pub struct RunArgs {
    /// Session config file (JSON); flags below override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Alphabet size: 2 or 4.
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long)]
    pub rounds: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// none | intercept-resend-psi | intercept-resend-random-basis.
    #[arg(long)]
    pub eve: Option<String>,
    /// Channel survival probability in [0, 1].
    #[arg(long)]
    pub survival: Option<f64>,
    /// Dark-count probability in [0, 1].
    #[arg(long)]
    pub dark: Option<f64>,
    /// Probability that Alice uses the φ basis.
    #[arg(long)]
    pub alice_phi: Option<f64>,
    /// Probability that Bob uses the φ basis.
    #[arg(long)]
    pub bob_phi: Option<f64>,
    /// Write the per-round transcript (one JSON record per line) here.
    #[arg(long)]
    pub transcript: Option<PathBuf>,
    /// Write the session report (JSON) here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads; defaults to $FQKD_WORKERS or 1. Never changes results.
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(clap::Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub base: RunArgs,
    /// Field to sweep: survival_probability, dark_count_probability,
    /// alice_phi_probability or bob_phi_probability.
    #[arg(long)]
    pub param: String,
    /// Comma-separated values, e.g. 1.0,0.5,0.1.
    #[arg(long)]
    pub values: String,
}

fn workers_from(args: &RunArgs) -> usize {
    args.workers
        .or_else(|| {
            std::env::var("FQKD_WORKERS")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(1)
}

fn build_config(args: &RunArgs) -> Result<SessionConfig, CliError> {
    let mut config = match &args.config {
        Some(path) => {
            let text = read_file(path)?;
            let raw: RawSession = parse_json(&text, "session config")?;
            raw.build().map_err(CliError::domain)?
        }
        None => RawSession::default().build().map_err(CliError::domain)?,
    };
    if let Some(dim) = args.dim {
        config.dim = dim;
    }
    if let Some(rounds) = args.rounds {
        config.rounds = rounds;
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(eve) = &args.eve {
        config.eve = eve.parse().map_err(CliError::domain)?;
    }
    if let Some(p) = args.survival {
        config.channel.survival_probability = p;
    }
    if let Some(p) = args.dark {
        config.channel.dark_count_probability = p;
    }
    if let Some(p) = args.alice_phi {
        config.alice_phi_probability = p;
    }
    if let Some(p) = args.bob_phi {
        config.bob_phi_probability = p;
    }
    if let Some(path) = &args.transcript {
        config.transcript_output = Some(path.clone());
    }
    Ok(config)
}

fn summary_line(report: &SessionReport) -> String {
    format!(
        "qber={:.6} wilson=[{:.6},{:.6}] sifted={} errors={} sift_ratio={:.6} exact={}",
        report.qber.value,
        report.qber.wilson_low,
        report.qber.wilson_high,
        report.counts.sifted,
        report.counts.errors,
        report.sift_ratio,
        report
            .exact_reference
            .map_or_else(|| "n/a".into(), |x| format!("{x:.6}")),
    )
}

pub fn cmd_run(args: &RunArgs) -> Result<String, CliError> {
    let config = build_config(args)?;
    let report = run_session_with_workers(&config, workers_from(args))?;
    let report_json = serde_json::to_string_pretty(&report).expect("report serializes");
    let mut payload = summary_line(&report);
    match &args.out {
        Some(path) => write_file(path, &report_json)?,
        None => {
            payload.push('\n');
            payload.push_str(&report_json);
        }
    }
    Ok(payload)
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<String, CliError> {
    let config = build_config(&args.base)?;
    let parameter: SweepParameter = args.param.parse().map_err(CliError::domain)?;
    let values: Vec<f64> = args
        .values
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| CliError::domain(format!("bad sweep value '{s}': {e}")))
        })
        .collect::<Result<_, _>>()?;
    if values.is_empty() {
        return Err(CliError::domain("sweep needs at least one value"));
    }
    let reports = sweep(&config, parameter, &values, workers_from(&args.base))?;
    let reports_json = serde_json::to_string_pretty(&reports).expect("reports serialize");
    let mut payload = String::new();
    for (value, report) in values.iter().zip(&reports) {
        payload.push_str(&format!("{}={value} {}\n", args.param, summary_line(report)));
    }
    match &args.base.out {
        Some(path) => {
            write_file(path, &reports_json)?;
            payload.pop();
        }
        None => payload.push_str(&reports_json),
    }
    Ok(payload)
}
