//! Seeded Monte Carlo harness: runs configured protocol sessions, aggregates
//! statistics with Wilson confidence intervals, and persists transcripts and
//! reports.
//!
//! Each round consumes an independent random stream keyed by
//! `(seed, round index)`, so rounds can be sharded across any number of
//! workers and still produce bit-identical transcripts and reports. Counts
//! merge associatively in round order; transcript writing is serialized by
//! round index.

use serde::Serialize;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;
use thiserror::Error;

use crate::fiber::{
    solve_pump_powers, CoupledPair, DispersionProfile, FiberError, FiberParams, FrequencyGrid,
};
use crate::protocol::{
    alice_prepare, bob_measure, decode, eve_act, exact_error_rate, sift_record, ChannelModel,
    ErrorCondition, EveStrategy, PhotonRecord, ProtocolError, Symbol,
};
use crate::quantum::{Basis, BasisKind, SUPPORTED_DIMS};
use crate::rng::{derive_seed, RoundRng};

#[derive(Debug, Error)]
pub enum SessionError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("cannot persist transcript to {path}: {source}")]
    Persistence {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
}

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

/// How the pump powers of the translation stage are specified.
#[derive(Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PumpSpec {
    /// Explicit powers for pumps 1 and 2 (pump 3 mirrors pump 1).
    Explicit { p1: f64, p2: f64 },
    /// Total budget for pumps 1 and 2, split so the s1→s2 process is
    /// phase-matched.
    Budget { total: f64 },
}

/// A complete fiber description: nonlinearity, pump powers, frequency layout
/// and dispersion. Attached to a session for report annotation.
#[derive(Debug, Clone, Serialize)]
pub struct FiberSetup {
    /// Nonlinear coefficient γ in 1/(W·m).
    pub gamma: f64,
    pub pumps: PumpSpec,
    pub grid: FrequencyGrid,
    pub dispersion: DispersionProfile,
}

impl FiberSetup {
    /// Solve the pump powers if given as a budget, then derive κ, λ_FT and
    /// the phase mismatch of every process enabled for `dim` characters.
    pub fn resolve(
        &self,
        dim: usize,
    ) -> Result<(FiberParams, Vec<(CoupledPair, f64)>), FiberError> {
        let (p1, p2) = match self.pumps {
            PumpSpec::Explicit { p1, p2 } => (p1, p2),
            PumpSpec::Budget { total } => solve_pump_powers(
                &self.dispersion,
                &self.grid,
                self.gamma,
                total,
                (1, 2),
                (1, 2),
            )?,
        };
        let params = FiberParams::derive(self.gamma, p1, p2, &self.dispersion, &self.grid)?;
        let pairs = params.mismatch_per_pair(&self.dispersion, &self.grid, dim)?;
        Ok((params, pairs))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SessionConfig {
    /// Alphabet size: 2 (qubits) or 4 (qu-quarts).
    pub dim: usize,
    pub rounds: u64,
    pub eve: EveStrategy,
    pub channel: ChannelModel,
    /// Probability that Alice (Bob) inserts the half-translation stage.
    pub alice_phi_probability: f64,
    pub bob_phi_probability: f64,
    pub seed: u64,
    pub fiber: Option<FiberSetup>,
    pub transcript_output: Option<PathBuf>,
}

impl SessionConfig {
    /// Config with fair basis coins, no eavesdropper and an ideal channel.
    pub fn new(dim: usize, rounds: u64, seed: u64) -> Self {
        Self {
            dim,
            rounds,
            eve: EveStrategy::None,
            channel: ChannelModel::default(),
            alice_phi_probability: 0.5,
            bob_phi_probability: 0.5,
            seed,
            fiber: None,
            transcript_output: None,
        }
    }

    pub fn validate(&self) -> Result<(), SessionError> {
        if !SUPPORTED_DIMS.contains(&self.dim) {
            return Err(SessionError::InvalidConfig(format!(
                "dim must be 2 or 4, got {}",
                self.dim
            )));
        }
        if self.rounds == 0 {
            return Err(SessionError::InvalidConfig("rounds must be >= 1".into()));
        }
        for (name, p) in [
            ("alice_phi_probability", self.alice_phi_probability),
            ("bob_phi_probability", self.bob_phi_probability),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(SessionError::InvalidConfig(format!(
                    "{name} = {p} is not in [0, 1]"
                )));
            }
        }
        self.channel.validate()?;
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Counts {
    pub sent: u64,
    pub lost: u64,
    pub sifted: u64,
    pub errors: u64,
}

/// Error rate with a Wilson 95% score interval.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Qber {
    pub value: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct BasisStats {
    pub sifted: u64,
    pub errors: u64,
    pub error_rate: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairMismatch {
    pub pair: String,
    pub delta_rad_per_m: f64,
}

/// Derived fiber figures echoed into the report when a fiber is configured.
#[derive(Debug, Clone, Serialize)]
pub struct FiberAnnotation {
    pub kappa_rad_per_m: f64,
    pub lambda_ft_m: f64,
    pub pump_powers_w: [f64; 3],
    pub mismatches: Vec<PairMismatch>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SessionReport {
    pub config: SessionConfig,
    pub counts: Counts,
    pub sift_ratio: f64,
    pub qber: Qber,
    pub psi_psi: BasisStats,
    pub phi_phi: BasisStats,
    /// Enumerated error rate for the configured attack, for comparison.
    pub exact_reference: Option<f64>,
    pub fiber: Option<FiberAnnotation>,
    pub warnings: Vec<String>,
    pub elapsed_seconds: f64,
}

impl SessionReport {
    /// Pretty JSON with the wall time zeroed, for byte-level comparisons.
    pub fn canonical_json(&self) -> String {
        let mut clone = self.clone();
        clone.elapsed_seconds = 0.0;
        serde_json::to_string_pretty(&clone).expect("report serializes")
    }
}

/// Wilson 95% score interval for `errors` successes in `trials`; well-behaved
/// at an observed rate of 0, and (0, 1) when there are no trials.
pub fn wilson_interval(errors: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959963984540054_f64;
    let n = trials as f64;
    let p = errors as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // the final clamps keep p inside the interval under fp rounding at p ∈ {0, 1}
    (
        (center - half).max(0.0).min(p),
        (center + half).min(1.0).max(p),
    )
}

// ---------------------------------------------------------------------------
// Round execution
// ---------------------------------------------------------------------------

/// Execute one protocol round. Pure function of (config, index): every draw
/// comes from the round's own counter-based stream.
pub fn run_round(config: &SessionConfig, index: u64) -> PhotonRecord {
    let dim = config.dim;
    let mut rng = RoundRng::new(config.seed, index);

    let alice_kind = if rng.bernoulli(config.alice_phi_probability) {
        BasisKind::Phi
    } else {
        BasisKind::Psi
    };
    let alice_basis = Basis::new(alice_kind, dim).expect("config validated");
    let alice_symbol = Symbol(rng.next_index_pow2(dim));
    let prepared = alice_prepare(alice_symbol, alice_basis).expect("symbol in range");

    // Eve sits right after Alice's encoder, before the lossy channel.
    let eve = eve_act(prepared, config.eve, &mut rng);

    let lost = !rng.bernoulli(config.channel.survival_probability);
    let bob_kind = if rng.bernoulli(config.bob_phi_probability) {
        BasisKind::Phi
    } else {
        BasisKind::Psi
    };
    let bob_basis = Basis::new(bob_kind, dim).expect("config validated");

    let (bob_outcome, bob_symbol) = if !lost {
        let outcome = bob_measure(&eve.state, bob_basis, &mut rng).expect("dims match");
        let symbol = decode(outcome, bob_basis).expect("outcome in range");
        (Some(outcome), Some(symbol))
    } else if rng.bernoulli(config.channel.dark_count_probability) {
        // spurious click on a lost photon: uniform detector
        let outcome = rng.next_index_pow2(dim) + 1;
        let symbol = decode(outcome, bob_basis).expect("outcome in range");
        (Some(outcome), Some(symbol))
    } else {
        (None, None)
    };

    let mut record = PhotonRecord {
        index,
        alice_symbol,
        alice_basis: alice_kind,
        eve_acted: config.eve != EveStrategy::None,
        eve_outcome: eve.outcome,
        lost,
        bob_basis: bob_kind,
        bob_outcome,
        bob_symbol,
        sifted: false,
        error: None,
    };
    sift_record(&mut record);
    record
}

#[derive(Debug, Default, Clone, Copy)]
struct Tally {
    sent: u64,
    lost: u64,
    sifted: u64,
    errors: u64,
    psi_psi_sifted: u64,
    psi_psi_errors: u64,
    phi_phi_sifted: u64,
    phi_phi_errors: u64,
}

impl Tally {
    fn add(&mut self, record: &PhotonRecord) {
        self.sent += 1;
        self.lost += u64::from(record.lost);
        if record.sifted {
            self.sifted += 1;
            let err = u64::from(record.error == Some(true));
            self.errors += err;
            match record.alice_basis {
                BasisKind::Psi => {
                    self.psi_psi_sifted += 1;
                    self.psi_psi_errors += err;
                }
                BasisKind::Phi => {
                    self.phi_phi_sifted += 1;
                    self.phi_phi_errors += err;
                }
            }
        }
    }

    fn merge(&mut self, other: &Tally) {
        self.sent += other.sent;
        self.lost += other.lost;
        self.sifted += other.sifted;
        self.errors += other.errors;
        self.psi_psi_sifted += other.psi_psi_sifted;
        self.psi_psi_errors += other.psi_psi_errors;
        self.phi_phi_sifted += other.phi_phi_sifted;
        self.phi_phi_errors += other.phi_phi_errors;
    }
}

fn rate(errors: u64, trials: u64) -> f64 {
    if trials == 0 {
        0.0
    } else {
        errors as f64 / trials as f64
    }
}

// ---------------------------------------------------------------------------
// Session execution
// ---------------------------------------------------------------------------

/// Run a session on a single worker.
pub fn run_session(config: &SessionConfig) -> Result<SessionReport, SessionError> {
    run_session_with_workers(config, 1)
}

/// Run a session sharded over `workers` threads. The worker count does not
/// affect any output: rounds draw from per-round streams and shards merge in
/// round order.
pub fn run_session_with_workers(
    config: &SessionConfig,
    workers: usize,
) -> Result<SessionReport, SessionError> {
    config.validate()?;
    let start = Instant::now();

    let workers = workers.max(1).min(config.rounds.max(1) as usize);
    let keep_records = config.transcript_output.is_some();
    let per_worker = config.rounds.div_ceil(workers as u64);
    let ranges: Vec<(u64, u64)> = (0..workers as u64)
        .map(|w| (w * per_worker, ((w + 1) * per_worker).min(config.rounds)))
        .filter(|(lo, hi)| lo < hi)
        .collect();

    let shards: Vec<(Tally, Vec<PhotonRecord>)> = std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .iter()
            .map(|&(lo, hi)| {
                scope.spawn(move || {
                    let mut tally = Tally::default();
                    let mut records = Vec::new();
                    if keep_records {
                        records.reserve((hi - lo) as usize);
                    }
                    for index in lo..hi {
                        let record = run_round(config, index);
                        tally.add(&record);
                        if keep_records {
                            records.push(record);
                        }
                    }
                    (tally, records)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("session worker panicked"))
            .collect()
    });

    let mut tally = Tally::default();
    for (shard, _) in &shards {
        tally.merge(shard);
    }

    if let Some(path) = &config.transcript_output {
        let persist = |source| SessionError::Persistence {
            path: path.clone(),
            source,
        };
        let file = std::fs::File::create(path).map_err(persist)?;
        let mut out = BufWriter::new(file);
        for (_, records) in &shards {
            for record in records {
                let line = serde_json::to_string(record).expect("record serializes");
                out.write_all(line.as_bytes()).map_err(persist)?;
                out.write_all(b"\n").map_err(persist)?;
            }
        }
        out.flush().map_err(persist)?;
    }

    let mut warnings = Vec::new();
    let fiber = annotate_fiber(config, &mut warnings);

    let (wilson_low, wilson_high) = wilson_interval(tally.errors, tally.sifted);
    let exact = exact_error_rate(config.dim, config.eve, ErrorCondition::AllSifted);

    Ok(SessionReport {
        config: config.clone(),
        counts: Counts {
            sent: tally.sent,
            lost: tally.lost,
            sifted: tally.sifted,
            errors: tally.errors,
        },
        sift_ratio: rate(tally.sifted, tally.sent),
        qber: Qber {
            value: rate(tally.errors, tally.sifted),
            wilson_low,
            wilson_high,
        },
        psi_psi: BasisStats {
            sifted: tally.psi_psi_sifted,
            errors: tally.psi_psi_errors,
            error_rate: rate(tally.psi_psi_errors, tally.psi_psi_sifted),
        },
        phi_phi: BasisStats {
            sifted: tally.phi_phi_sifted,
            errors: tally.phi_phi_errors,
            error_rate: rate(tally.phi_phi_errors, tally.phi_phi_sifted),
        },
        exact_reference: Some(*exact.numer() as f64 / *exact.denom() as f64),
        fiber,
        warnings,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Tolerance on the annotated phase mismatch: beyond this the configured
/// stage is not the phase-matched translation the protocol assumes.
const DELTA_WARN_TOL: f64 = 1e-9;

fn annotate_fiber(config: &SessionConfig, warnings: &mut Vec<String>) -> Option<FiberAnnotation> {
    let setup = config.fiber.as_ref()?;
    match setup.resolve(config.dim) {
        Ok((params, pairs)) => {
            for (pair, delta) in &pairs {
                if delta.abs() > DELTA_WARN_TOL {
                    warnings.push(format!(
                        "fiber: process {} has phase mismatch {delta:e} rad/m (|δ| > {DELTA_WARN_TOL:e}); \
                         the translation stage is not phase-matched",
                        pair.label()
                    ));
                }
            }
            Some(FiberAnnotation {
                kappa_rad_per_m: params.kappa,
                lambda_ft_m: params.lambda_ft,
                pump_powers_w: [params.p1, params.p2, params.p3],
                mismatches: pairs
                    .into_iter()
                    .map(|(pair, delta)| PairMismatch {
                        pair: pair.label(),
                        delta_rad_per_m: delta,
                    })
                    .collect(),
            })
        }
        Err(err) => {
            warnings.push(format!("fiber: annotation failed: {err}"));
            None
        }
    }
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

/// Numeric fields a sweep may vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    SurvivalProbability,
    DarkCountProbability,
    AlicePhiProbability,
    BobPhiProbability,
}

impl SweepParameter {
    pub const NAMES: [&'static str; 4] = [
        "survival_probability",
        "dark_count_probability",
        "alice_phi_probability",
        "bob_phi_probability",
    ];
}

impl std::str::FromStr for SweepParameter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "survival_probability" => Ok(Self::SurvivalProbability),
            "dark_count_probability" => Ok(Self::DarkCountProbability),
            "alice_phi_probability" => Ok(Self::AlicePhiProbability),
            "bob_phi_probability" => Ok(Self::BobPhiProbability),
            _ => Err(format!(
                "unknown sweep parameter '{s}' (expected one of {})",
                Self::NAMES.join(", ")
            )),
        }
    }
}

/// Run one session per value of the swept parameter. Per-value seeds derive
/// from (base seed, value index); transcripts are disabled inside sweeps so
/// values cannot clobber one another's output path.
pub fn sweep(
    base: &SessionConfig,
    parameter: SweepParameter,
    values: &[f64],
    workers: usize,
) -> Result<Vec<SessionReport>, SessionError> {
    if values.is_empty() {
        return Err(SessionError::InvalidConfig(
            "sweep values must be nonempty".into(),
        ));
    }
    values
        .iter()
        .enumerate()
        .map(|(i, &value)| {
            let mut config = base.clone();
            match parameter {
                SweepParameter::SurvivalProbability => {
                    config.channel.survival_probability = value
                }
                SweepParameter::DarkCountProbability => {
                    config.channel.dark_count_probability = value
                }
                SweepParameter::AlicePhiProbability => config.alice_phi_probability = value,
                SweepParameter::BobPhiProbability => config.bob_phi_probability = value,
            }
            config.seed = derive_seed(base.seed, i as u64);
            config.transcript_output = None;
            run_session_with_workers(&config, workers)
        })
        .collect()
}
