//! File schemas for fiber and session configuration.
//!
//! Configs are JSON. Frequencies accept either an angular `*_rad_per_s` field
//! or a linear `*_thz` convenience field (1 THz = 2π·10¹² rad/s); powers are
//! in W, lengths in m, γ in 1/(W·m). All unit conversion happens here, at the
//! config boundary; the core library only ever sees SI angular frequencies.

use serde::Deserialize;
use std::f64::consts::PI;

use fqkd_core::fiber::{DispersionProfile, FrequencyGrid};
use fqkd_core::protocol::ChannelModel;
use fqkd_core::session::{FiberSetup, PumpSpec, SessionConfig};

/// Pick exactly one of the angular/linear spellings of a frequency field.
fn angular(rad_per_s: Option<f64>, thz: Option<f64>, name: &str) -> Result<f64, String> {
    match (rad_per_s, thz) {
        (Some(w), None) => Ok(w),
        (None, Some(f)) => Ok(2.0 * PI * 1e12 * f),
        (None, None) => Err(format!(
            "missing frequency: give {name}_rad_per_s or {name}_thz"
        )),
        (Some(_), Some(_)) => Err(format!(
            "give only one of {name}_rad_per_s and {name}_thz"
        )),
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGrid {
    pub w_s1_rad_per_s: Option<f64>,
    pub w_s1_thz: Option<f64>,
    pub dw_rad_per_s: Option<f64>,
    pub dw_thz: Option<f64>,
    pub w_p1_rad_per_s: Option<f64>,
    pub w_p1_thz: Option<f64>,
}

impl RawGrid {
    pub fn build(&self) -> Result<FrequencyGrid, String> {
        let w_s1 = angular(self.w_s1_rad_per_s, self.w_s1_thz, "w_s1")?;
        let dw = angular(self.dw_rad_per_s, self.dw_thz, "dw")?;
        let w_p1 = angular(self.w_p1_rad_per_s, self.w_p1_thz, "w_p1")?;
        FrequencyGrid::new(w_s1, dw, w_p1).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDispersion {
    pub reference_rad_per_s: Option<f64>,
    pub reference_thz: Option<f64>,
    /// Taylor coefficients β₀, β₁, β₂, … in rad/m, s/m, s²/m, …
    pub beta_coefficients: Vec<f64>,
}

impl RawDispersion {
    pub fn build(&self) -> Result<DispersionProfile, String> {
        let reference = angular(self.reference_rad_per_s, self.reference_thz, "reference")?;
        Ok(DispersionProfile::new(
            reference,
            self.beta_coefficients.clone(),
        ))
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPumps {
    pub p1_w: Option<f64>,
    pub p2_w: Option<f64>,
    /// Total power budget for pumps 1 and 2; the split is solved for
    /// phase matching of the s1→s2 process.
    pub budget_w: Option<f64>,
}

impl RawPumps {
    pub fn build(&self) -> Result<PumpSpec, String> {
        match (self.p1_w, self.p2_w, self.budget_w) {
            (Some(p1), Some(p2), None) => Ok(PumpSpec::Explicit { p1, p2 }),
            (None, None, Some(total)) => Ok(PumpSpec::Budget { total }),
            _ => Err("pumps: give either p1_w and p2_w, or budget_w".into()),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFiber {
    pub gamma_per_w_m: f64,
    pub pumps: RawPumps,
    pub grid: RawGrid,
    pub dispersion: RawDispersion,
}

impl RawFiber {
    pub fn build(&self) -> Result<FiberSetup, String> {
        Ok(FiberSetup {
            gamma: self.gamma_per_w_m,
            pumps: self.pumps.build()?,
            grid: self.grid.build()?,
            dispersion: self.dispersion.build()?,
        })
    }
}

/// Session config file; every field is optional and falls back to the
/// defaults of a fair-coin, ideal-channel qubit session.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RawSession {
    pub dim: Option<usize>,
    pub rounds: Option<u64>,
    pub seed: Option<u64>,
    /// none | intercept-resend-psi | intercept-resend-random-basis.
    pub eve: Option<String>,
    pub survival_probability: Option<f64>,
    pub dark_count_probability: Option<f64>,
    pub alice_phi_probability: Option<f64>,
    pub bob_phi_probability: Option<f64>,
    pub transcript: Option<std::path::PathBuf>,
    pub fiber: Option<RawFiber>,
}

impl RawSession {
    pub fn build(&self) -> Result<SessionConfig, String> {
        let eve = match &self.eve {
            Some(name) => name.parse()?,
            None => fqkd_core::protocol::EveStrategy::None,
        };
        Ok(SessionConfig {
            dim: self.dim.unwrap_or(2),
            rounds: self.rounds.unwrap_or(10_000),
            eve,
            channel: ChannelModel {
                survival_probability: self.survival_probability.unwrap_or(1.0),
                dark_count_probability: self.dark_count_probability.unwrap_or(0.0),
            },
            alice_phi_probability: self.alice_phi_probability.unwrap_or(0.5),
            bob_phi_probability: self.bob_phi_probability.unwrap_or(0.5),
            seed: self.seed.unwrap_or(1),
            fiber: self.fiber.as_ref().map(|f| f.build()).transpose()?,
            transcript_output: self.transcript.clone(),
        })
    }
}
