//! Physical design parameters of the frequency-translation stage.
//!
//! Two pumps at w_p1, w_p2 couple signal neighbours separated by δw; a third
//! pump at w_p3 = w_p2 + 3δw closes the ring by coupling w_s1 and w_s4. With
//! pump powers P and fiber nonlinearity γ, every enabled jump shares the
//! effective nonlinearity κ = 2γ√(P_a·P_b), and a complete translation takes
//! λ_FT = π/(2κ). Couplings outside the qu-quart region are treated as fully
//! suppressed, so the only dynamics is the four-mode ring of
//! `i ∂A_m/∂z = -κ (A_{m-1} + A_{m+1})` (indices modulo 4), which
//! [`propagate_classical`] integrates with a fixed-step classic Runge-Kutta
//! scheme as an independent check on the analytic propagator.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

fn is_positive(x: f64) -> bool {
    x.is_finite() && x > 0.0
}

fn is_nonnegative(x: f64) -> bool {
    x.is_finite() && x >= 0.0
}

#[derive(Debug, Error, PartialEq)]
pub enum FiberError {
    #[error("nonlinear coefficient gamma must be > 0, got {0}")]
    NonPositiveGamma(f64),
    #[error("pump power must be >= 0, got {0}")]
    NegativePower(f64),
    #[error("effective nonlinearity must be > 0 for a translation length, got {0}")]
    NonPositiveKappa(f64),
    #[error("grid spacing must be > 0, got {0}")]
    NonPositiveSpacing(f64),
    #[error("pump {index} at {frequency} rad/s lies inside the signal band [{low}, {high}]")]
    PumpInsideSignalBand {
        index: usize,
        frequency: f64,
        low: f64,
        high: f64,
    },
    #[error("signal index {0} out of range 1..=4")]
    SignalOutOfRange(usize),
    #[error("pump index {0} out of range 1..=3")]
    PumpOutOfRange(usize),
    #[error(
        "pair violates energy conservation: w_s{signal_target} - w_s{signal_source} = \
         {signal_gap} rad/s but w_p{pump_b} - w_p{pump_a} = {pump_gap} rad/s"
    )]
    EnergyMismatch {
        signal_source: usize,
        signal_target: usize,
        pump_a: usize,
        pump_b: usize,
        signal_gap: f64,
        pump_gap: f64,
    },
    #[error(
        "pump solve infeasible: dispersion imbalance {delta_beta} rad/m needs a power split \
         outside the budget {budget} W"
    )]
    InfeasiblePumpSolve { delta_beta: f64, budget: f64 },
}

// ---------------------------------------------------------------------------
// FrequencyGrid
// ---------------------------------------------------------------------------

/// The qu-quart frequency layout: four signals spaced by δw and three pumps
/// at w_p1, w_p1 + δw, w_p1 + 4δw, all outside the signal band.
#[derive(Debug, Clone, Serialize)]
pub struct FrequencyGrid {
    w_s: [f64; 4],
    w_p: [f64; 3],
    dw: f64,
    w0: f64,
}

impl FrequencyGrid {
    pub fn new(w_s1: f64, dw: f64, w_p1: f64) -> Result<Self, FiberError> {
        if !is_positive(dw) {
            return Err(FiberError::NonPositiveSpacing(dw));
        }
        let w_s = [w_s1, w_s1 + dw, w_s1 + 2.0 * dw, w_s1 + 3.0 * dw];
        let w_p = [w_p1, w_p1 + dw, w_p1 + 4.0 * dw];
        for (i, &wp) in w_p.iter().enumerate() {
            if wp >= w_s[0] && wp <= w_s[3] {
                return Err(FiberError::PumpInsideSignalBand {
                    index: i + 1,
                    frequency: wp,
                    low: w_s[0],
                    high: w_s[3],
                });
            }
        }
        let w0 = w_s.iter().sum::<f64>() / 4.0;
        Ok(Self { w_s, w_p, dw, w0 })
    }

    /// Signal angular frequency w_s{m} (1-based).
    pub fn signal(&self, m: usize) -> Result<f64, FiberError> {
        self.w_s
            .get(m.wrapping_sub(1))
            .copied()
            .ok_or(FiberError::SignalOutOfRange(m))
    }

    /// Pump angular frequency w_p{k} (1-based).
    pub fn pump(&self, k: usize) -> Result<f64, FiberError> {
        self.w_p
            .get(k.wrapping_sub(1))
            .copied()
            .ok_or(FiberError::PumpOutOfRange(k))
    }

    pub fn spacing(&self) -> f64 {
        self.dw
    }

    /// Mean signal frequency w₀.
    pub fn center(&self) -> f64 {
        self.w0
    }
}

// ---------------------------------------------------------------------------
// DispersionProfile
// ---------------------------------------------------------------------------

/// Fiber dispersion β(w) as a Taylor expansion around a reference frequency:
/// `β(w) = Σ_k β_k (w - w_ref)^k / k!` with β_k in rad/m, s/m, s²/m, …
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DispersionProfile {
    pub reference: f64,
    pub coefficients: Vec<f64>,
}

impl DispersionProfile {
    pub fn new(reference: f64, coefficients: Vec<f64>) -> Self {
        Self {
            reference,
            coefficients,
        }
    }

    /// Frequency-independent β (the perfectly dispersion-flattened limit).
    pub fn flat(beta0: f64) -> Self {
        Self::new(0.0, vec![beta0])
    }

    pub fn beta_at(&self, w: f64) -> f64 {
        let x = w - self.reference;
        let mut term = 1.0; // x^k / k!
        let mut sum = 0.0;
        for (k, &c) in self.coefficients.iter().enumerate() {
            if k > 0 {
                term *= x / k as f64;
            }
            sum += c * term;
        }
        sum
    }

    /// Interpolating profile through the given (frequency, β) samples, via
    /// Newton divided differences; intended for small sample sets (order ≤ 4).
    pub fn fit_points(reference: f64, points: &[(f64, f64)]) -> Self {
        assert!(!points.is_empty(), "need at least one sample");
        let xs: Vec<f64> = points.iter().map(|&(w, _)| w - reference).collect();
        let mut dd: Vec<f64> = points.iter().map(|&(_, b)| b).collect();
        let n = xs.len();
        // dd[j] becomes the j-th order divided difference f[x_0..x_j]
        for order in 1..n {
            for j in (order..n).rev() {
                dd[j] = (dd[j] - dd[j - 1]) / (xs[j] - xs[j - order]);
            }
        }
        // expand Newton form into monomial coefficients
        let mut mono = vec![0.0; n];
        let mut basis = vec![0.0; n];
        basis[0] = 1.0; // running product Π (x - x_j)
        let mut basis_len = 1;
        for (j, &a) in dd.iter().enumerate() {
            for k in 0..basis_len {
                mono[k] += a * basis[k];
            }
            if j + 1 < n {
                // basis *= (x - xs[j])
                for k in (0..basis_len).rev() {
                    basis[k + 1] += basis[k];
                    basis[k] *= -xs[j];
                }
                basis_len += 1;
            }
        }
        // monomial -> Taylor-derivative convention (multiply by k!)
        let mut factorial = 1.0;
        let coefficients = mono
            .into_iter()
            .enumerate()
            .map(|(k, c)| {
                if k > 0 {
                    factorial *= k as f64;
                }
                c * factorial
            })
            .collect();
        Self::new(reference, coefficients)
    }
}

// ---------------------------------------------------------------------------
// Coupled pairs and the scalar design formulas
// ---------------------------------------------------------------------------

/// One phase-matched translation process: signal `source → target` driven by
/// pumps `(pump_a, pump_b)`, conserving energy as
/// `w_target - w_source = w_pb - w_pa`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoupledPair {
    pub source: usize,
    pub target: usize,
    pub pump_a: usize,
    pub pump_b: usize,
}

impl CoupledPair {
    /// The translation processes enabled by the grid for a given alphabet:
    /// nearest-neighbour jumps via pumps 1 and 2, plus the ring-closing
    /// 1 ↔ 4 jump via pumps 2 and 3 for qu-quarts.
    pub fn enabled(dim: usize) -> Vec<CoupledPair> {
        let pair = |source, target, pump_a, pump_b| CoupledPair {
            source,
            target,
            pump_a,
            pump_b,
        };
        match dim {
            2 => vec![pair(1, 2, 1, 2)],
            _ => vec![
                pair(1, 2, 1, 2),
                pair(2, 3, 1, 2),
                pair(3, 4, 1, 2),
                pair(1, 4, 2, 3),
            ],
        }
    }

    pub fn label(&self) -> String {
        format!(
            "s{}->s{} via p{},p{}",
            self.source, self.target, self.pump_a, self.pump_b
        )
    }
}

/// Effective nonlinearity κ = 2γ√(P_a·P_b) in rad per unit length.
pub fn effective_nonlinearity(gamma: f64, p_a: f64, p_b: f64) -> Result<f64, FiberError> {
    if !is_positive(gamma) {
        return Err(FiberError::NonPositiveGamma(gamma));
    }
    for p in [p_a, p_b] {
        if !is_nonnegative(p) {
            return Err(FiberError::NegativePower(p));
        }
    }
    Ok(2.0 * gamma * (p_a * p_b).sqrt())
}

/// Translation length λ_FT = π/(2κ).
pub fn translation_length(kappa: f64) -> Result<f64, FiberError> {
    if !is_positive(kappa) {
        return Err(FiberError::NonPositiveKappa(kappa));
    }
    Ok(PI / (2.0 * kappa))
}

fn check_energy_conservation(
    grid: &FrequencyGrid,
    signal_pair: (usize, usize),
    pump_pair: (usize, usize),
) -> Result<(), FiberError> {
    let (source, target) = signal_pair;
    let (pump_a, pump_b) = pump_pair;
    let signal_gap = grid.signal(target)? - grid.signal(source)?;
    let pump_gap = grid.pump(pump_b)? - grid.pump(pump_a)?;
    if (signal_gap - pump_gap).abs() > 1e-6 * grid.spacing() {
        return Err(FiberError::EnergyMismatch {
            signal_source: source,
            signal_target: target,
            pump_a,
            pump_b,
            signal_gap,
            pump_gap,
        });
    }
    Ok(())
}

/// Linear part of the wavevector imbalance,
/// Δβ = β_pb - β_pa + β_source - β_target.
fn dispersion_imbalance(
    profile: &DispersionProfile,
    grid: &FrequencyGrid,
    signal_pair: (usize, usize),
    pump_pair: (usize, usize),
) -> Result<f64, FiberError> {
    let beta_pa = profile.beta_at(grid.pump(pump_pair.0)?);
    let beta_pb = profile.beta_at(grid.pump(pump_pair.1)?);
    let beta_src = profile.beta_at(grid.signal(signal_pair.0)?);
    let beta_tgt = profile.beta_at(grid.signal(signal_pair.1)?);
    Ok(beta_pb - beta_pa + beta_src - beta_tgt)
}

/// Phase mismatch of one translation process,
/// `δ = (β_pb - β_pa + β_source - β_target + γ(P_a - P_b)) / 2` in rad/m.
///
/// `p_a` and `p_b` are the powers of the two pumps in `pump_pair`.
pub fn phase_mismatch(
    profile: &DispersionProfile,
    grid: &FrequencyGrid,
    gamma: f64,
    p_a: f64,
    p_b: f64,
    signal_pair: (usize, usize),
    pump_pair: (usize, usize),
) -> Result<f64, FiberError> {
    check_energy_conservation(grid, signal_pair, pump_pair)?;
    let delta_beta = dispersion_imbalance(profile, grid, signal_pair, pump_pair)?;
    Ok((delta_beta + gamma * (p_a - p_b)) / 2.0)
}

/// Split a total power budget across the two pumps of one process so that
/// its phase mismatch vanishes: `p_a = (budget - Δβ/γ)/2`, `p_b = budget - p_a`.
pub fn solve_pump_powers(
    profile: &DispersionProfile,
    grid: &FrequencyGrid,
    gamma: f64,
    total_power: f64,
    signal_pair: (usize, usize),
    pump_pair: (usize, usize),
) -> Result<(f64, f64), FiberError> {
    if !is_positive(gamma) {
        return Err(FiberError::NonPositiveGamma(gamma));
    }
    if !is_positive(total_power) {
        return Err(FiberError::NegativePower(total_power));
    }
    check_energy_conservation(grid, signal_pair, pump_pair)?;
    let delta_beta = dispersion_imbalance(profile, grid, signal_pair, pump_pair)?;
    let p_a = (total_power - delta_beta / gamma) / 2.0;
    let p_b = total_power - p_a;
    if p_a <= 0.0 || p_b <= 0.0 {
        return Err(FiberError::InfeasiblePumpSolve {
            delta_beta,
            budget: total_power,
        });
    }
    Ok((p_a, p_b))
}

// ---------------------------------------------------------------------------
// FiberParams
// ---------------------------------------------------------------------------

/// Derived design parameters of the translation stage. Pump 3 carries the
/// same power as pump 1 so that every ring jump shares one κ.
#[derive(Debug, Clone, Serialize)]
pub struct FiberParams {
    /// Nonlinear coefficient, 1/(W·m).
    pub gamma: f64,
    /// Pump powers, W.
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    /// Effective nonlinearity 2γ√(P₁P₂), rad/m.
    pub kappa: f64,
    /// Phase mismatch of the principal s1→s2 process, rad/m.
    pub delta: f64,
    /// Translation length π/(2κ), m.
    pub lambda_ft: f64,
}

impl FiberParams {
    pub fn derive(
        gamma: f64,
        p1: f64,
        p2: f64,
        profile: &DispersionProfile,
        grid: &FrequencyGrid,
    ) -> Result<Self, FiberError> {
        let kappa = effective_nonlinearity(gamma, p1, p2)?;
        let lambda_ft = translation_length(kappa)?;
        let delta = phase_mismatch(profile, grid, gamma, p1, p2, (1, 2), (1, 2))?;
        Ok(Self {
            gamma,
            p1,
            p2,
            p3: p1,
            kappa,
            delta,
            lambda_ft,
        })
    }

    /// Power of pump `k` (1-based).
    pub fn pump_power(&self, k: usize) -> Result<f64, FiberError> {
        match k {
            1 => Ok(self.p1),
            2 => Ok(self.p2),
            3 => Ok(self.p3),
            _ => Err(FiberError::PumpOutOfRange(k)),
        }
    }

    /// Phase mismatch of every enabled process for the given alphabet.
    pub fn mismatch_per_pair(
        &self,
        profile: &DispersionProfile,
        grid: &FrequencyGrid,
        dim: usize,
    ) -> Result<Vec<(CoupledPair, f64)>, FiberError> {
        CoupledPair::enabled(dim)
            .into_iter()
            .map(|pair| {
                let delta = phase_mismatch(
                    profile,
                    grid,
                    self.gamma,
                    self.pump_power(pair.pump_a)?,
                    self.pump_power(pair.pump_b)?,
                    (pair.source, pair.target),
                    (pair.pump_a, pair.pump_b),
                )?;
                Ok((pair, delta))
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Classical coupled-mode propagation
// ---------------------------------------------------------------------------

/// Complex signal envelopes A_s1..A_s4 in √W.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalEnvelope {
    pub amplitudes: [Complex64; 4],
}

impl ClassicalEnvelope {
    pub fn new(amplitudes: [Complex64; 4]) -> Self {
        Self { amplitudes }
    }

    /// Total power Σ|A_m|², conserved by the ring coupling.
    pub fn power(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }
}

fn ring_derivative(kappa: f64, a: &[Complex64; 4]) -> [Complex64; 4] {
    let ik = Complex64::new(0.0, kappa);
    std::array::from_fn(|m| ik * (a[(m + 3) % 4] + a[(m + 1) % 4]))
}

/// Step count giving the default resolution of one step per λ_FT/100.
pub fn default_step_count(kappa: f64, z: f64) -> usize {
    if kappa <= 0.0 || z <= 0.0 {
        return 1;
    }
    let lambda_ft = PI / (2.0 * kappa);
    ((z / (lambda_ft / 100.0)).ceil() as usize).max(1)
}

/// Integrate `i ∂A_m/∂z = -κ (A_{m-1} + A_{m+1})` (ring indexing) over
/// `[0, z]` with `step_count` fixed steps of the classic fourth-order
/// Runge-Kutta scheme. At the default resolution (z/step ≤ λ_FT/100) the
/// total power is conserved to better than 1e-8.
pub fn propagate_classical(
    env: &ClassicalEnvelope,
    kappa: f64,
    z: f64,
    step_count: usize,
) -> ClassicalEnvelope {
    assert!(step_count >= 1, "step_count must be >= 1");
    assert!(kappa >= 0.0, "kappa must be >= 0");
    let h = z / step_count as f64;
    let mut a = env.amplitudes;
    for _ in 0..step_count {
        let k1 = ring_derivative(kappa, &a);
        let mid1: [Complex64; 4] = std::array::from_fn(|m| a[m] + k1[m] * (h / 2.0));
        let k2 = ring_derivative(kappa, &mid1);
        let mid2: [Complex64; 4] = std::array::from_fn(|m| a[m] + k2[m] * (h / 2.0));
        let k3 = ring_derivative(kappa, &mid2);
        let end: [Complex64; 4] = std::array::from_fn(|m| a[m] + k3[m] * h);
        let k4 = ring_derivative(kappa, &end);
        a = std::array::from_fn(|m| {
            a[m] + (k1[m] + (k2[m] + k3[m]) * 2.0 + k4[m]) * (h / 6.0)
        });
    }
    ClassicalEnvelope::new(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn test_grid() -> FrequencyGrid {
        // abstract units: signals at 2,3,4,5 and pumps at 8,9,12
        FrequencyGrid::new(2.0, 1.0, 8.0).unwrap()
    }

    #[test]
    fn grid_layout_and_center() {
        let g = test_grid();
        assert_eq!(g.signal(4).unwrap(), 5.0);
        assert_eq!(g.pump(2).unwrap(), 9.0);
        assert_eq!(g.pump(3).unwrap(), 12.0);
        assert_eq!(g.center(), 3.5);
        assert_eq!(g.spacing(), 1.0);
    }

    #[test]
    fn grid_rejects_pump_inside_band() {
        let err = FrequencyGrid::new(2.0, 1.0, 3.5).unwrap_err();
        assert!(matches!(err, FiberError::PumpInsideSignalBand { index: 1, .. }));
        // pumps below the band are fine
        assert!(FrequencyGrid::new(10.0, 1.0, 2.0).is_ok());
    }

    #[test]
    fn grid_rejects_bad_spacing() {
        assert!(matches!(
            FrequencyGrid::new(2.0, 0.0, 8.0),
            Err(FiberError::NonPositiveSpacing(_))
        ));
    }

    #[test]
    fn kappa_formula() {
        // gamma in 1/(W·km), powers in W -> kappa in rad/km
        assert_eq!(effective_nonlinearity(10.0, 0.1, 0.1).unwrap(), 2.0);
        assert_eq!(effective_nonlinearity(10.0, 0.0, 0.1).unwrap(), 0.0);
        let k = effective_nonlinearity(2.0, 0.2, 0.05).unwrap();
        assert!((k - 0.4).abs() < 1e-15);
        assert!(effective_nonlinearity(0.0, 0.1, 0.1).is_err());
        assert!(effective_nonlinearity(1.0, -0.1, 0.1).is_err());
    }

    #[test]
    fn translation_length_formula() {
        assert!((translation_length(2.0).unwrap() - PI / 4.0).abs() < 1e-15);
        assert!((translation_length(PI / 2.0).unwrap() - 1.0).abs() < 1e-15);
        let l1 = translation_length(1.3).unwrap();
        let l2 = translation_length(2.6).unwrap();
        assert!((l1 / l2 - 2.0).abs() < 1e-12);
        assert!(matches!(
            translation_length(0.0),
            Err(FiberError::NonPositiveKappa(_))
        ));
    }

    #[test]
    fn flat_profile_equal_powers_is_matched() {
        let delta = phase_mismatch(
            &DispersionProfile::flat(4.8e6),
            &test_grid(),
            1.0,
            0.1,
            0.1,
            (1, 2),
            (1, 2),
        )
        .unwrap();
        assert_eq!(delta, 0.0);
    }

    #[test]
    fn hand_evaluated_mismatch() {
        // beta samples: s1 -> 0.9, s2 -> 1.0, p1 -> 1.0, p2 -> 1.3
        let grid = test_grid();
        let profile = DispersionProfile::fit_points(
            grid.center(),
            &[(2.0, 0.9), (3.0, 1.0), (8.0, 1.0), (9.0, 1.3)],
        );
        for (w, b) in [(2.0, 0.9), (3.0, 1.0), (8.0, 1.0), (9.0, 1.3)] {
            assert!((profile.beta_at(w) - b).abs() < 1e-12);
        }
        let delta = phase_mismatch(&profile, &grid, 1.0, 0.2, 0.1, (1, 2), (1, 2)).unwrap();
        assert!((delta - 0.15).abs() < 1e-12);
    }

    #[test]
    fn mismatch_rejects_energy_violation() {
        // s1 -> s3 spans 2δw, no pump pair provides that
        let err = phase_mismatch(
            &DispersionProfile::flat(0.0),
            &test_grid(),
            1.0,
            0.1,
            0.1,
            (1, 3),
            (1, 2),
        )
        .unwrap_err();
        assert!(matches!(err, FiberError::EnergyMismatch { .. }));
    }

    #[test]
    fn pump_solver_flat_profile_splits_evenly() {
        let (p1, p2) = solve_pump_powers(
            &DispersionProfile::flat(1.0),
            &test_grid(),
            1.0,
            0.2,
            (1, 2),
            (1, 2),
        )
        .unwrap();
        assert_eq!((p1, p2), (0.1, 0.1));
    }

    #[test]
    fn pump_solver_hand_check_and_postcondition() {
        // Δβ = 0.1 rad/m with gamma = 1, budget 0.4 -> (0.15, 0.25)
        let grid = test_grid();
        let profile = DispersionProfile::fit_points(
            grid.center(),
            &[(2.0, 1.0), (3.0, 1.0), (8.0, 1.0), (9.0, 1.1)],
        );
        let (p1, p2) =
            solve_pump_powers(&profile, &grid, 1.0, 0.4, (1, 2), (1, 2)).unwrap();
        assert!((p1 - 0.15).abs() < 1e-12);
        assert!((p2 - 0.25).abs() < 1e-12);
        let delta = phase_mismatch(&profile, &grid, 1.0, p1, p2, (1, 2), (1, 2)).unwrap();
        assert!(delta.abs() < 1e-12);
    }

    #[test]
    fn pump_solver_infeasible_budget() {
        let grid = test_grid();
        let profile = DispersionProfile::fit_points(
            grid.center(),
            &[(2.0, 1.0), (3.0, 1.0), (8.0, 1.0), (9.0, 2.0)],
        );
        let err = solve_pump_powers(&profile, &grid, 1.0, 0.5, (1, 2), (1, 2)).unwrap_err();
        assert!(matches!(err, FiberError::InfeasiblePumpSolve { .. }));
    }

    #[test]
    fn zero_kappa_leaves_envelope_unchanged() {
        let env = ClassicalEnvelope::new([
            Complex64::new(0.3, 0.1),
            Complex64::new(-0.2, 0.0),
            Complex64::ZERO,
            Complex64::new(0.0, 0.9),
        ]);
        let out = propagate_classical(&env, 0.0, 5.0, 10);
        assert_eq!(out, env);
    }

    #[test]
    fn fiber_params_derive() {
        let params = FiberParams::derive(
            0.01,
            0.1,
            0.1,
            &DispersionProfile::flat(4.8e6),
            &test_grid(),
        )
        .unwrap();
        assert!((params.kappa - 0.002).abs() < 1e-15);
        assert!((params.lambda_ft - PI / 0.004).abs() < 1e-9);
        assert_eq!(params.delta, 0.0);
        assert_eq!(params.p3, params.p1);
        let pairs = params
            .mismatch_per_pair(&DispersionProfile::flat(4.8e6), &test_grid(), 4)
            .unwrap();
        assert_eq!(pairs.len(), 4);
        assert!(pairs.iter().all(|(_, d)| d.abs() < 1e-12));
        assert_eq!(pairs[3].0.label(), "s1->s4 via p2,p3");
    }

    #[test]
    fn fit_points_reproduces_polynomial() {
        // beta(w) = 2 + 0.5 (w-3) - 0.25 (w-3)^2 sampled at three points
        let f = |w: f64| 2.0 + 0.5 * (w - 3.0) - 0.25 * (w - 3.0) * (w - 3.0);
        let profile =
            DispersionProfile::fit_points(3.0, &[(1.0, f(1.0)), (4.0, f(4.0)), (7.0, f(7.0))]);
        for w in [0.0, 2.5, 3.0, 5.5, 9.0] {
            assert!((profile.beta_at(w) - f(w)).abs() < 1e-12);
        }
    }
}
