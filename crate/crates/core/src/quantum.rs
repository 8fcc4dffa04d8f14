//! Single-photon frequency states and their evolution through the
//! frequency-translation stage.
//!
//! A photon occupying one of `d` signal frequencies (d = 2 for qubits,
//! d = 4 for qu-quarts) is described by a normalized complex amplitude
//! vector. Propagation through the nonlinear fiber applies
//! `U(z) = exp(i H z)`, where the generator `H` couples neighbouring
//! frequencies with the effective nonlinearity κ:
//!
//! - d = 2: `H = [[δ, κ], [κ, -δ]]` with phase mismatch δ; at δ = 0 the
//!   evolution is `[[cos κz, i sin κz], [i sin κz, cos κz]]`, so a full
//!   translation takes `κz = π/2` and the equal-superposition (φ basis)
//!   point sits at `κz = π/4`.
//! - d = 4: `H = κ A` with `A` the ring adjacency of the four frequencies
//!   (mode 5 ≡ mode 1); the propagator entries are `(cos 2κz ± 1)/2` and
//!   `(i sin 2κz)/2` in a circulant pattern, with the same translation
//!   length `λ_FT = π/(2κ)`.
//!
//! Matrices are returned literally: a full translation maps `|w_s1⟩` to
//! `i|w_s2⟩` (d = 2) and to `-|w_s3⟩` (d = 4). Protocol outcomes depend
//! only on squared magnitudes, so the global phases are kept rather than
//! stripped.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_4;
use thiserror::Error;

use crate::rng::UnitRandom;
use crate::EXACT_TOL;

/// Alphabet sizes supported by the scheme.
pub const SUPPORTED_DIMS: [usize; 2] = [2, 4];

#[derive(Debug, Error, PartialEq)]
pub enum QuantumError {
    #[error("dimension {0} not supported (must be 2 or 4)")]
    InvalidDimension(usize),
    #[error("state norm² = {0}, more than {EXACT_TOL} away from 1")]
    NotNormalized(f64),
    #[error("dimension mismatch: state has {state}, operator has {operator}")]
    DimensionMismatch { state: usize, operator: usize },
    #[error("mode index {mode} out of range 1..={dim}")]
    ModeOutOfRange { mode: usize, dim: usize },
    #[error("matrix is not unitary (defect {0:e})")]
    NotUnitary(f64),
    #[error("matrix is not Hermitian (defect {0:e})")]
    NotHermitian(f64),
}

fn check_dim(dim: usize) -> Result<(), QuantumError> {
    if SUPPORTED_DIMS.contains(&dim) {
        Ok(())
    } else {
        Err(QuantumError::InvalidDimension(dim))
    }
}

// ---------------------------------------------------------------------------
// FrequencyState
// ---------------------------------------------------------------------------

/// Normalized amplitude vector over the `d` signal-frequency modes.
///
/// Mode indices are 1-based (`1..=d`), matching the signal labels
/// w_s1..w_sd; entry `k-1` of the vector is the amplitude on mode `k`.
/// Equality is bitwise; tests comparing evolved states use tolerances.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyState {
    amplitudes: Vec<Complex64>,
}

impl FrequencyState {
    /// Build a state from explicit amplitudes, enforcing dim ∈ {2, 4} and
    /// unit norm within [`EXACT_TOL`].
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self, QuantumError> {
        check_dim(amplitudes.len())?;
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > EXACT_TOL {
            return Err(QuantumError::NotNormalized(norm_sqr));
        }
        Ok(Self { amplitudes })
    }

    /// The frequency eigenstate |w_s{mode}⟩ (mode is 1-based).
    pub fn standard(dim: usize, mode: usize) -> Result<Self, QuantumError> {
        check_dim(dim)?;
        if mode == 0 || mode > dim {
            return Err(QuantumError::ModeOutOfRange { mode, dim });
        }
        let mut amplitudes = vec![Complex64::ZERO; dim];
        amplitudes[mode - 1] = Complex64::ONE;
        Ok(Self { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Born probability of finding the photon at `mode` (1-based).
    pub fn probability(&self, mode: usize) -> f64 {
        self.amplitudes[mode - 1].norm_sqr()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Inner product ⟨self|other⟩.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

// ---------------------------------------------------------------------------
// UnitaryMatrix / HamiltonianMatrix
// ---------------------------------------------------------------------------

/// Dense dim×dim unitary, validated to U†U = I within [`EXACT_TOL`] at
/// construction.
#[derive(Debug, Clone)]
pub struct UnitaryMatrix {
    dim: usize,
    entries: Vec<Complex64>, // row-major
}

impl UnitaryMatrix {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self, QuantumError> {
        check_dim(dim)?;
        assert_eq!(entries.len(), dim * dim, "entry count must be dim²");
        let u = Self { dim, entries };
        let defect = u.unitarity_defect();
        if defect > EXACT_TOL {
            return Err(QuantumError::NotUnitary(defect));
        }
        Ok(u)
    }

    pub fn identity(dim: usize) -> Result<Self, QuantumError> {
        check_dim(dim)?;
        let mut entries = vec![Complex64::ZERO; dim * dim];
        for k in 0..dim {
            entries[k * dim + k] = Complex64::ONE;
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at row r, column c (0-based).
    pub fn entry(&self, r: usize, c: usize) -> Complex64 {
        self.entries[r * self.dim + c]
    }

    /// Column `c` (0-based) as a state; columns of a unitary are normalized.
    pub fn column_state(&self, c: usize) -> FrequencyState {
        let amplitudes = (0..self.dim).map(|r| self.entry(r, c)).collect();
        FrequencyState::new(amplitudes).expect("unitary columns are normalized")
    }

    pub fn apply(&self, amplitudes: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(amplitudes.len(), self.dim);
        (0..self.dim)
            .map(|r| {
                (0..self.dim)
                    .map(|c| self.entry(r, c) * amplitudes[c])
                    .sum()
            })
            .collect()
    }

    /// Largest elementwise deviation of U†U from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for r in 0..d {
            for c in 0..d {
                let mut s = Complex64::ZERO;
                for k in 0..d {
                    s += self.entry(k, r).conj() * self.entry(k, c);
                }
                let target = if r == c { Complex64::ONE } else { Complex64::ZERO };
                worst = worst.max((s - target).norm());
            }
        }
        worst
    }
}

/// Hermitian generator of the translation stage, in units of inverse length;
/// the propagator over a distance z is `exp(i H z)`.
#[derive(Debug, Clone)]
pub struct HamiltonianMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl HamiltonianMatrix {
    /// Two-mode generator `[[δ, κ], [κ, -δ]]`.
    pub fn qubit(delta: f64, kappa: f64) -> Self {
        let e = |x: f64| Complex64::new(x, 0.0);
        Self {
            dim: 2,
            entries: vec![e(delta), e(kappa), e(kappa), e(-delta)],
        }
    }

    /// Four-mode generator `κ A`, with `A` the ring adjacency of the
    /// signal frequencies (nearest neighbours modulo 4).
    pub fn ququart(kappa: f64) -> Self {
        let mut entries = vec![Complex64::ZERO; 16];
        for m in 0..4usize {
            for n in [(m + 1) % 4, (m + 3) % 4] {
                entries[m * 4 + n] = Complex64::new(kappa, 0.0);
            }
        }
        Self { dim: 4, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, r: usize, c: usize) -> Complex64 {
        self.entries[r * self.dim + c]
    }

    /// Largest elementwise deviation of H from H†.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in 0..self.dim {
                worst = worst.max((self.entry(r, c) - self.entry(c, r).conj()).norm());
            }
        }
        worst
    }
}

// ---------------------------------------------------------------------------
// Bases
// ---------------------------------------------------------------------------

/// The two mutually unbiased preparation/measurement bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    /// Frequency eigenbasis (send/measure the photon as emitted).
    Psi,
    /// Half-translation basis (insert a λ_FT/2 nonlinear-fiber stage).
    Phi,
}

impl std::fmt::Display for BasisKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BasisKind::Psi => write!(f, "psi"),
            BasisKind::Phi => write!(f, "phi"),
        }
    }
}

/// A basis kind together with the alphabet size it acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Basis {
    pub kind: BasisKind,
    pub dim: usize,
}

impl Basis {
    pub fn new(kind: BasisKind, dim: usize) -> Result<Self, QuantumError> {
        check_dim(dim)?;
        Ok(Self { kind, dim })
    }
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Two-mode propagator in the dimensionless parameters θ = κz and r = δ/κ.
///
/// With Ω = √(δ² + κ²) the closed form is
/// `U = cos(Ωz) I + i sin(Ωz)/√(1+r²) · [[r, 1], [1, -r]]`,
/// which at r = 0 reduces to `[[cos θ, i sin θ], [i sin θ, cos θ]]`.
pub fn qubit_unitary(theta: f64, delta_ratio: f64) -> UnitaryMatrix {
    let r = delta_ratio;
    let scale = (1.0 + r * r).sqrt();
    let omega_z = theta * scale;
    let c = Complex64::new(omega_z.cos(), 0.0);
    let is = Complex64::new(0.0, omega_z.sin() / scale);
    let entries = vec![c + is * r, is, is, c - is * r];
    UnitaryMatrix::new(2, entries).expect("closed form is unitary")
}

/// Four-mode propagator at θ = κz, assuming perfect phase matching inside
/// the qu-quart region: circulant with entries `(cos 2θ ± 1)/2` and
/// `(i sin 2θ)/2`.
pub fn ququart_unitary(theta: f64) -> UnitaryMatrix {
    let c_plus = Complex64::new((2.0 * theta).cos() + 1.0, 0.0) * 0.5;
    let c_minus = Complex64::new((2.0 * theta).cos() - 1.0, 0.0) * 0.5;
    let is = Complex64::new(0.0, (2.0 * theta).sin()) * 0.5;
    let first_row = [c_plus, is, c_minus, is];
    let mut entries = vec![Complex64::ZERO; 16];
    for r in 0..4 {
        for c in 0..4 {
            entries[r * 4 + c] = first_row[(c + 4 - r) % 4];
        }
    }
    UnitaryMatrix::new(4, entries).expect("closed form is unitary")
}

/// The half-translation stage (θ = π/4): the basis-change unitary whose
/// columns are the φ states.
pub fn half_translation(dim: usize) -> Result<UnitaryMatrix, QuantumError> {
    check_dim(dim)?;
    Ok(match dim {
        2 => qubit_unitary(FRAC_PI_4, 0.0),
        _ => ququart_unitary(FRAC_PI_4),
    })
}

/// Apply a unitary to a state; norm is preserved within [`EXACT_TOL`].
pub fn evolve(state: &FrequencyState, u: &UnitaryMatrix) -> Result<FrequencyState, QuantumError> {
    if state.dim() != u.dim() {
        return Err(QuantumError::DimensionMismatch {
            state: state.dim(),
            operator: u.dim(),
        });
    }
    FrequencyState::new(u.apply(state.amplitudes()))
}

/// The `dim` states of a basis: ψ returns the frequency eigenstates, φ the
/// columns of the half-translation unitary.
pub fn basis_states(basis: &Basis) -> Vec<FrequencyState> {
    match basis.kind {
        BasisKind::Psi => (1..=basis.dim)
            .map(|m| FrequencyState::standard(basis.dim, m).expect("valid mode"))
            .collect(),
        BasisKind::Phi => {
            let u = half_translation(basis.dim).expect("valid dim");
            (0..basis.dim).map(|c| u.column_state(c)).collect()
        }
    }
}

/// Born-rule frequency measurement: returns the 1-based mode index and the
/// collapsed eigenstate. Deterministic given the rng stream position.
pub fn measure_frequency<R: UnitRandom>(
    state: &FrequencyState,
    rng: &mut R,
) -> (usize, FrequencyState) {
    let dim = state.dim();
    let u = rng.next_unit();
    let mut cumulative = 0.0;
    let mut outcome = dim; // final bucket absorbs rounding residue
    for k in 1..=dim {
        cumulative += state.probability(k);
        if u <= cumulative {
            outcome = k;
            break;
        }
    }
    let collapsed = FrequencyState::standard(dim, outcome).expect("outcome in range");
    (outcome, collapsed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    struct FixedUnits(Vec<f64>, usize);
    impl UnitRandom for FixedUnits {
        fn next_unit(&mut self) -> f64 {
            let u = self.0[self.1 % self.0.len()];
            self.1 += 1;
            u
        }
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() <= EXACT_TOL
    }

    #[test]
    fn rejects_unsupported_dimensions() {
        assert_eq!(
            FrequencyState::new(vec![Complex64::ONE; 3].into_iter().map(|a| a / 3f64.sqrt()).collect()),
            Err(QuantumError::InvalidDimension(3))
        );
        assert!(matches!(
            FrequencyState::standard(5, 1),
            Err(QuantumError::InvalidDimension(5))
        ));
        assert!(half_translation(3).is_err());
    }

    #[test]
    fn rejects_unnormalized_amplitudes() {
        let err = FrequencyState::new(vec![Complex64::ONE, Complex64::ONE]);
        assert!(matches!(err, Err(QuantumError::NotNormalized(_))));
    }

    #[test]
    fn standard_state_mode_range() {
        assert!(FrequencyState::standard(2, 0).is_err());
        assert!(FrequencyState::standard(2, 3).is_err());
        let s = FrequencyState::standard(4, 2).unwrap();
        assert_eq!(s.probability(2), 1.0);
    }

    #[test]
    fn qubit_unitary_at_zero_is_identity() {
        for r in [-3.0, 0.0, 0.7] {
            let u = qubit_unitary(0.0, r);
            assert!(close(u.entry(0, 0), Complex64::ONE));
            assert!(close(u.entry(0, 1), Complex64::ZERO));
        }
    }

    #[test]
    fn qubit_half_translation_matches_equal_superposition() {
        let u = qubit_unitary(FRAC_PI_4, 0.0);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(u.entry(0, 0), Complex64::new(s, 0.0)));
        assert!(close(u.entry(0, 1), Complex64::new(0.0, s)));
        assert!(close(u.entry(1, 0), Complex64::new(0.0, s)));
        assert!(close(u.entry(1, 1), Complex64::new(s, 0.0)));
    }

    #[test]
    fn ququart_unitary_at_zero_is_identity() {
        let u = ququart_unitary(0.0);
        for r in 0..4 {
            for c in 0..4 {
                let want = if r == c { Complex64::ONE } else { Complex64::ZERO };
                assert!(close(u.entry(r, c), want));
            }
        }
    }

    #[test]
    fn ququart_full_translation_is_negated_swap() {
        let u = ququart_unitary(FRAC_PI_2);
        for c in 0..4 {
            for r in 0..4 {
                let want = if r == (c + 2) % 4 {
                    -Complex64::ONE
                } else {
                    Complex64::ZERO
                };
                assert!(close(u.entry(r, c), want), "entry ({r},{c})");
            }
        }
    }

    #[test]
    fn evolve_rejects_dimension_mismatch() {
        let s = FrequencyState::standard(4, 1).unwrap();
        let u = qubit_unitary(0.3, 0.0);
        assert_eq!(
            evolve(&s, &u),
            Err(QuantumError::DimensionMismatch {
                state: 4,
                operator: 2
            })
        );
    }

    #[test]
    fn evolve_by_identity_is_identity() {
        let s = evolve(
            &FrequencyState::standard(2, 1).unwrap(),
            &qubit_unitary(FRAC_PI_4, 0.0),
        )
        .unwrap();
        let id = UnitaryMatrix::identity(2).unwrap();
        let t = evolve(&s, &id).unwrap();
        for k in 0..2 {
            assert!(close(s.amplitudes()[k], t.amplitudes()[k]));
        }
    }

    #[test]
    fn measurement_of_eigenstate_is_certain() {
        let s = FrequencyState::standard(2, 2).unwrap();
        for u in [1e-9, 0.5, 1.0] {
            let (outcome, collapsed) = measure_frequency(&s, &mut FixedUnits(vec![u], 0));
            assert_eq!(outcome, 2);
            assert_eq!(collapsed.probability(2), 1.0);
        }
    }

    #[test]
    fn measurement_splits_superposition_at_half() {
        let phi1 = basis_states(&Basis::new(BasisKind::Phi, 2).unwrap())
            .remove(0);
        let (low, _) = measure_frequency(&phi1, &mut FixedUnits(vec![0.25], 0));
        let (high, _) = measure_frequency(&phi1, &mut FixedUnits(vec![0.75], 0));
        assert_eq!(low, 1);
        assert_eq!(high, 2);
    }

    #[test]
    fn hamiltonian_patterns() {
        let h2 = HamiltonianMatrix::qubit(0.3, 1.1);
        assert_eq!(h2.hermiticity_defect(), 0.0);
        assert!(close(h2.entry(0, 0), Complex64::new(0.3, 0.0)));
        assert!(close(h2.entry(1, 1), Complex64::new(-0.3, 0.0)));
        let h4 = HamiltonianMatrix::ququart(2.0);
        assert_eq!(h4.hermiticity_defect(), 0.0);
        for m in 0..4 {
            assert!(close(h4.entry(m, (m + 1) % 4), Complex64::new(2.0, 0.0)));
            assert!(close(h4.entry(m, (m + 2) % 4), Complex64::ZERO));
        }
    }

    #[test]
    fn unitary_constructor_rejects_non_unitary() {
        let bad = UnitaryMatrix::new(2, vec![Complex64::ONE; 4]);
        assert!(matches!(bad, Err(QuantumError::NotUnitary(_))));
    }
}
