//! BB84 state machines for the frequency-coded scheme: Alice's preparation,
//! the intercept-resend eavesdropper, Bob's measurement, sifting, and exact
//! enumeration of attack error rates.
//!
//! Symbols map to frequencies as symbol k ↔ mode k+1 (so w_s1 carries
//! symbol 0), uniformly for both alphabet sizes. In the φ basis a matched
//! send/receive pair concatenates two half-translations into a full one, so
//! Bob's frequency is a fixed permutation of Alice's (swapped modes for
//! qubits, modes shifted by two for qu-quarts) and [`decode`] inverts that
//! permutation.

use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::ExactState;
use crate::quantum::{
    evolve, half_translation, measure_frequency, Basis, BasisKind, FrequencyState, QuantumError,
};
use crate::rng::RoundRng;

#[derive(Debug, Error, PartialEq)]
pub enum ProtocolError {
    #[error("symbol {symbol} out of range for a {dim}-character alphabet")]
    SymbolOutOfRange { symbol: usize, dim: usize },
    #[error("outcome {outcome} out of range 1..={dim}")]
    OutcomeOutOfRange { outcome: usize, dim: usize },
    #[error("{name} = {value} is not a probability in [0, 1]")]
    InvalidProbability { name: &'static str, value: f64 },
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}

/// A transmitted character: an integer in `[0, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Symbol(pub usize);

impl Symbol {
    pub fn value(self) -> usize {
        self.0
    }
}

/// Eavesdropper behaviour on the channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EveStrategy {
    /// No eavesdropper.
    None,
    /// Read the photon frequency, resend a photon at the measured frequency.
    InterceptResendPsi,
    /// Pick ψ or φ with probability ½, measure in it, resend the measured
    /// basis state. Not part of the frequency-reading attack; included for
    /// comparison with the textbook intercept-resend analysis.
    InterceptResendRandomBasis,
}

impl std::fmt::Display for EveStrategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            EveStrategy::None => "none",
            EveStrategy::InterceptResendPsi => "intercept-resend-psi",
            EveStrategy::InterceptResendRandomBasis => "intercept-resend-random-basis",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for EveStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(EveStrategy::None),
            "intercept-resend-psi" => Ok(EveStrategy::InterceptResendPsi),
            "intercept-resend-random-basis" => Ok(EveStrategy::InterceptResendRandomBasis),
            _ => Err(format!(
                "unknown eavesdropper strategy '{s}' (expected none, \
                 intercept-resend-psi or intercept-resend-random-basis)"
            )),
        }
    }
}

/// Loss model of the quantum channel. The analysis in the qu-quart scheme is
/// loss-free; survival < 1 and dark counts exist for realistic sweeps.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ChannelModel {
    pub survival_probability: f64,
    #[serde(default)]
    pub dark_count_probability: f64,
}

impl Default for ChannelModel {
    fn default() -> Self {
        Self {
            survival_probability: 1.0,
            dark_count_probability: 0.0,
        }
    }
}

impl ChannelModel {
    pub fn validate(&self) -> Result<(), ProtocolError> {
        for (name, value) in [
            ("survival_probability", self.survival_probability),
            ("dark_count_probability", self.dark_count_probability),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(ProtocolError::InvalidProbability { name, value });
            }
        }
        Ok(())
    }
}

/// Transcript of one protocol round.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhotonRecord {
    pub index: u64,
    pub alice_symbol: Symbol,
    pub alice_basis: BasisKind,
    pub eve_acted: bool,
    pub eve_outcome: Option<usize>,
    pub lost: bool,
    pub bob_basis: BasisKind,
    pub bob_outcome: Option<usize>,
    pub bob_symbol: Option<Symbol>,
    pub sifted: bool,
    pub error: Option<bool>,
}

// ---------------------------------------------------------------------------
// Round operations
// ---------------------------------------------------------------------------

/// Alice's preparation: emit the frequency eigenstate for the symbol, and for
/// the φ basis run it through the λ_FT/2 nonlinear-fiber branch.
pub fn alice_prepare(symbol: Symbol, basis: Basis) -> Result<FrequencyState, ProtocolError> {
    if symbol.value() >= basis.dim {
        return Err(ProtocolError::SymbolOutOfRange {
            symbol: symbol.value(),
            dim: basis.dim,
        });
    }
    let state = FrequencyState::standard(basis.dim, symbol.value() + 1)?;
    match basis.kind {
        BasisKind::Psi => Ok(state),
        BasisKind::Phi => Ok(evolve(&state, &half_translation(basis.dim)?)?),
    }
}

/// What the eavesdropper left on the channel.
#[derive(Debug, Clone)]
pub struct EveAction {
    pub state: FrequencyState,
    /// Frequency she read, if she measured.
    pub outcome: Option<usize>,
}

/// Apply the eavesdropper to the in-flight state.
pub fn eve_act(state: FrequencyState, strategy: EveStrategy, rng: &mut RoundRng) -> EveAction {
    match strategy {
        EveStrategy::None => EveAction {
            state,
            outcome: None,
        },
        EveStrategy::InterceptResendPsi => {
            let (outcome, collapsed) = measure_frequency(&state, rng);
            EveAction {
                state: collapsed,
                outcome: Some(outcome),
            }
        }
        EveStrategy::InterceptResendRandomBasis => {
            let dim = state.dim();
            if rng.bernoulli(0.5) {
                let (outcome, collapsed) = measure_frequency(&state, rng);
                EveAction {
                    state: collapsed,
                    outcome: Some(outcome),
                }
            } else {
                // φ measurement: half-translate, read the frequency, resend
                // the φ state that would have produced that reading.
                let u = half_translation(dim).expect("state dim is valid");
                let rotated = evolve(&state, &u).expect("dims match");
                let (outcome, _) = measure_frequency(&rotated, rng);
                let phi = Basis::new(BasisKind::Phi, dim).expect("state dim is valid");
                let resent = alice_prepare(Symbol(decode_index(outcome, BasisKind::Phi, dim)), phi)
                    .expect("decoded symbol is in range");
                EveAction {
                    state: resent,
                    outcome: Some(outcome),
                }
            }
        }
    }
}

/// Bob's measurement: for the φ basis the photon first traverses his
/// λ_FT/2 nonlinear-fiber branch, then hits the frequency-resolving
/// detectors. Returns the 1-based detector index.
pub fn bob_measure(
    state: &FrequencyState,
    basis: Basis,
    rng: &mut RoundRng,
) -> Result<usize, ProtocolError> {
    let received = match basis.kind {
        BasisKind::Psi => state.clone(),
        BasisKind::Phi => evolve(state, &half_translation(basis.dim)?)?,
    };
    Ok(measure_frequency(&received, rng).0)
}

/// Symbol for a measured frequency, 0-based: identity in ψ; in φ the inverse
/// of the full-translation permutation (swap for d = 2, shift by d/2 for
/// d = 4, which coincide).
fn decode_index(outcome: usize, kind: BasisKind, dim: usize) -> usize {
    match kind {
        BasisKind::Psi => outcome - 1,
        BasisKind::Phi => (outcome - 1 + dim / 2) % dim,
    }
}

/// Map Bob's detector index back to the transmitted symbol.
pub fn decode(outcome: usize, basis: Basis) -> Result<Symbol, ProtocolError> {
    if outcome == 0 || outcome > basis.dim {
        return Err(ProtocolError::OutcomeOutOfRange {
            outcome,
            dim: basis.dim,
        });
    }
    Ok(Symbol(decode_index(outcome, basis.kind, basis.dim)))
}

/// Fill the sift and error flags of one record: a round survives sifting when
/// the photon arrived, both parties used the same basis, and Bob has an
/// outcome; the reading of a discarded round carries no information.
pub fn sift_record(record: &mut PhotonRecord) {
    record.sifted =
        !record.lost && record.alice_basis == record.bob_basis && record.bob_outcome.is_some();
    record.error = if record.sifted {
        Some(record.bob_symbol != Some(record.alice_symbol))
    } else {
        None
    };
}

/// Sift a whole transcript in place.
pub fn sift(records: &mut [PhotonRecord]) {
    for record in records {
        sift_record(record);
    }
}

// ---------------------------------------------------------------------------
// Exact attack analysis
// ---------------------------------------------------------------------------

/// Which sifted rounds the error rate is conditioned on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorCondition {
    /// All sifted rounds (fair ½/½ basis choice on both sides).
    AllSifted,
    /// Only sifted rounds where both parties chose φ.
    PhiOnly,
}

impl std::str::FromStr for ErrorCondition {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" | "all-sifted" => Ok(ErrorCondition::AllSifted),
            "phi-only" => Ok(ErrorCondition::PhiOnly),
            _ => Err(format!(
                "unknown condition '{s}' (expected all or phi-only)"
            )),
        }
    }
}

fn prepare_exact(kind: BasisKind, symbol: usize, dim: usize) -> ExactState {
    match kind {
        BasisKind::Psi => ExactState::standard(dim, symbol + 1),
        BasisKind::Phi => ExactState::phi(dim, symbol),
    }
}

/// The eavesdropper's branches: (probability, state left on the channel).
fn eve_branches(
    prepared: &ExactState,
    strategy: EveStrategy,
    dim: usize,
) -> Vec<(Rational64, ExactState)> {
    let half = Rational64::new(1, 2);
    match strategy {
        EveStrategy::None => vec![(Rational64::new(1, 1), prepared.clone())],
        EveStrategy::InterceptResendPsi => (1..=dim)
            .filter_map(|m| {
                let p = prepared.born_weight(m);
                (!p.is_zero()).then(|| (p, ExactState::standard(dim, m)))
            })
            .collect(),
        EveStrategy::InterceptResendRandomBasis => {
            let mut branches: Vec<(Rational64, ExactState)> = (1..=dim)
                .filter_map(|m| {
                    let p = prepared.born_weight(m);
                    (!p.is_zero()).then(|| (half * p, ExactState::standard(dim, m)))
                })
                .collect();
            let rotated = prepared.apply_half_translation();
            branches.extend((1..=dim).filter_map(|m| {
                let p = rotated.born_weight(m);
                (!p.is_zero()).then(|| {
                    (
                        half * p,
                        ExactState::phi(dim, decode_index(m, BasisKind::Phi, dim)),
                    )
                })
            }));
            branches
        }
    }
}

/// Exact sifted error rate under the given attack, by enumerating
/// (Alice basis, Alice symbol, Eve outcome, Bob outcome) with exact Born
/// weights. No sampling is involved; the result is an exact fraction.
pub fn exact_error_rate(dim: usize, strategy: EveStrategy, condition: ErrorCondition) -> Rational64 {
    assert!(dim == 2 || dim == 4, "dimension must be 2 or 4");
    let symbol_weight = Rational64::new(1, dim as i64);
    let mut error_weight = Rational64::zero();
    let mut sifted_weight = Rational64::zero();
    for kind in [BasisKind::Psi, BasisKind::Phi] {
        if condition == ErrorCondition::PhiOnly && kind != BasisKind::Phi {
            continue;
        }
        // Equal weight on the two (basis, matching-bob-basis) events; the
        // common factor cancels in the conditional rate.
        for symbol in 0..dim {
            let prepared = prepare_exact(kind, symbol, dim);
            for (eve_weight, resent) in eve_branches(&prepared, strategy, dim) {
                let at_bob = match kind {
                    BasisKind::Psi => resent,
                    BasisKind::Phi => resent.apply_half_translation(),
                };
                for outcome in 1..=dim {
                    let born = at_bob.born_weight(outcome);
                    if born.is_zero() {
                        continue;
                    }
                    let weight = symbol_weight * eve_weight * born;
                    sifted_weight += weight;
                    if decode_index(outcome, kind, dim) != symbol {
                        error_weight += weight;
                    }
                }
            }
        }
    }
    error_weight / sifted_weight
}
