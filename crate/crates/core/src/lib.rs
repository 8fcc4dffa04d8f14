//! Simulation and analysis toolkit for frequency-coded BB84 over quantum
//! frequency translation (four-wave-mixing Bragg scattering) in nonlinear fiber.
//!
//! A photon's frequency plays the role of the BB84 character: the ψ basis is
//! the set of signal-frequency eigenstates, and the φ basis is its image under
//! a half-length frequency translation. The crate has four layers:
//!
//! - [`quantum`]: single-photon frequency states for two- and four-frequency
//!   alphabets, the translation unitaries, and Born-rule measurement.
//! - [`fiber`]: the physical design parameters of the translation stage
//!   (effective nonlinearity κ, phase mismatch δ, translation length λ_FT,
//!   pump-power solutions) plus a classical coupled-mode propagator that
//!   serves as an independent cross-check of the quantum evolution.
//! - [`protocol`]: Alice/Bob/Eve state machines, sifting, and exact
//!   enumeration of intercept-resend error rates.
//! - [`session`]: a seeded, worker-count-independent Monte Carlo harness
//!   with transcript and report output.

pub mod exact;
pub mod fiber;
pub mod protocol;
pub mod quantum;
pub mod rng;
pub mod session;

/// Tolerance for identities that hold exactly in linear algebra
/// (unitarity, normalization, basis overlaps).
pub const EXACT_TOL: f64 = 1e-12;

/// Tolerance when comparing against an independent numerical oracle
/// (eigendecomposition, ODE integration uses its own documented bound).
pub const ORACLE_TOL: f64 = 1e-10;

pub use protocol::{ChannelModel, ErrorCondition, EveStrategy, PhotonRecord, Symbol};
pub use quantum::{Basis, BasisKind, FrequencyState, HamiltonianMatrix, UnitaryMatrix};
pub use session::{SessionConfig, SessionReport};
