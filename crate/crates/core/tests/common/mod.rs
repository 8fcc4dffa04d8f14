//! Shared test oracles and comparison helpers.
//!
//! The matrix-exponential oracle here must stay independent of the library's
//! closed-form propagators: it diagonalizes the generator numerically and
//! exponentiates the eigenvalues, so agreement with the closed forms is a
//! genuine cross-check and not a tautology.

// compiled into several test binaries; not every binary uses every helper
#![allow(dead_code)]

use num_complex::Complex64;

use fqkd_core::quantum::{FrequencyState, HamiltonianMatrix, UnitaryMatrix};

/// `exp(i H z)` for a real-symmetric 2×2 generator, via eigendecomposition.
///
/// Eigenvalues come from the characteristic polynomial, eigenvectors from the
/// (b, λ₊ - a) kernel direction, and the exponential is assembled as
/// `Σ e^{iλz} v vᵀ`.
pub fn expm_i_hermitian_2x2(h: &HamiltonianMatrix, z: f64) -> [[Complex64; 2]; 2] {
    assert_eq!(h.dim(), 2);
    let a = h.entry(0, 0).re;
    let b = h.entry(0, 1).re;
    let d = h.entry(1, 1).re;
    assert!(
        h.entry(0, 0).im == 0.0 && h.entry(0, 1).im == 0.0,
        "oracle handles real-symmetric generators"
    );

    let mean = 0.5 * (a + d);
    let radius = f64::hypot(0.5 * (a - d), b);
    let lambda_plus = mean + radius;
    let lambda_minus = mean - radius;

    // unit eigenvector for λ₊
    let (vx, vy) = if b == 0.0 {
        if a >= d {
            (1.0, 0.0)
        } else {
            (0.0, 1.0)
        }
    } else {
        let norm = f64::hypot(b, lambda_plus - a);
        (b / norm, (lambda_plus - a) / norm)
    };
    // λ₋ eigenvector is the orthogonal complement
    let (wx, wy) = (-vy, vx);

    let phase_plus = Complex64::new(0.0, lambda_plus * z).exp();
    let phase_minus = Complex64::new(0.0, lambda_minus * z).exp();

    let outer = |x: f64, y: f64| [[x * x, x * y], [x * y, y * y]];
    let p_plus = outer(vx, vy);
    let p_minus = outer(wx, wy);

    let mut out = [[Complex64::ZERO; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = phase_plus * p_plus[r][c] + phase_minus * p_minus[r][c];
        }
    }
    out
}

/// Largest elementwise distance between a unitary and an oracle matrix.
pub fn max_entry_distance_2x2(u: &UnitaryMatrix, oracle: &[[Complex64; 2]; 2]) -> f64 {
    let mut worst = 0.0f64;
    for (r, row) in oracle.iter().enumerate() {
        for (c, want) in row.iter().enumerate() {
            worst = worst.max((u.entry(r, c) - want).norm());
        }
    }
    worst
}

/// Largest elementwise distance between two states' amplitude vectors.
pub fn state_distance(a: &FrequencyState, b: &FrequencyState) -> f64 {
    assert_eq!(a.dim(), b.dim());
    a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Largest elementwise distance between two unitaries.
pub fn unitary_distance(a: &UnitaryMatrix, b: &UnitaryMatrix) -> f64 {
    assert_eq!(a.dim(), b.dim());
    let mut worst = 0.0f64;
    for r in 0..a.dim() {
        for c in 0..a.dim() {
            worst = worst.max((a.entry(r, c) - b.entry(r, c)).norm());
        }
    }
    worst
}

/// Complex amplitude shorthand for expected-value tables.
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
