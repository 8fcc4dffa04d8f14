//! Exact amplitude arithmetic for the half-translation algebra.
//!
//! Every state the protocol can produce at multiples of the half-translation
//! length has amplitudes of the form `(a + b·i)/√2^e` with Gaussian-integer
//! numerators, because the half-translation matrices have entries in
//! `{0, ±1, ±i}` over `√2` (d = 2) or over `2` (d = 4). Tracking the
//! numerator and the √2 exponent separately keeps Born weights exact dyadic
//! rationals, which is what lets attack error rates be enumerated with zero
//! tolerance and basis tables be printed as `1/√2`, `i/2`, … instead of
//! decimals.

use num_rational::Rational64;

/// Gaussian-integer numerator of an amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

impl GaussInt {
    pub const ZERO: GaussInt = GaussInt { re: 0, im: 0 };
    pub const ONE: GaussInt = GaussInt { re: 1, im: 0 };
    pub const I: GaussInt = GaussInt { re: 0, im: 1 };

    fn mul(self, other: GaussInt) -> GaussInt {
        GaussInt {
            re: self.re * other.re - self.im * other.im,
            im: self.re * other.im + self.im * other.re,
        }
    }

    fn add(self, other: GaussInt) -> GaussInt {
        GaussInt {
            re: self.re + other.re,
            im: self.im + other.im,
        }
    }

    fn conj(self) -> GaussInt {
        GaussInt {
            re: self.re,
            im: -self.im,
        }
    }

    fn norm_sqr(self) -> i64 {
        self.re * self.re + self.im * self.im
    }

    fn neg(self) -> GaussInt {
        GaussInt {
            re: -self.re,
            im: -self.im,
        }
    }
}

/// One amplitude `(re + im·i)/√2^half_pow`, for display and overlap tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactAmplitude {
    pub numerator: GaussInt,
    pub half_pow: u32,
}

impl std::fmt::Display for ExactAmplitude {
    /// Renders the radical annotations used throughout: `1`, `i/√2`,
    /// `-1/2`, `i/2`, `0`, …
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n = self.numerator;
        if n == GaussInt::ZERO {
            return write!(f, "0");
        }
        let num = match (n.re, n.im) {
            (1, 0) => "1".to_string(),
            (-1, 0) => "-1".to_string(),
            (0, 1) => "i".to_string(),
            (0, -1) => "-i".to_string(),
            (re, 0) => re.to_string(),
            (0, im) => format!("{im}i"),
            (re, im) if im < 0 => format!("({re}-{}i)", -im),
            (re, im) => format!("({re}+{im}i)"),
        };
        let den = match self.half_pow {
            0 => String::new(),
            1 => "/√2".to_string(),
            e if e % 2 == 0 => format!("/{}", 1i64 << (e / 2)),
            e => format!("/{}√2", 1i64 << (e / 2)),
        };
        write!(f, "{num}{den}")
    }
}

/// Amplitude vector with a shared √2 exponent: entry `k` equals
/// `amps[k]/√2^half_pow`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactState {
    amps: Vec<GaussInt>,
    half_pow: u32,
}

impl ExactState {
    /// Frequency eigenstate |w_s{mode}⟩ (1-based).
    pub fn standard(dim: usize, mode: usize) -> Self {
        assert!(mode >= 1 && mode <= dim);
        let mut amps = vec![GaussInt::ZERO; dim];
        amps[mode - 1] = GaussInt::ONE;
        Self { amps, half_pow: 0 }
    }

    /// φ state for `symbol` (0-based): column `symbol` of the exact
    /// half-translation matrix.
    pub fn phi(dim: usize, symbol: usize) -> Self {
        Self::standard(dim, symbol + 1).apply_half_translation()
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitude(&self, mode: usize) -> ExactAmplitude {
        ExactAmplitude {
            numerator: self.amps[mode - 1],
            half_pow: self.half_pow,
        }
    }

    /// Multiply by the exact half-translation matrix.
    ///
    /// d = 2: `[[1, i], [i, 1]]/√2`; d = 4: circulant of `(1, i, -1, i)/2`.
    pub fn apply_half_translation(&self) -> Self {
        let dim = self.dim();
        let (rows, extra_pow): (Vec<Vec<GaussInt>>, u32) = match dim {
            2 => (
                vec![
                    vec![GaussInt::ONE, GaussInt::I],
                    vec![GaussInt::I, GaussInt::ONE],
                ],
                1,
            ),
            4 => {
                let first = [GaussInt::ONE, GaussInt::I, GaussInt::ONE.neg(), GaussInt::I];
                (
                    (0..4)
                        .map(|r| (0..4).map(|c| first[(c + 4 - r) % 4]).collect())
                        .collect(),
                    2,
                )
            }
            _ => panic!("dimension {dim} not supported"),
        };
        let amps = rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&self.amps)
                    .fold(GaussInt::ZERO, |acc, (m, a)| acc.add(m.mul(*a)))
            })
            .collect();
        let mut state = Self {
            amps,
            half_pow: self.half_pow + extra_pow,
        };
        state.reduce();
        state
    }

    /// Cancel common factors of 2 against pairs of √2 in the denominator,
    /// so that e.g. a full translation of |w_s2⟩ reads `-1` and not `-4/4`.
    fn reduce(&mut self) {
        while self.half_pow >= 2
            && self.amps.iter().any(|a| *a != GaussInt::ZERO)
            && self.amps.iter().all(|a| a.re % 2 == 0 && a.im % 2 == 0)
        {
            for a in &mut self.amps {
                a.re /= 2;
                a.im /= 2;
            }
            self.half_pow -= 2;
        }
    }

    /// Exact Born probability of measuring `mode` (1-based).
    pub fn born_weight(&self, mode: usize) -> Rational64 {
        Rational64::new(self.amps[mode - 1].norm_sqr(), 1i64 << self.half_pow)
    }

    /// Exact |⟨self|other⟩|².
    pub fn overlap_sqr(&self, other: &Self) -> Rational64 {
        let ip = self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(GaussInt::ZERO, |acc, (a, b)| acc.add(a.conj().mul(*b)));
        Rational64::new(ip.norm_sqr(), 1i64 << (self.half_pow + other.half_pow))
    }
}
