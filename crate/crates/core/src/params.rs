//! Physical rates and truncation settings shared by every solver.
//!
//! All rates are in units of inverse time with ħ = 1; the natural choice is
//! to set λ₁ = 1 and read times as the scaled time λ₁t. The detuning is
//! defined as δ = ω₂ − ω and is kept consistent with the two frequencies.

use crate::error::{Error, Result};

/// Norm deviations at or below this are repaired by renormalizing; anything
/// larger is rejected as a bad input rather than silently fixed.
pub const NORM_SLACK: f64 = 1e-6;

pub const DEFAULT_N_MAX: usize = 15;
pub const DEFAULT_TOL: f64 = 1e-10;
const DEFAULT_OMEGA: f64 = 100.0;

/// Coupling rates, frequencies, and numerical settings for the two-atom,
/// one-mode model.
///
/// `lambda1` is the resonant (exchange) coupling of atom 1, `lambda2` the
/// effective dispersive rate of atom 2, `delta = omega2 - omega` the atom-2
/// detuning. `n_max` truncates the Fock ladder at |n_max⟩ and `tol` is the
/// tolerance used for invariant checks.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    pub lambda1: f64,
    pub lambda2: f64,
    pub delta: f64,
    pub omega: f64,
    pub omega2: f64,
    pub n_max: usize,
    pub tol: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            lambda1: 1.0,
            lambda2: 0.2,
            delta: 50.0,
            omega: DEFAULT_OMEGA,
            omega2: DEFAULT_OMEGA + 50.0,
            n_max: DEFAULT_N_MAX,
            tol: DEFAULT_TOL,
        }
    }
}

impl ModelParams {
    /// Build parameters from the three rates that the dynamics actually
    /// depends on; `omega` defaults to an arbitrary optical-scale value and
    /// `omega2` is set to keep `delta = omega2 - omega`.
    pub fn new(lambda1: f64, lambda2: f64, delta: f64) -> Result<Self> {
        Self {
            lambda1,
            lambda2,
            delta,
            omega: DEFAULT_OMEGA,
            omega2: DEFAULT_OMEGA + delta,
            ..Self::default()
        }
        .validated()
    }

    pub fn with_n_max(mut self, n_max: usize) -> Result<Self> {
        self.n_max = n_max;
        self.validated()
    }

    pub fn with_tol(mut self, tol: f64) -> Result<Self> {
        self.tol = tol;
        self.validated()
    }

    /// Set both frequencies; the detuning is recomputed as `omega2 - omega`.
    pub fn with_frequencies(mut self, omega: f64, omega2: f64) -> Result<Self> {
        self.omega = omega;
        self.omega2 = omega2;
        self.delta = omega2 - omega;
        self.validated()
    }

    /// Check all parameter invariants, returning `self` on success.
    pub fn validated(self) -> Result<Self> {
        if self.lambda1 <= 0.0 || !self.lambda1.is_finite() {
            return Err(Error::InvalidParameter {
                name: "lambda1",
                value: self.lambda1,
                constraint: "lambda1 > 0",
            });
        }
        if self.lambda2 < 0.0 || !self.lambda2.is_finite() {
            return Err(Error::InvalidParameter {
                name: "lambda2",
                value: self.lambda2,
                constraint: "lambda2 >= 0",
            });
        }
        if self.n_max < 1 {
            return Err(Error::InvalidParameter {
                name: "n_max",
                value: self.n_max as f64,
                constraint: "n_max >= 1",
            });
        }
        if self.tol <= 0.0 || !self.tol.is_finite() {
            return Err(Error::InvalidParameter {
                name: "tol",
                value: self.tol,
                constraint: "tol > 0",
            });
        }
        let expected = self.omega2 - self.omega;
        let scale = 1.0 + self.delta.abs().max(expected.abs());
        if (self.delta - expected).abs() > 1e-9 * scale {
            return Err(Error::InconsistentDetuning {
                delta: self.delta,
                expected,
            });
        }
        Ok(self)
    }

    /// Dimensionless coupling ratio Θ = λ₂ / (2λ₁).
    pub fn theta(&self) -> f64 {
        self.lambda2 / (2.0 * self.lambda1)
    }

    /// Dimension of the joint Hilbert space, 4(n_max + 1).
    pub fn dim(&self) -> usize {
        4 * (self.n_max + 1)
    }
}
