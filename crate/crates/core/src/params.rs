//! Problem constants for a particle in the attractive `-β/r²` potential.
//!
//! The potential strength enters through the dimensionless combination
//! `beta_tilde = 2 m β / ħ²`. With that convention the radial similarity
//! equation reads `R'' + (2/ξ + iξ) R' + γ R / ξ² = 0` with
//! `γ = beta_tilde - ℓ(ℓ+1)` for any choice of `ħ` and `m`.

use thiserror::Error;

/// Similarity exponent of the collapse law `r ~ (-χt)^ν`.
pub const SIMILARITY_EXPONENT: f64 = 0.5;

/// Smallest coupling for which the radial problem collapses.
pub const CRITICAL_GAMMA: f64 = 0.25;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamsError {
    #[error("fall condition violated: gamma = {gamma} must exceed 1/4 (gamma = beta_tilde - l(l+1))")]
    FallConditionViolated { gamma: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Physical and derived constants of one collapse problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollapseParams {
    pub beta_tilde: f64,
    pub ell: u32,
    pub hbar: f64,
    pub mass: f64,
    /// `ħ/m`, length²/time.
    pub chi: f64,
    /// `beta_tilde - ℓ(ℓ+1)`.
    pub gamma: f64,
    /// `sqrt(4γ - 1)`.
    pub alpha: f64,
    pub nu: f64,
}

impl CollapseParams {
    pub fn new(beta_tilde: f64, ell: u32, hbar: f64, mass: f64) -> Result<Self, ParamsError> {
        derive_params(beta_tilde, ell, hbar, mass)
    }

    /// Parameters for a given `γ` in natural units (`ħ = m = 1`, `ℓ = 0`).
    pub fn from_gamma(gamma: f64) -> Result<Self, ParamsError> {
        derive_params(gamma, 0, 1.0, 1.0)
    }

    /// `ℓ(ℓ+1)`.
    pub fn centrifugal(&self) -> f64 {
        let l = f64::from(self.ell);
        l * (l + 1.0)
    }

    /// Length scale `sqrt(-χt)` (collapse, `t < 0`) or `sqrt(χt)` (escape, `t > 0`).
    pub fn length_scale(&self, t: f64) -> f64 {
        (self.chi * t.abs()).sqrt()
    }

    /// `ħ²/(2m)`.
    pub fn kinetic_prefactor(&self) -> f64 {
        self.hbar * self.hbar / (2.0 * self.mass)
    }
}

pub fn derive_params(beta_tilde: f64, ell: u32, hbar: f64, mass: f64) -> Result<CollapseParams, ParamsError> {
    if !beta_tilde.is_finite() {
        return Err(ParamsError::InvalidInput(format!("beta_tilde must be finite, got {beta_tilde}")));
    }
    if !(hbar.is_finite() && hbar > 0.0) {
        return Err(ParamsError::InvalidInput(format!("hbar must be finite and positive, got {hbar}")));
    }
    if !(mass.is_finite() && mass > 0.0) {
        return Err(ParamsError::InvalidInput(format!("mass must be finite and positive, got {mass}")));
    }
    let l = f64::from(ell);
    let gamma = beta_tilde - l * (l + 1.0);
    if gamma <= CRITICAL_GAMMA {
        return Err(ParamsError::FallConditionViolated { gamma });
    }
    Ok(CollapseParams {
        beta_tilde,
        ell,
        hbar,
        mass,
        chi: hbar / mass,
        gamma,
        alpha: (4.0 * gamma - 1.0).sqrt(),
        nu: SIMILARITY_EXPONENT,
    })
}

/// Classical fall criterion: `lim r²U(r) < -M²/(2m)` (strict).
pub fn classical_fall_allowed(limit_coeff: f64, angular_momentum: f64, mass: f64) -> Result<bool, ParamsError> {
    if !(limit_coeff.is_finite() && angular_momentum.is_finite() && mass.is_finite()) {
        return Err(ParamsError::InvalidInput("classical fall test needs finite inputs".into()));
    }
    if mass <= 0.0 {
        return Err(ParamsError::InvalidInput(format!("mass must be positive, got {mass}")));
    }
    Ok(limit_coeff < -angular_momentum * angular_momentum / (2.0 * mass))
}
