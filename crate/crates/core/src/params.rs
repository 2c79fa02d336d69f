//! Collapse-model parameters and the γ_α ↔ λ_α rate conversion.
//!
//! The master equation couples to ℳ^α(x)/m₀^α with strength γ_α
//! (units s⁻¹·m^(6α−3)). The equivalent single-nucleon localization rate is
//!
//!   λ_α = γ_α (π r_C²/α)^{3/2} / (2π r_C²)^{3α}   (s⁻¹),
//!
//! and for α = 1/2 the two coincide for every r_C. Parameters store whichever
//! form they were given in, so that the α = 1/2 r_C-independence is exact.

use crate::error::{CollapseError, Result};

/// Collapse rate in one of its two equivalent parameterizations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rate {
    /// Fundamental coupling γ_α (s⁻¹·m^(6α−3)).
    Gamma(f64),
    /// Single-nucleon localization rate λ_α (s⁻¹).
    Lambda(f64),
}

/// Parameters (α, r_C, rate) of a mass-density-power collapse model.
///
/// α = 1 is CSL, α = 1/2 is PSL.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollapseParams {
    alpha: f64,
    r_c: f64,
    rate: Rate,
}

impl CollapseParams {
    pub fn new(alpha: f64, r_c: f64, rate: Rate) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(CollapseError::domain(format!(
                "alpha must be positive and finite, got {alpha}"
            )));
        }
        if !r_c.is_finite() || r_c <= 0.0 {
            return Err(CollapseError::domain(format!(
                "r_c must be positive and finite, got {r_c}"
            )));
        }
        let raw = match rate {
            Rate::Gamma(g) => g,
            Rate::Lambda(l) => l,
        };
        if !raw.is_finite() || raw <= 0.0 {
            return Err(CollapseError::domain(format!(
                "collapse rate must be positive and finite, got {raw}"
            )));
        }
        Ok(CollapseParams { alpha, r_c, rate })
    }

    /// Convenience constructor from λ_α.
    pub fn from_lambda(alpha: f64, r_c: f64, lambda: f64) -> Result<Self> {
        Self::new(alpha, r_c, Rate::Lambda(lambda))
    }

    /// Convenience constructor from γ_α.
    pub fn from_gamma(alpha: f64, r_c: f64, gamma: f64) -> Result<Self> {
        Self::new(alpha, r_c, Rate::Gamma(gamma))
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn r_c(&self) -> f64 {
        self.r_c
    }

    pub fn rate(&self) -> Rate {
        self.rate
    }

    /// λ_α (s⁻¹), converting if the stored rate is γ_α.
    pub fn lambda(&self) -> f64 {
        match self.rate {
            Rate::Lambda(l) => l,
            Rate::Gamma(g) => conversion_factor(self.alpha, self.r_c) * g,
        }
    }

    /// γ_α (s⁻¹·m^(6α−3)), converting if the stored rate is λ_α.
    pub fn gamma(&self) -> f64 {
        match self.rate {
            Rate::Gamma(g) => g,
            Rate::Lambda(l) => l / conversion_factor(self.alpha, self.r_c),
        }
    }

    /// The same model with the rate scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let rate = match self.rate {
            Rate::Gamma(g) => Rate::Gamma(g * factor),
            Rate::Lambda(l) => Rate::Lambda(l * factor),
        };
        Self::new(self.alpha, self.r_c, rate)
    }
}

/// λ_α/γ_α = (π r_C²/α)^{3/2} / (2π r_C²)^{3α}.
fn conversion_factor(alpha: f64, r_c: f64) -> f64 {
    let rc2 = r_c * r_c;
    (std::f64::consts::PI * rc2 / alpha).powf(1.5)
        / (2.0 * std::f64::consts::PI * rc2).powf(3.0 * alpha)
}

/// λ_α = γ_α (π r_C²/α)^{3/2} / (2π r_C²)^{3α}.
pub fn lambda_from_gamma(gamma: f64, alpha: f64, r_c: f64) -> Result<f64> {
    check_conversion_args(gamma, alpha, r_c)?;
    Ok(gamma * conversion_factor(alpha, r_c))
}

/// Inverse of [`lambda_from_gamma`]; the round trip is the identity.
pub fn gamma_from_lambda(lambda: f64, alpha: f64, r_c: f64) -> Result<f64> {
    check_conversion_args(lambda, alpha, r_c)?;
    Ok(lambda / conversion_factor(alpha, r_c))
}

fn check_conversion_args(rate: f64, alpha: f64, r_c: f64) -> Result<()> {
    if !(rate > 0.0 && rate.is_finite()) {
        return Err(CollapseError::domain(format!(
            "rate must be positive and finite, got {rate}"
        )));
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(CollapseError::domain(format!(
            "alpha must be positive and finite, got {alpha}"
        )));
    }
    if !(r_c > 0.0 && r_c.is_finite()) {
        return Err(CollapseError::domain(format!(
            "r_c must be positive and finite, got {r_c}"
        )));
    }
    Ok(())
}

/// Smearing kernel g_{r_C}(x) = (2π r_C²)^{−3/2} exp[−|x|²/(2 r_C²)] (m⁻³).
///
/// Normalized: its integral over ℝ³ is 1.
pub fn gaussian_kernel(x: [f64; 3], r_c: f64) -> f64 {
    assert!(r_c > 0.0, "gaussian_kernel requires r_c > 0");
    let rc2 = r_c * r_c;
    let x2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    (2.0 * std::f64::consts::PI * rc2).powf(-1.5) * (-x2 / (2.0 * rc2)).exp()
}
