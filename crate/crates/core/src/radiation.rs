//! Spontaneous photon emission rates dΓ/dE.
//!
//! The white-noise stochastic potential accelerates charged particles, which
//! radiate with a pure 1/E spectrum. Three regimes are covered: a single free
//! particle, a bulk body with r_C well below its size, and a bulk body with
//! r_C well above it. Protons within one nucleus emit coherently (charge Q_N
//! enters squared), electrons incoherently (N_e e² adds per atom); that
//! bookkeeping is baked into the N_P[Q_N² + N_e e²] factor.
//!
//! The 1/E infrared divergence is integrable in E·dΓ/dE and is left to
//! callers, who always work with finite energy bands.

use crate::constants::{ELEMENTARY_CHARGE, HBAR, PROTON_MASS, SPEED_OF_LIGHT, VACUUM_PERMITTIVITY};
use crate::error::{CollapseError, Result};
use crate::params::CollapseParams;
use std::f64::consts::PI;

/// A bulk emitting body.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmitterSpec {
    /// Number of atoms N_P.
    pub n_atoms: f64,
    /// Nuclear charge Q_N = Z e (C).
    pub nuclear_charge: f64,
    /// Electrons per atom participating in the emission.
    pub n_electrons: f64,
    /// Mass density μ₀ (kg/m³).
    pub density: f64,
    /// Total mass M (kg).
    pub total_mass: f64,
    /// Typical linear dimension D (m), used for regime validity checks.
    pub typical_dimension: f64,
}

impl EmitterSpec {
    pub fn validate(&self) -> Result<()> {
        for (v, name) in [
            (self.n_atoms, "n_atoms"),
            (self.nuclear_charge, "nuclear_charge"),
            (self.n_electrons, "n_electrons"),
            (self.density, "density"),
            (self.total_mass, "total_mass"),
            (self.typical_dimension, "typical_dimension"),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CollapseError::domain(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        let z = self.nuclear_charge / ELEMENTARY_CHARGE;
        if (z - z.round()).abs() > 1e-9 {
            return Err(CollapseError::domain(format!(
                "nuclear charge must be an integer multiple of e, got Z = {z}"
            )));
        }
        Ok(())
    }

    /// Combined coherence charge factor N_P [Q_N² + N_e e²] (C²).
    pub fn charge_factor(&self) -> f64 {
        self.n_atoms
            * (self.nuclear_charge * self.nuclear_charge
                + self.n_electrons * ELEMENTARY_CHARGE * ELEMENTARY_CHARGE)
    }

    /// True when r_C is safely inside the small-r_C bulk regime
    /// (r_C ≤ D/10 and above ~10 lattice spacings).
    pub fn small_rc_regime_ok(&self, r_c: f64) -> bool {
        r_c <= self.typical_dimension / 10.0 && r_c >= 5e-9
    }

    /// True when r_C is safely inside the large-r_C bulk regime (r_C ≥ 10 D).
    pub fn large_rc_regime_ok(&self, r_c: f64) -> bool {
        r_c >= 10.0 * self.typical_dimension
    }
}

// shared prefactor ħ/(4π² ε₀ m₀² r_C² c³) · λ/E
fn base_rate(params: &CollapseParams, energy: f64) -> f64 {
    let r_c = params.r_c();
    HBAR / (4.0
        * PI
        * PI
        * VACUUM_PERMITTIVITY
        * PROTON_MASS
        * PROTON_MASS
        * r_c
        * r_c
        * SPEED_OF_LIGHT.powi(3))
        * params.lambda()
        / energy
}

/// Emission rate density of a single free particle of mass `m`, charge `q`:
///
///   dΓ/dE = [(m/m₀)^{2α−2} α ħ q²/(4π² ε₀ m₀² r_C² c³)] λ_α/E   (s⁻¹ J⁻¹)
///
/// Independent of m exactly at α = 1.
pub fn emission_rate_single(params: &CollapseParams, m: f64, q: f64, energy: f64) -> f64 {
    assert!(energy > 0.0, "photon energy must be positive");
    assert!(m > 0.0, "mass must be positive");
    let alpha = params.alpha();
    (m / PROTON_MASS).powf(2.0 * alpha - 2.0) * alpha * q * q * base_rate(params, energy)
}

/// Bulk emission for r_C much smaller than the body:
///
///   dΓ/dE = [α^{7/2} (μ₀(√(2π) r_C)³/m₀)^{2α−2} ħ N_P(Q_N²+N_e e²)
///            /(4π² ε₀ m₀² r_C² c³)] λ_α/E   (s⁻¹ J⁻¹)
pub fn emission_rate_bulk_small_rc(
    spec: &EmitterSpec,
    params: &CollapseParams,
    energy: f64,
) -> f64 {
    assert!(energy > 0.0, "photon energy must be positive");
    let alpha = params.alpha();
    let r_c = params.r_c();
    let smear_mass = spec.density * ((2.0 * PI).sqrt() * r_c).powi(3) / PROTON_MASS;
    alpha.powf(3.5)
        * smear_mass.powf(2.0 * alpha - 2.0)
        * spec.charge_factor()
        * base_rate(params, energy)
}

/// Bulk emission for r_C much larger than the body: the single-particle law
/// with mass M and charge factor N_P(Q_N²+N_e e²):
///
///   dΓ/dE = [α (M/m₀)^{2α−2} ħ N_P(Q_N²+N_e e²)/(4π² ε₀ m₀² r_C² c³)] λ_α/E
pub fn emission_rate_bulk_large_rc(
    spec: &EmitterSpec,
    params: &CollapseParams,
    energy: f64,
) -> f64 {
    assert!(energy > 0.0, "photon energy must be positive");
    let alpha = params.alpha();
    alpha
        * (spec.total_mass / PROTON_MASS).powf(2.0 * alpha - 2.0)
        * spec.charge_factor()
        * base_rate(params, energy)
}

/// Photon number rate integrated over a finite band, ∫ dΓ/dE dE (s⁻¹).
pub fn band_photon_rate<F: Fn(f64) -> f64>(rate_density: F, band: (f64, f64)) -> Result<f64> {
    let (e1, e2) = band;
    if !(e2 > e1 && e1 > 0.0) {
        return Err(CollapseError::domain(format!(
            "need 0 < E1 < E2, got ({e1}, {e2})"
        )));
    }
    // dΓ/dE ∝ 1/E: E·(dΓ/dE) is constant, integrate exactly
    let k = rate_density(e1) * e1;
    Ok(k * (e2 / e1).ln())
}

/// Radiated power in a finite band, ∫ E (dΓ/dE) dE = K·(E2−E1) (W).
pub fn band_power<F: Fn(f64) -> f64>(rate_density: F, band: (f64, f64)) -> Result<f64> {
    let (e1, e2) = band;
    if !(e2 > e1 && e1 > 0.0) {
        return Err(CollapseError::domain(format!(
            "need 0 < E1 < E2, got ({e1}, {e2})"
        )));
    }
    Ok(rate_density(e1) * e1 * (e2 - e1))
}

/// The 44.1 kg germanium emitter (natural-abundance constants). `n_electrons`
/// is experiment-dependent and must be supplied by the caller.
pub fn germanium_emitter(n_electrons: f64) -> EmitterSpec {
    let total_mass = 44.1;
    let density = 5327.0;
    let atom_mass = 72.63 * 1.660_539_066_60e-27; // natural Ge, kg
    EmitterSpec {
        n_atoms: total_mass / atom_mass,
        nuclear_charge: 32.0 * ELEMENTARY_CHARGE,
        n_electrons,
        density,
        total_mass,
        typical_dimension: (total_mass / density).powf(1.0 / 3.0),
    }
}
