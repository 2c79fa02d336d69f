//! Physical constants (CODATA 2018), SI units throughout.
//!
//! All public APIs of this library take and return SI quantities; there is no
//! unit-checked wrapper layer. The reference mass of the collapse coupling is
//! the proton mass m₀.

/// Reduced Planck constant ħ (J·s).
pub const HBAR: f64 = 1.054_571_817e-34;

/// Speed of light in vacuum c (m/s).
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;

/// Vacuum permittivity ε₀ (F/m).
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;

/// Proton mass m₀ (kg).
pub const PROTON_MASS: f64 = 1.672_621_923_69e-27;

/// Elementary charge e (C).
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// The full constant set, immutable after construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// ħ (J·s)
    pub hbar: f64,
    /// c (m/s)
    pub c: f64,
    /// ε₀ (F/m)
    pub eps0: f64,
    /// m₀, proton mass (kg)
    pub m0: f64,
    /// e (C)
    pub e_charge: f64,
}

/// CODATA 2018 values.
pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
    hbar: HBAR,
    c: SPEED_OF_LIGHT,
    eps0: VACUUM_PERMITTIVITY,
    m0: PROTON_MASS,
    e_charge: ELEMENTARY_CHARGE,
};

impl Default for PhysicalConstants {
    fn default() -> Self {
        CODATA_2018
    }
}
