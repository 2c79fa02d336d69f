//! Rigid-body geometry entering the collapse surface integrals.

use crate::error::{CollapseError, Result};

/// Analytic body shapes. The cylinder axis and the parallelepiped edge L₃ lie
/// along direction 3; cross-sections are taken perpendicular to that axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    Parallelepiped { l1: f64, l2: f64, l3: f64 },
    Cylinder { radius: f64, length: f64 },
    Cube { side: f64 },
    Sphere { radius: f64 },
}

impl Shape {
    fn dimensions(&self) -> Vec<f64> {
        match *self {
            Shape::Parallelepiped { l1, l2, l3 } => vec![l1, l2, l3],
            Shape::Cylinder { radius, length } => vec![2.0 * radius, length],
            Shape::Cube { side } => vec![side],
            Shape::Sphere { radius } => vec![2.0 * radius],
        }
    }
}

/// A constant-density rigid body: density μ₀ plus an analytic shape.
///
/// Volume, surface area and cross-section are derived from the shape, so the
/// identity A = Σ_j ∫ n_j² dS holds exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BodyGeometry {
    mu0: f64,
    shape: Shape,
}

impl BodyGeometry {
    pub fn new(mu0: f64, shape: Shape) -> Result<Self> {
        if !(mu0 > 0.0 && mu0.is_finite()) {
            return Err(CollapseError::domain(format!(
                "density must be positive, got {mu0}"
            )));
        }
        for d in shape.dimensions() {
            if !(d > 0.0 && d.is_finite()) {
                return Err(CollapseError::domain(format!(
                    "shape dimensions must be positive, got {d}"
                )));
            }
        }
        Ok(BodyGeometry { mu0, shape })
    }

    /// Mass density μ₀ (kg/m³).
    pub fn mu0(&self) -> f64 {
        self.mu0
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// V (m³).
    pub fn volume(&self) -> f64 {
        use std::f64::consts::PI;
        match self.shape {
            Shape::Parallelepiped { l1, l2, l3 } => l1 * l2 * l3,
            Shape::Cylinder { radius, length } => PI * radius * radius * length,
            Shape::Cube { side } => side.powi(3),
            Shape::Sphere { radius } => 4.0 / 3.0 * PI * radius.powi(3),
        }
    }

    /// Surface area A (m²).
    pub fn surface_area(&self) -> f64 {
        use std::f64::consts::PI;
        match self.shape {
            Shape::Parallelepiped { l1, l2, l3 } => 2.0 * (l1 * l2 + l2 * l3 + l3 * l1),
            Shape::Cylinder { radius, length } => 2.0 * PI * radius * (radius + length),
            Shape::Cube { side } => 6.0 * side * side,
            Shape::Sphere { radius } => 4.0 * PI * radius * radius,
        }
    }

    /// Cross-section A_P (m²) perpendicular to direction 3.
    pub fn cross_section(&self) -> f64 {
        use std::f64::consts::PI;
        match self.shape {
            Shape::Parallelepiped { l1, l2, .. } => l1 * l2,
            Shape::Cylinder { radius, .. } => PI * radius * radius,
            Shape::Cube { side } => side * side,
            Shape::Sphere { radius } => PI * radius * radius,
        }
    }

    /// Total mass M = μ₀ V (kg).
    pub fn mass(&self) -> f64 {
        self.mu0 * self.volume()
    }

    /// Smallest linear dimension; rigid-body formulas assume this ≫ r_C.
    pub fn min_dimension(&self) -> f64 {
        self.shape
            .dimensions()
            .into_iter()
            .fold(f64::INFINITY, f64::min)
    }
}
