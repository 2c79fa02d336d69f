//! Decoherence rates and observable-growth laws: single particles, particles
//! with localized bystander masses, and constant-density rigid bodies.

use crate::constants::{HBAR, PROTON_MASS};
use crate::error::{CollapseError, Result};
use crate::geometry::{BodyGeometry, Shape};
use crate::params::CollapseParams;
use crate::quadrature::{GaussLegendre, QuadratureConfig};
use crate::specfun;
use std::f64::consts::PI;

/// Γ_α(d) = λ_α (m/m₀)^{2α} [1 − e^{−α d²/(4 r_C²)}]  (s⁻¹).
///
/// Superposition separation `d` in meters; `m` is the particle mass.
pub fn single_particle_decoherence_rate(params: &CollapseParams, m: f64, d: f64) -> f64 {
    assert!(m > 0.0 && d >= 0.0, "requires m > 0 and d >= 0");
    let alpha = params.alpha();
    let r_c = params.r_c();
    let mass_factor = (m / PROTON_MASS).powf(2.0 * alpha);
    params.lambda() * mass_factor * (-(-alpha * d * d / (4.0 * r_c * r_c)).exp_m1())
}

/// Collapse-induced growth of ⟨q_j²⟩ and ⟨p_j²⟩ for one direction j:
///
///   Δ⟨q_j²⟩ = (α λ_α/r_C²)(m/m₀)^{2α} ħ² t³/(6 m²)    (m²)
///   Δ⟨p_j²⟩ = (α λ_α/r_C²)(m/m₀)^{2α} ħ² t/2          (kg² m² s⁻²)
pub fn quadratic_observable_growth(params: &CollapseParams, m: f64, t: f64) -> (f64, f64) {
    assert!(m > 0.0 && t >= 0.0, "requires m > 0 and t >= 0");
    let alpha = params.alpha();
    let r_c = params.r_c();
    let diffusion =
        alpha * params.lambda() / (r_c * r_c) * (m / PROTON_MASS).powf(2.0 * alpha) * HBAR * HBAR;
    (diffusion * t.powi(3) / (6.0 * m * m), diffusion * t / 2.0)
}

/// Momentum-variance growth rate d⟨p_j²⟩/dt = α λ_α (m/m₀)^{2α} ħ²/(2 r_C²).
pub fn momentum_diffusion_rate(params: &CollapseParams, m: f64) -> f64 {
    let alpha = params.alpha();
    let r_c = params.r_c();
    alpha * params.lambda() / (2.0 * r_c * r_c) * (m / PROTON_MASS).powf(2.0 * alpha) * HBAR * HBAR
}

/// A probe particle superposed between `x_p` and `y_p`, surrounded by
/// perfectly localized bystander point masses.
#[derive(Debug, Clone, PartialEq)]
pub struct BystanderConfig {
    /// Probe mass (kg).
    pub probe_mass: f64,
    /// First superposition branch position (m).
    pub x_p: [f64; 3],
    /// Second superposition branch position (m).
    pub y_p: [f64; 3],
    /// Bystanders as (mass kg, fixed position m).
    pub bystanders: Vec<(f64, [f64; 3])>,
}

impl BystanderConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.probe_mass.is_finite() || self.probe_mass <= 0.0 {
            return Err(CollapseError::domain("probe mass must be positive"));
        }
        if self.bystanders.len() > 8 {
            return Err(CollapseError::precondition(
                "at most 8 bystanders (3D quadrature feasibility)",
            ));
        }
        for (m, pos) in &self.bystanders {
            if !m.is_finite() || *m <= 0.0 {
                return Err(CollapseError::domain("bystander mass must be positive"));
            }
            if pos.iter().any(|c| !c.is_finite()) {
                return Err(CollapseError::domain("bystander position must be finite"));
            }
        }
        if self
            .x_p
            .iter()
            .chain(self.y_p.iter())
            .any(|c| !c.is_finite())
        {
            return Err(CollapseError::domain("probe positions must be finite"));
        }
        Ok(())
    }
}

/// Bystander-corrected decoherence rate with its quadrature error estimate.
#[derive(Debug, Clone, Copy)]
pub struct BystanderRate {
    /// Γ_α(x_p, y_p, {z_k}) (s⁻¹).
    pub value: f64,
    /// Absolute error estimate of the 3D quadrature (s⁻¹).
    pub quad_error: f64,
}

/// Γ_α(x_p, y_p, {z_k}) by 3D quadrature of
///
///   (γ_α/2m₀^{2α}) ∫ [ (m_p g(x_p−z) + Σ_k m_k g(z_k−z))^α
///                     −(m_p g(y_p−z) + Σ_k m_k g(z_k−z))^α ]² d³z.
///
/// Bystanders are delta-localized, which collapses the paper's 3N-dimensional
/// trace to this single integral. With no bystanders this reproduces
/// [`single_particle_decoherence_rate`]. Heavier bystanders near the probe
/// raise the rate for α > 1 and lower it for α < 1; α = 1 is insensitive.
pub fn bystander_decoherence_rate(
    cfg: &BystanderConfig,
    params: &CollapseParams,
    quad_cfg: &QuadratureConfig,
) -> Result<BystanderRate> {
    cfg.validate()?;
    quad_cfg.validate()?;

    let alpha = params.alpha();
    let r_c = params.r_c();

    // Work in units of r_C and masses of m₀; then
    //   Γ = λ (α/π)^{3/2} (1/2) ∫ [Ã^α − B̃^α]² d³u
    // with Ã, B̃ sums of O(1)-width Gaussians, which keeps every intermediate
    // quantity in a safe floating-point range for any α.
    let scale = |p: [f64; 3]| [p[0] / r_c, p[1] / r_c, p[2] / r_c];
    let xp = scale(cfg.x_p);
    let yp = scale(cfg.y_p);
    let m_p = cfg.probe_mass / PROTON_MASS;
    let others: Vec<(f64, [f64; 3])> = cfg
        .bystanders
        .iter()
        .map(|(m, p)| (*m / PROTON_MASS, scale(*p)))
        .collect();

    let gauss = |u: &[f64; 3], c: &[f64; 3]| {
        let d2 = (u[0] - c[0]).powi(2) + (u[1] - c[1]).powi(2) + (u[2] - c[2]).powi(2);
        (-0.5 * d2).exp()
    };
    let integrand = |u: [f64; 3]| {
        let mut a = m_p * gauss(&u, &xp);
        let mut b = m_p * gauss(&u, &yp);
        let mut background = 0.0;
        for (m, p) in &others {
            background += m * gauss(&u, p);
        }
        a += background;
        b += background;
        let diff = a.powf(alpha) - b.powf(alpha);
        diff * diff
    };

    // integration box: convex hull of all positions, padded by 10 r_C
    let pad = 10.0;
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for p in std::iter::once(&xp)
        .chain(std::iter::once(&yp))
        .chain(others.iter().map(|(_, p)| p))
    {
        for k in 0..3 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    for k in 0..3 {
        lo[k] -= pad;
        hi[k] += pad;
    }

    let coarse = tensor_integral_3d(&integrand, lo, hi, 2.0, 9);
    let fine = tensor_integral_3d(&integrand, lo, hi, 2.0, 13);

    let prefactor = params.lambda() * (alpha / PI).powf(1.5) * 0.5;
    let value = prefactor * fine;
    let quad_error = prefactor * (fine - coarse).abs();
    let tol = quad_cfg.abs_tol.max(quad_cfg.rel_tol * value.abs());
    if quad_error > tol.max(1e-8 * value.abs()) {
        return Err(CollapseError::Numeric {
            context: "bystander decoherence quadrature".into(),
            value,
            residual: quad_error,
        });
    }
    Ok(BystanderRate { value, quad_error })
}

/// Composite tensor-product Gauss–Legendre integral over a box, with panels
/// of width `panel` (same in each direction) and `n` nodes per panel.
fn tensor_integral_3d<F: Fn([f64; 3]) -> f64>(
    f: &F,
    lo: [f64; 3],
    hi: [f64; 3],
    panel: f64,
    n: usize,
) -> f64 {
    let rule = GaussLegendre::new(n);
    let mut axes: Vec<(Vec<f64>, Vec<f64>)> = Vec::with_capacity(3);
    for k in 0..3 {
        let span = hi[k] - lo[k];
        let panels = (span / panel).ceil() as usize;
        let h = span / panels as f64;
        let mut xs = Vec::with_capacity(panels * n);
        let mut ws = Vec::with_capacity(panels * n);
        for p in 0..panels {
            let c = lo[k] + (p as f64 + 0.5) * h;
            for (x, w) in rule.nodes.iter().zip(&rule.weights) {
                xs.push(c + 0.5 * h * x);
                ws.push(0.5 * h * w);
            }
        }
        axes.push((xs, ws));
    }
    let mut total = 0.0;
    for (i, &x0) in axes[0].0.iter().enumerate() {
        let w0 = axes[0].1[i];
        let mut plane = 0.0;
        for (j, &x1) in axes[1].0.iter().enumerate() {
            let w1 = axes[1].1[j];
            let mut line = 0.0;
            for (k, &x2) in axes[2].0.iter().enumerate() {
                line += axes[2].1[k] * f([x0, x1, x2]);
            }
            plane += w1 * line;
        }
        total += w0 * plane;
    }
    total
}

/// Per-axis surface integrals I_j = ∫_{∂V} n_j² dS. Their sum is the area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceIntegralResult {
    pub per_axis: [f64; 3],
}

impl SurfaceIntegralResult {
    pub fn total(&self) -> f64 {
        self.per_axis.iter().sum()
    }
}

/// ∫_{∂V} n_j²(x) dS for axis `j` ∈ {0, 1, 2} (m²), closed form per shape.
///
/// Parallelepiped faces ⊥ axis 3 give 2L₁L₂; a sphere splits its area evenly;
/// a cylinder (axis along 3) has n₃ = ±1 only on the two end caps.
pub fn surface_integral_nj2(geom: &BodyGeometry, j: usize) -> f64 {
    assert!(j < 3, "axis index must be 0, 1 or 2");
    surface_integrals(geom).per_axis[j]
}

/// All three I_j at once.
pub fn surface_integrals(geom: &BodyGeometry) -> SurfaceIntegralResult {
    let per_axis = match geom.shape() {
        Shape::Parallelepiped { l1, l2, l3 } => [2.0 * l2 * l3, 2.0 * l3 * l1, 2.0 * l1 * l2],
        Shape::Cube { side } => [2.0 * side * side; 3],
        Shape::Sphere { radius } => {
            let third = 4.0 * PI * radius * radius / 3.0;
            [third; 3]
        }
        Shape::Cylinder { radius, length } => {
            // side wall: ∫ n_1² dS = R L ∫ cos²φ dφ = π R L; caps: n₃ = ±1
            let side = PI * radius * length;
            [side, side, 2.0 * PI * radius * radius]
        }
    };
    SurfaceIntegralResult { per_axis }
}

/// Momentum-diffusion coefficient of a rigid body along axis `j`:
///
///   C_j = α² (μ₀/m₀)^{2α} G(α)/(2π r_C) ∫_{∂V} n_j² dS   (m⁻²)
///
/// Valid when every body dimension ≫ r_C (surface locally flat on the r_C
/// scale); callers can consult [`thin_body_warning`].
pub fn rigid_body_coefficient(
    geom: &BodyGeometry,
    params: &CollapseParams,
    j: usize,
    quad_cfg: &QuadratureConfig,
) -> Result<f64> {
    let alpha = params.alpha();
    let g = specfun::g_alpha_integral(alpha, quad_cfg)?;
    let density_factor = (geom.mu0() / PROTON_MASS).powf(2.0 * alpha);
    Ok(
        alpha * alpha * density_factor * g / (2.0 * PI * params.r_c())
            * surface_integral_nj2(geom, j),
    )
}

/// True when the rigid-body closed forms are outside their validity budget
/// (smallest body dimension below 10 r_C).
pub fn thin_body_warning(geom: &BodyGeometry, r_c: f64) -> bool {
    geom.min_dimension() < 10.0 * r_c
}

/// Collapse-induced growth of the center-of-mass observables of a rigid body.
#[derive(Debug, Clone, Copy)]
pub struct RigidBodyGrowth {
    /// Δ⟨Q²⟩ summed over the three directions (m²).
    pub delta_q2: f64,
    /// Δ⟨P²⟩ summed over the three directions (kg² m² s⁻²).
    pub delta_p2: f64,
    /// Energy gain rate d⟨P²/2M⟩/dt (W).
    pub energy_rate: f64,
    /// Set when the body is too thin for the locally-flat-surface closed forms.
    pub thin_body_warning: bool,
}

/// Growth laws in the area/volume form:
///
///   Δ⟨Q²⟩ = γ_α/(3μ₀²) (μ₀/m₀)^{2α} ħ²α²G(α)/(2π r_C) (A/V²) t³
///   Δ⟨P²⟩ = γ_α (μ₀/m₀)^{2α} ħ²α²G(α)/(2π r_C) A t
///   dE/dt = γ_α ħ²α²G(α)/(4π r_C m₀) (μ₀/m₀)^{2α−1} A/V
///
/// `mass` must equal μ₀V to 1e−9 relative.
pub fn rigid_body_growth(
    geom: &BodyGeometry,
    params: &CollapseParams,
    mass: f64,
    t: f64,
    quad_cfg: &QuadratureConfig,
) -> Result<RigidBodyGrowth> {
    if t < 0.0 {
        return Err(CollapseError::domain("time must be nonnegative"));
    }
    check_mass_consistency(geom, mass)?;
    let alpha = params.alpha();
    let r_c = params.r_c();
    let gamma = params.gamma();
    let g = specfun::g_alpha_integral(alpha, quad_cfg)?;
    let mu0 = geom.mu0();
    let a = geom.surface_area();
    let v = geom.volume();
    let density_factor = (mu0 / PROTON_MASS).powf(2.0 * alpha);
    let core = HBAR * HBAR * alpha * alpha * g / (2.0 * PI * r_c);

    let delta_q2 = gamma / (3.0 * mu0 * mu0) * density_factor * core * a / (v * v) * t.powi(3);
    let delta_p2 = gamma * density_factor * core * a * t;
    let energy_rate = gamma * HBAR * HBAR * alpha * alpha * g / (4.0 * PI * r_c * PROTON_MASS)
        * (mu0 / PROTON_MASS).powf(2.0 * alpha - 1.0)
        * a
        / v;

    Ok(RigidBodyGrowth {
        delta_q2,
        delta_p2,
        energy_rate,
        thin_body_warning: thin_body_warning(geom, r_c),
    })
}

/// Same growth laws assembled from the per-axis coefficients C_j:
/// Δ⟨P²⟩ = γ ħ² t ΣC_j, Δ⟨Q²⟩ = γ ħ² t³ ΣC_j/(3M²), dE/dt = γ ħ² ΣC_j/(2M).
/// Must agree with [`rigid_body_growth`] to 1e−10 relative.
pub fn rigid_body_growth_from_coefficients(
    geom: &BodyGeometry,
    params: &CollapseParams,
    mass: f64,
    t: f64,
    quad_cfg: &QuadratureConfig,
) -> Result<RigidBodyGrowth> {
    if t < 0.0 {
        return Err(CollapseError::domain("time must be nonnegative"));
    }
    check_mass_consistency(geom, mass)?;
    let gamma = params.gamma();
    let mut c_sum = 0.0;
    for j in 0..3 {
        c_sum += rigid_body_coefficient(geom, params, j, quad_cfg)?;
    }
    let m = geom.mass();
    Ok(RigidBodyGrowth {
        delta_q2: gamma * HBAR * HBAR * t.powi(3) * c_sum / (3.0 * m * m),
        delta_p2: gamma * HBAR * HBAR * t * c_sum,
        energy_rate: gamma * HBAR * HBAR * c_sum / (2.0 * m),
        thin_body_warning: thin_body_warning(geom, params.r_c()),
    })
}

fn check_mass_consistency(geom: &BodyGeometry, mass: f64) -> Result<()> {
    let expected = geom.mass();
    if (mass - expected).abs() > 1e-9 * expected {
        return Err(CollapseError::domain(format!(
            "mass {mass} inconsistent with μ₀V = {expected}"
        )));
    }
    Ok(())
}

/// Smeared mass density near a locally flat surface: μ₀ Φ(−d/r_C) (kg/m³),
/// with the signed distance d < 0 inside the body.
pub fn smeared_density_near_surface(d: f64, mu0: f64, r_c: f64) -> f64 {
    assert!(mu0 > 0.0 && r_c > 0.0, "requires mu0 > 0 and r_c > 0");
    mu0 * specfun::phi_cdf(-d / r_c)
}
