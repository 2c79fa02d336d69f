//! Adaptive one-dimensional quadrature on finite intervals.
//!
//! Each interval is estimated with an embedded Gauss–Legendre pair (7/15
//! nodes); the worst interval is bisected until the summed error estimate
//! meets the tolerance. Nodes and weights are generated once by Newton
//! iteration on the Legendre polynomials, so there are no literal abscissa
//! tables to transcribe.

use crate::error::{CollapseError, Result};
use std::collections::BinaryHeap;
use std::sync::OnceLock;

/// Tolerances and budgets for the adaptive integrators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Absolute tolerance on the integral.
    pub abs_tol: f64,
    /// Relative tolerance on the integral.
    pub rel_tol: f64,
    /// Maximum number of interval bisections before giving up.
    pub max_subdivisions: usize,
    /// Truncation of infinite domains, in units of the integrand's natural scale.
    pub infinite_domain_cutoff: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
            infinite_domain_cutoff: 12.0,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.abs_tol <= 0.0
            || self.rel_tol <= 0.0
            || self.abs_tol.is_nan()
            || self.rel_tol.is_nan()
        {
            return Err(CollapseError::domain(
                "quadrature tolerances must be positive",
            ));
        }
        if self.infinite_domain_cutoff < 8.0 {
            return Err(CollapseError::domain(
                "infinite_domain_cutoff must be at least 8",
            ));
        }
        if self.max_subdivisions == 0 {
            return Err(CollapseError::domain("max_subdivisions must be nonzero"));
        }
        Ok(())
    }
}

/// Integral value with its error estimate.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub abs_err: f64,
    pub subdivisions: usize,
}

/// A fixed Gauss–Legendre rule on [−1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes and weights by Newton iteration on P_n; accurate to ~1 ulp.
    pub fn new(n: usize) -> Self {
        assert!(n >= 2);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Chebyshev-like initial guess
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_and_derivative(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_and_derivative(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x.abs();
            nodes[n - 1 - i] = x.abs();
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    /// ∫_a^b f on a single panel.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64) -> f64 {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut sum = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            sum += w * f(c + h * x);
        }
        sum * h
    }
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn rule_low() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(7))
}

fn rule_high() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(15))
}

#[derive(Debug)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn estimate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let low = rule_low().integrate(f, a, b);
    let high = rule_high().integrate(f, a, b);
    Segment {
        a,
        b,
        value: high,
        err: (high - low).abs(),
    }
}

/// Adaptive integral of `f` over [a, b].
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    integrate_segmented(f, &[a, b], cfg)
}

/// Adaptive integral over [pts[0], pts[last]] with the interior points used
/// as initial subdivision seeds (put known peaks or kinks there).
pub fn integrate_segmented<F: Fn(f64) -> f64>(
    f: F,
    pts: &[f64],
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    cfg.validate()?;
    assert!(pts.len() >= 2, "need at least two breakpoints");
    assert!(
        pts.windows(2).all(|w| w[0] < w[1]),
        "breakpoints must be strictly increasing"
    );

    let mut heap = BinaryHeap::new();
    for w in pts.windows(2) {
        heap.push(estimate(&f, w[0], w[1]));
    }

    let mut subdivisions = 0usize;
    loop {
        let total: f64 = heap.iter().map(|s| s.value).sum();
        let err: f64 = heap.iter().map(|s| s.err).sum();
        let tol = cfg.abs_tol.max(cfg.rel_tol * total.abs());
        if err <= tol {
            return Ok(QuadResult {
                value: total,
                abs_err: err,
                subdivisions,
            });
        }
        if subdivisions >= cfg.max_subdivisions {
            return Err(CollapseError::Numeric {
                context: "adaptive quadrature".into(),
                value: total,
                residual: err,
            });
        }
        let worst = heap.pop().expect("heap never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval at floating-point resolution; keep its estimate
            let mut kept = worst;
            kept.err = 0.0;
            heap.push(kept);
            continue;
        }
        heap.push(estimate(&f, worst.a, mid));
        heap.push(estimate(&f, mid, worst.b));
        subdivisions += 1;
    }
}

/// Composite Gauss–Legendre over `panels` equal panels with an `n`-point rule.
/// Deterministic fixed-cost evaluation for smooth integrands.
pub fn composite_gl<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize, n: usize) -> f64 {
    let rule = GaussLegendre::new(n);
    let h = (b - a) / panels as f64;
    let mut sum = 0.0;
    for p in 0..panels {
        let pa = a + p as f64 * h;
        sum += rule.integrate(f, pa, pa + h);
    }
    sum
}
