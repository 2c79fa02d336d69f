//! Property-based invariants across the library surface.

use collapse_core::bounds::{DetectorSpec, DiskSpec};
use collapse_core::constants::{ELEMENTARY_CHARGE, PROTON_MASS};
use collapse_core::params::{
    gamma_from_lambda, gaussian_kernel, lambda_from_gamma, CollapseParams,
};
use collapse_core::quadrature::{integrate, QuadratureConfig};
use collapse_core::{bounds, dynamics, radiation, specfun};
use proptest::prelude::*;
use std::f64::consts::PI;

fn log_uniform(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.ln()..hi.ln()).prop_map(f64::exp)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rate_conversion_round_trip(
        alpha in 0.4f64..3.0,
        r_c in log_uniform(1e-10, 1e-2),
        gamma in log_uniform(1e-60, 1e-10),
    ) {
        let lambda = lambda_from_gamma(gamma, alpha, r_c).unwrap();
        let back = gamma_from_lambda(lambda, alpha, r_c).unwrap();
        prop_assert!((back - gamma).abs() / gamma < 1e-12);
    }

    #[test]
    fn psl_rate_is_r_c_independent(r_c in log_uniform(1e-10, 1e-1)) {
        let lam = lambda_from_gamma(3.3e-18, 0.5, r_c).unwrap();
        prop_assert!((lam - 3.3e-18).abs() / 3.3e-18 < 1e-13);
    }

    #[test]
    fn decoherence_rate_monotone_and_bounded(
        alpha in 0.4f64..2.5,
        mass_ratio in 0.5f64..100.0,
        d1 in 0.0f64..2e-6,
        d2 in 0.0f64..2e-6,
    ) {
        let params = CollapseParams::from_lambda(alpha, 1e-7, 2.2e-17).unwrap();
        let m = mass_ratio * PROTON_MASS;
        let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        let g_lo = dynamics::single_particle_decoherence_rate(&params, m, lo);
        let g_hi = dynamics::single_particle_decoherence_rate(&params, m, hi);
        prop_assert!(g_lo <= g_hi * (1.0 + 1e-14));
        let cap = 2.2e-17 * mass_ratio.powf(2.0 * alpha);
        prop_assert!(g_hi <= cap * (1.0 + 1e-12));
    }

    #[test]
    fn kernel_even_symmetry(
        x in -5e-7f64..5e-7,
        y in -5e-7f64..5e-7,
        z in -5e-7f64..5e-7,
    ) {
        let a = gaussian_kernel([x, y, z], 1e-7);
        let b = gaussian_kernel([-x, -y, -z], 1e-7);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn circle_area_ratio_bounded_and_monotone(
        r_d in log_uniform(1e-6, 1e-2),
        d1 in 0.0f64..3.0,
        d2 in 0.0f64..3.0,
    ) {
        let full = 2.0 * PI * r_d * r_d;
        let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        let a_lo = specfun::circle_nonoverlap_area(lo * r_d, r_d);
        let a_hi = specfun::circle_nonoverlap_area(hi * r_d, r_d);
        prop_assert!((0.0..=full * (1.0 + 1e-14)).contains(&a_lo));
        prop_assert!(a_lo <= a_hi * (1.0 + 1e-14) + 1e-300);
    }

    #[test]
    fn emission_spectrum_is_pure_one_over_e(
        alpha in 0.4f64..2.5,
        e1 in log_uniform(1e-17, 1e-13),
        e2 in log_uniform(1e-17, 1e-13),
    ) {
        let params = CollapseParams::from_lambda(alpha, 1e-7, 2.2e-17).unwrap();
        let q = ELEMENTARY_CHARGE;
        let k1 = radiation::emission_rate_single(&params, PROTON_MASS, q, e1) * e1;
        let k2 = radiation::emission_rate_single(&params, PROTON_MASS, q, e2) * e2;
        prop_assert!((k1 - k2).abs() / k1 < 1e-12);
    }

    #[test]
    fn gw_noise_scales_linearly_in_lambda(
        alpha in 0.45f64..2.5,
        r_c in log_uniform(1e-8, 1.0),
        factor in 0.01f64..100.0,
    ) {
        let quad = QuadratureConfig::default();
        let det = DetectorSpec::lisa();
        let p1 = CollapseParams::from_lambda(alpha, r_c, 1e-17).unwrap();
        let p2 = CollapseParams::from_lambda(alpha, r_c, 1e-17 * factor).unwrap();
        let s1 = bounds::gw_force_noise(&det, &p1, &quad).unwrap();
        let s2 = bounds::gw_force_noise(&det, &p2, &quad).unwrap();
        prop_assert!((s2 / s1 - factor).abs() / factor < 1e-12);
    }

    #[test]
    fn phi_reflection(z in -20.0f64..20.0) {
        let lhs = specfun::phi_cdf(z);
        let rhs = 1.0 - specfun::phi_cdf(-z);
        prop_assert!((lhs - rhs).abs() < 1e-15);
    }

    #[test]
    fn f_s_nonnegative(a in 0.0f64..30.0, alpha in 0.4f64..2.5) {
        let v = specfun::f_s(a, alpha, &QuadratureConfig::default()).unwrap();
        prop_assert!(v >= -1e-15);
    }

    #[test]
    fn lower_bound_defines_unit_rate(
        alpha in 0.4f64..2.5,
        r_c in log_uniform(1e-9, 1e-3),
    ) {
        // Adler rate at λ_min and D = r_D equals 1/τ_D
        let disk = DiskSpec::default();
        let lam = bounds::theoretical_lower_bound(&disk, alpha, r_c);
        let params = CollapseParams::from_lambda(alpha, r_c, lam).unwrap();
        let rate = bounds::adler_effective_rate(&disk, &params);
        prop_assert!((rate * disk.tau_d - 1.0).abs() < 1e-12);
    }
}

#[test]
fn gaussian_kernel_normalized_within_8_r_c() {
    // 4π ∫₀^{8 r_C} r² g(r) dr = 1 − O(e⁻³²)
    let r_c = 1e-7;
    let cfg = QuadratureConfig::default();
    let radial = integrate(
        |r: f64| 4.0 * PI * r * r * gaussian_kernel([r, 0.0, 0.0], r_c),
        0.0,
        8.0 * r_c,
        &cfg,
    )
    .unwrap();
    assert!((radial.value - 1.0).abs() < 1e-8, "norm = {}", radial.value);
}

#[test]
fn bystander_rate_alpha_ordering_is_stable_under_probe_mass() {
    // the α ordering claim holds for a heavier probe too
    let quad = QuadratureConfig::default();
    let heavy = vec![(100.0 * PROTON_MASS, [0.0, 0.0, 0.0])];
    let m_p = 2.0 * PROTON_MASS;
    for (alpha, sign) in [(0.5, -1.0), (2.0, 1.0)] {
        let params = CollapseParams::from_lambda(alpha, 1e-7, 2.2e-17).unwrap();
        let cfg = dynamics::BystanderConfig {
            probe_mass: m_p,
            x_p: [2e-7, 0.0, 0.0],
            y_p: [-2e-7, 0.0, 0.0],
            bystanders: heavy.clone(),
        };
        let with = dynamics::bystander_decoherence_rate(&cfg, &params, &quad)
            .unwrap()
            .value;
        let without = dynamics::single_particle_decoherence_rate(&params, m_p, 4e-7);
        assert!(
            ((with - without) * sign) > 0.0,
            "alpha={alpha}: with={with:e} without={without:e}"
        );
    }
}

#[test]
fn circle_nonoverlap_area_against_monte_carlo_oracle() {
    // independent oracle: hit-or-miss estimate of the symmetric-difference
    // area of two unit-separated circles, 10⁷ samples, fixed stream
    use rand::SeedableRng;
    use rand_distr::{Distribution, Uniform};
    let r_d = 1.0;
    let d = r_d; // centers at (0,0) and (d,0)
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20260810);
    let (x_lo, x_hi) = (-r_d, d + r_d);
    let (y_lo, y_hi) = (-r_d, r_d);
    let ux = Uniform::new(x_lo, x_hi).unwrap();
    let uy = Uniform::new(y_lo, y_hi).unwrap();
    let n = 10_000_000usize;
    let mut hits = 0u64;
    for _ in 0..n {
        let x = ux.sample(&mut rng);
        let y = uy.sample(&mut rng);
        let in_a = x * x + y * y <= r_d * r_d;
        let in_b = (x - d) * (x - d) + y * y <= r_d * r_d;
        if in_a != in_b {
            hits += 1;
        }
    }
    let box_area = (x_hi - x_lo) * (y_hi - y_lo);
    let oracle = hits as f64 / n as f64 * box_area;
    let closed = specfun::circle_nonoverlap_area(d, r_d);
    assert!(
        (closed - oracle).abs() / closed < 1e-3,
        "closed {closed} vs MC {oracle}"
    );
}

#[test]
fn rigid_body_coefficient_alpha_one_matches_parallelepiped_form() {
    // C₃ at α = 1 reduces to the classic (μ₀/m₀)² √π/(2π r_C) · 2L₁L₂
    let quad = QuadratureConfig::default();
    let mu0 = 2650.0;
    let (l1, l2, l3) = (0.01, 0.02, 0.04);
    let geom = collapse_core::geometry::BodyGeometry::new(
        mu0,
        collapse_core::geometry::Shape::Parallelepiped { l1, l2, l3 },
    )
    .unwrap();
    let r_c = 1e-7;
    let params = CollapseParams::from_lambda(1.0, r_c, 2.2e-17).unwrap();
    let c3 = dynamics::rigid_body_coefficient(&geom, &params, 2, &quad).unwrap();
    let classic = (mu0 / PROTON_MASS).powi(2) * PI.sqrt() / (2.0 * PI * r_c) * 2.0 * l1 * l2;
    assert!(
        (c3 - classic).abs() / classic < 1e-10,
        "{c3:e} vs {classic:e}"
    );
}

#[test]
fn momentum_variance_independent_of_thread_count() {
    // the chunked trajectory reduction merges in fixed chunk order, so the
    // statistics must be bit-identical whatever the rayon pool size
    let params = CollapseParams::from_lambda(1.0, 1e-7, 2.2e-17).unwrap();
    let grid = collapse_core::montecarlo::NoiseGridConfig {
        n_trajectories: 1500,
        ..Default::default()
    };
    let times = [8.0, 32.0, 64.0];
    let baseline =
        collapse_core::montecarlo::momentum_variance(&params, PROTON_MASS, &grid, &times).unwrap();
    for threads in [2, 3] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        let stats = pool.install(|| {
            collapse_core::montecarlo::momentum_variance(&params, PROTON_MASS, &grid, &times)
                .unwrap()
        });
        assert_eq!(stats.variance, baseline.variance, "{threads} threads");
        assert_eq!(stats.mean, baseline.mean, "{threads} threads");
    }
}

#[test]
fn g2_disk_handles_strongly_oscillatory_ratio() {
    // r_D = 100 r_C: ~190 Bessel oscillations inside the Gaussian window
    let cfg = QuadratureConfig::default();
    let r_c = 1e-7;
    let r_d = 100.0 * r_c;
    let center = specfun::g2_disk(0.0, r_d, r_c, &cfg).unwrap();
    let expected_center = (1.0 - (-r_d * r_d / (2.0 * r_c * r_c)).exp()) / r_d;
    assert!((center - expected_center).abs() / expected_center < 1e-8);
    let rim = specfun::g2_disk(r_d, r_d, r_c, &cfg).unwrap();
    let expected_rim = (1.0 - specfun::bessel_i0_scaled((r_d / r_c).powi(2))) / (2.0 * r_d);
    assert!(
        (rim - expected_rim).abs() / expected_rim < 1e-8,
        "{rim:e} vs {expected_rim:e}"
    );
}
