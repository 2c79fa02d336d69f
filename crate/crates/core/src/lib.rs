//! Phenomenology of mass-density-power spontaneous-collapse models.
//!
//! The collapse operator is ℳ^α(x)/m₀^α, where ℳ is the mass density smeared
//! with a Gaussian of width r_C; α = 1 is CSL and α = 1/2 is PSL. The crate
//! computes decoherence rates and observable-growth laws, spontaneous photon
//! emission rates, theoretical lower and experimental upper bounds on the
//! parameters (λ_α, r_C), and assembles exclusion regions. A Monte Carlo
//! module samples the white-noise stochastic force of the unitary unraveling
//! and serves as an independent oracle for the analytic rates.
//!
//! All quantities are SI; see [`constants`].

pub mod bounds;
pub mod constants;
pub mod dynamics;
pub mod error;
pub mod geometry;
pub mod montecarlo;
pub mod params;
pub mod quadrature;
pub mod radiation;
pub mod specfun;

pub use error::{CollapseError, Result};
pub use geometry::{BodyGeometry, Shape};
pub use params::{CollapseParams, Rate};
pub use quadrature::QuadratureConfig;
