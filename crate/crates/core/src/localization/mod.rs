//! Variances and uncertainty products along a direction, on `ℝ^d` and on the
//! torus.

mod moments;
mod torus;

pub use moments::{
    catalog_moments, catalog_moments_on, moments, spectral_route, up_directional, up_gg,
    variance_a, variance_b, LocalizationReport, MomentSet, SpectralRoute,
};
pub use torus::{
    k_functional, m_functional, up_gg_periodic, up_periodic, PeriodicGgReport, PeriodicReport,
};
