use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::functions::{CatalogFunction, Direction};
use crate::numerics::{continuous_ft, Grid, MatrixSym, SampledFunction};

const TWO_PI_SQ: f64 = 4.0 * PI * PI;

/// Zeroth, first and second moments of `|f|²` and `|f̂|²`, unnormalized.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSet {
    /// `‖f‖₂²`.
    pub norm_sq: f64,
    /// `∫ x_k |f|²`.
    pub mean_time: Vec<f64>,
    /// `∫ ξ_k |f̂|²`.
    pub mean_freq: Vec<f64>,
    /// `∫ x_k x_n |f|²`.
    pub second_time: Vec<Vec<f64>>,
    /// `∫ ξ_k ξ_n |f̂|²`.
    pub second_freq: Vec<Vec<f64>>,
}

/// How the frequency-side moments are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralRoute {
    /// Quadrature of `|f̂|²` with `f̂` from [`continuous_ft`].
    Transform,
    /// Quadrature of products of partial derivatives, `∫ ξ_k ξ_n |f̂|² =
    /// (2π)^{-2} ∫ ∂_k f · conj(∂_n f)`. Used for functions cut off by an
    /// indicator, whose transforms decay too slowly for the first route.
    Gradient,
}

/// Route used by [`catalog_moments`].
pub fn spectral_route(f: &CatalogFunction) -> SpectralRoute {
    if f.is_compactly_supported() && f.has_exact_gradient() {
        SpectralRoute::Gradient
    } else {
        SpectralRoute::Transform
    }
}

/// Moments of a catalog function on its recommended grid.
pub fn catalog_moments(f: &CatalogFunction) -> Result<MomentSet> {
    catalog_moments_on(f, &f.recommended_grid()?, spectral_route(f))
}

/// Moments of a catalog function on a given grid along a given route.
pub fn catalog_moments_on(f: &CatalogFunction, grid: &Grid, route: SpectralRoute) -> Result<MomentSet> {
    let samples = f.sample(grid)?;
    match route {
        SpectralRoute::Transform => {
            let f_hat = continuous_ft(&samples)?;
            MomentSet::from_spectrum(&samples, &f_hat)
        }
        SpectralRoute::Gradient => {
            let grads = f.gradient_samples(grid)?;
            MomentSet::from_gradient(&samples, &grads)
        }
    }
}

/// Moments from samples of `f` and of `f̂` on the dual grid.
pub fn moments(f: &SampledFunction, f_hat: &SampledFunction) -> Result<MomentSet> {
    MomentSet::from_spectrum(f, f_hat)
}

struct Accum {
    norm: f64,
    mean: Vec<f64>,
    second: Vec<Vec<f64>>,
}

fn density_moments(f: &SampledFunction) -> Accum {
    let d = f.grid().dim();
    let mut acc = Accum {
        norm: 0.0,
        mean: vec![0.0; d],
        second: vec![vec![0.0; d]; d],
    };
    let values = f.values();
    f.grid().for_each_node(|flat, x, w| {
        let rho = values[flat].norm_sqr() * w;
        if rho == 0.0 {
            return;
        }
        acc.norm += rho;
        for k in 0..d {
            acc.mean[k] += x[k] * rho;
            for n in k..d {
                acc.second[k][n] += x[k] * x[n] * rho;
            }
        }
    });
    mirror(&mut acc.second);
    acc
}

fn mirror(m: &mut [Vec<f64>]) {
    for k in 0..m.len() {
        for n in 0..k {
            m[k][n] = m[n][k];
        }
    }
}

impl MomentSet {
    /// Moments by quadrature of `|f|²` and `|f̂|²`.
    pub fn from_spectrum(f: &SampledFunction, f_hat: &SampledFunction) -> Result<Self> {
        let dual = f.grid().dual()?;
        if *f_hat.grid() != dual {
            return Err(Error::IncompatibleGrids(
                "transform samples must lie on the dual grid".into(),
            ));
        }
        let time = density_moments(f);
        if !(time.norm > 0.0) {
            return Err(Error::ZeroNorm);
        }
        let freq = density_moments(f_hat);
        Ok(Self {
            norm_sq: time.norm,
            mean_time: time.mean,
            mean_freq: freq.mean,
            second_time: time.second,
            second_freq: freq.second,
        })
    }

    /// Moments with the frequency side taken from per-axis partial
    /// derivatives sampled on the grid of `f`.
    pub fn from_gradient(f: &SampledFunction, grads: &[SampledFunction]) -> Result<Self> {
        let grid = f.grid();
        let d = grid.dim();
        if grads.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: grads.len(),
            });
        }
        if grads.iter().any(|g| g.grid() != grid) {
            return Err(Error::IncompatibleGrids("gradient samples on a different grid".into()));
        }
        let time = density_moments(f);
        if !(time.norm > 0.0) {
            return Err(Error::ZeroNorm);
        }
        let mut mean = vec![0.0; d];
        let mut second = vec![vec![0.0; d]; d];
        let fv = f.values();
        let gv: Vec<&[Complex64]> = grads.iter().map(|g| g.values()).collect();
        grid.for_each_node(|flat, _, w| {
            let conj_f = fv[flat].conj();
            for k in 0..d {
                let dk = gv[k][flat];
                // Re[(2πi)^{-1} ∂_k f · conj f] = Im[∂_k f · conj f] / 2π
                mean[k] += (dk * conj_f).im * w;
                for n in k..d {
                    second[k][n] += (dk * gv[n][flat].conj()).re * w;
                }
            }
        });
        for m in mean.iter_mut() {
            *m /= 2.0 * PI;
        }
        for row in second.iter_mut() {
            for v in row.iter_mut() {
                *v /= TWO_PI_SQ;
            }
        }
        mirror(&mut second);
        Ok(Self {
            norm_sq: time.norm,
            mean_time: time.mean,
            mean_freq: mean,
            second_time: time.second,
            second_freq: second,
        })
    }

    pub fn dim(&self) -> usize {
        self.mean_time.len()
    }

    /// `M_k = (2π)² ∫ x_k² |f|²`.
    pub fn m(&self) -> Vec<f64> {
        (0..self.dim()).map(|k| TWO_PI_SQ * self.second_time[k][k]).collect()
    }

    /// `M̂_k = ∫ ξ_k² |f̂|²`.
    pub fn m_hat(&self) -> Vec<f64> {
        (0..self.dim()).map(|k| self.second_freq[k][k]).collect()
    }

    /// `(∫ (x - x̄)(x - x̄)ᵀ |f|²) / ‖f‖²`.
    pub fn time_covariance(&self) -> MatrixSym {
        covariance(&self.second_time, &self.mean_time, self.norm_sq)
    }

    /// `(∫ (ξ - ξ̄)(ξ - ξ̄)ᵀ |f̂|²) / ‖f‖²`.
    pub fn freq_covariance(&self) -> MatrixSym {
        covariance(&self.second_freq, &self.mean_freq, self.norm_sq)
    }

    fn check(&self, l: &[f64]) -> Result<()> {
        if l.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: l.len(),
            });
        }
        if l.iter().all(|v| *v == 0.0) {
            return Err(Error::ZeroDirection);
        }
        Ok(())
    }

    /// `Δ(A_L, f) = (2π)² [∫⟨L,x⟩²|f|² - (∫⟨L,x⟩|f|²)²/‖f‖²]`, unclamped.
    pub fn variance_a(&self, l: &[f64]) -> Result<f64> {
        self.check(l)?;
        Ok(TWO_PI_SQ * quadratic_variance(&self.second_time, &self.mean_time, self.norm_sq, l))
    }

    /// `Δ(B_L, f) = ∫⟨L,ξ⟩²|f̂|² - (∫⟨L,ξ⟩|f̂|²)²/‖f‖²`, unclamped.
    pub fn variance_b(&self, l: &[f64]) -> Result<f64> {
        self.check(l)?;
        Ok(quadratic_variance(&self.second_freq, &self.mean_freq, self.norm_sq, l))
    }

    /// Full localization report along `l`.
    pub fn report(&self, l: &Direction) -> Result<LocalizationReport> {
        let lc = l.components();
        let raw_a = self.variance_a(lc)?;
        let raw_b = self.variance_b(lc)?;
        let l2 = l.norm() * l.norm();
        let ns = self.norm_sq;
        let floor = -1e-10 * l2 * ns;
        let clamped = raw_a < floor || raw_b < floor;
        let delta_a = raw_a.max(0.0);
        let delta_b = raw_b.max(0.0);
        let alpha_l = 2.0 * PI * dot(lc, &self.mean_time) / ns;
        let beta_l = -dot(lc, &self.mean_freq) / ns;
        Ok(LocalizationReport {
            direction: l.clone(),
            delta_a,
            delta_b,
            alpha_l,
            beta_l,
            up: delta_a * delta_b / (l2 * l2 * ns * ns),
            sum_functional: (delta_a / TWO_PI_SQ + TWO_PI_SQ * delta_b) / (l2 * ns),
            clamped,
        })
    }

    /// `ΣΔ(A_j) · ΣΔ(B_k) / (d² ‖f‖⁴)` with the coordinate operators.
    pub fn up_gg(&self) -> f64 {
        let d = self.dim();
        let mut sa = 0.0;
        let mut sb = 0.0;
        for k in 0..d {
            let mut e = vec![0.0; d];
            e[k] = 1.0;
            sa += TWO_PI_SQ * quadratic_variance(&self.second_time, &self.mean_time, self.norm_sq, &e).max(0.0);
            sb += quadratic_variance(&self.second_freq, &self.mean_freq, self.norm_sq, &e).max(0.0);
        }
        sa * sb / ((d * d) as f64 * self.norm_sq * self.norm_sq)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn quadratic_variance(second: &[Vec<f64>], mean: &[f64], norm_sq: f64, l: &[f64]) -> f64 {
    let mut q = 0.0;
    for (k, row) in second.iter().enumerate() {
        for (n, s) in row.iter().enumerate() {
            q += l[k] * l[n] * s;
        }
    }
    let m = dot(l, mean);
    q - m * m / norm_sq
}

fn covariance(second: &[Vec<f64>], mean: &[f64], norm_sq: f64) -> MatrixSym {
    MatrixSym::from_fn(mean.len(), |k, n| {
        second[k][n] / norm_sq - mean[k] * mean[n] / (norm_sq * norm_sq)
    })
}

/// Variances, centres and uncertainty measures of `f` along one direction.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalizationReport {
    pub direction: Direction,
    /// `Δ(A_L, f)`, clamped at zero.
    pub delta_a: f64,
    /// `Δ(B_L, f)`, clamped at zero.
    pub delta_b: f64,
    /// `⟨A_L f, f⟩ / ‖f‖²`.
    pub alpha_l: f64,
    /// `⟨B_L f, f⟩ / ‖f‖²`.
    pub beta_l: f64,
    /// `Δ_A Δ_B / (‖L‖⁴ ‖f‖⁴)`.
    pub up: f64,
    /// `((2π)^{-2} Δ_A + (2π)² Δ_B) / (‖L‖² ‖f‖²)`.
    pub sum_functional: f64,
    /// A raw variance fell below `-1e-10 ‖L‖² ‖f‖²` before clamping.
    pub clamped: bool,
}

/// `Δ(A_L, f)` from samples of `f` and `f̂`.
pub fn variance_a(f: &SampledFunction, f_hat: &SampledFunction, l: &Direction) -> Result<f64> {
    Ok(moments(f, f_hat)?.variance_a(l.components())?.max(0.0))
}

/// `Δ(B_L, f)` from samples of `f` and `f̂`.
pub fn variance_b(f: &SampledFunction, f_hat: &SampledFunction, l: &Direction) -> Result<f64> {
    Ok(moments(f, f_hat)?.variance_b(l.components())?.max(0.0))
}

/// `UP_L(f)` and the rest of the report from samples of `f` and `f̂`.
pub fn up_directional(
    f: &SampledFunction,
    f_hat: &SampledFunction,
    l: &Direction,
) -> Result<LocalizationReport> {
    moments(f, f_hat)?.report(l)
}

/// `UP_GG(f)` from samples of `f` and `f̂`.
pub fn up_gg(f: &SampledFunction, f_hat: &SampledFunction) -> Result<f64> {
    Ok(moments(f, f_hat)?.up_gg())
}
