use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use super::poly::{box_polynomial_ft, Polynomial};
use crate::error::{Error, Result};
use crate::hermite::hermite_function;
use crate::numerics::{spectral_directional_derivative, Grid, SampledFunction};

/// Per-axis symmetry declared by a catalog entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Symmetry {
    /// `|f(σ_k x)| = |f(x)|` and `|f̂(σ_k ξ)| = |f̂(ξ)|` for every sign flip `σ_k`.
    pub even_modulus: bool,
    /// `f(σ_k x) = -f(x)` for every axis.
    pub odd: bool,
}

/// Gaussian along `L` times a transverse profile:
///
/// `f(x) = e^{-(2π²/μ)⟨L,x⟩²} · Φ(u)`, `u_j = L_{j+1} x_1 - L_1 x_{j+1}`,
/// with `Φ(u) = P(u) e^{-ν|u|²}` and `P` a polynomial of total degree ≤ 4.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionalGaussian {
    l: Vec<f64>,
    mu: f64,
    nu: f64,
    phi: Polynomial,
}

impl DirectionalGaussian {
    pub fn new(l: Vec<f64>, mu: f64, nu: f64, phi: Polynomial) -> Result<Self> {
        let d = l.len();
        if d == 0 {
            return Err(Error::InvalidParameter("empty direction".into()));
        }
        let norm = l.iter().map(|v| v * v).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("‖L‖ = {norm}, must be 1")));
        }
        if mu == 0.0 || !mu.is_finite() {
            return Err(Error::InvalidParameter("μ must be nonzero".into()));
        }
        if mu < 0.0 {
            return Err(Error::InvalidParameter(
                "μ < 0 gives a growing exponential, not square integrable".into(),
            ));
        }
        if d > 1 && !(nu > 0.0 && nu.is_finite()) {
            return Err(Error::InvalidParameter("ν must be positive".into()));
        }
        if phi.dim() != d.saturating_sub(1).max(1) && d > 1 {
            return Err(Error::DimensionMismatch {
                expected: d - 1,
                got: phi.dim(),
            });
        }
        if phi.total_degree() > 4 {
            return Err(Error::InvalidParameter("Φ must have total degree ≤ 4".into()));
        }
        // the transverse coordinates must span L⊥, otherwise f does not decay
        if d > 2 && l[0].abs() < 1e-12 {
            return Err(Error::InvalidParameter(
                "transverse coordinates are degenerate when L_1 = 0 and d > 2".into(),
            ));
        }
        Ok(Self { l, mu, nu, phi })
    }

    pub fn direction(&self) -> &[f64] {
        &self.l
    }

    /// Exponent `2π²/μ` of the Gaussian along `L`.
    pub fn along(&self) -> f64 {
        2.0 * PI * PI / self.mu
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    fn transverse(&self, x: &[f64]) -> Vec<f64> {
        (1..self.l.len())
            .map(|j| self.l[j] * x[0] - self.l[0] * x[j])
            .collect()
    }

    fn eval(&self, x: &[f64]) -> f64 {
        let s: f64 = self.l.iter().zip(x).map(|(a, b)| a * b).sum();
        let along = (-self.along() * s * s).exp();
        if self.l.len() == 1 {
            return along * self.phi.eval(&[0.0]);
        }
        let u = self.transverse(x);
        let u2: f64 = u.iter().map(|v| v * v).sum();
        along * self.phi.eval(&u) * (-self.nu * u2).exp()
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let d = self.l.len();
        let s: f64 = self.l.iter().zip(x).map(|(a, b)| a * b).sum();
        let c = self.along();
        let along = (-c * s * s).exp();
        if d == 1 {
            let p = self.phi.eval(&[0.0]);
            return vec![-2.0 * c * s * self.l[0] * along * p];
        }
        let u = self.transverse(x);
        let u2: f64 = u.iter().map(|v| v * v).sum();
        let env = (-self.nu * u2).exp();
        let p = self.phi.eval(&u);
        // ∂Φ/∂u_j
        let dphi: Vec<f64> = (0..d - 1)
            .map(|j| (self.phi.eval_partial(j, &u) - 2.0 * self.nu * u[j] * p) * env)
            .collect();
        (0..d)
            .map(|i| {
                let mut g = -2.0 * c * s * self.l[i] * p * env;
                // ∂u_j/∂x_i
                for j in 0..d - 1 {
                    let du = if i == 0 {
                        self.l[j + 1]
                    } else if i == j + 1 {
                        -self.l[0]
                    } else {
                        0.0
                    };
                    g += dphi[j] * du;
                }
                g * along
            })
            .collect()
    }
}

/// Named analytic test functions.
#[derive(Debug, Clone, PartialEq)]
pub enum CatalogFunction {
    /// `(2/π)^{d/4} (∏a)^{1/4} e^{-Σ a_k x_k²}`, unit norm.
    GaussianDiag { a: Vec<f64> },
    GaussianDirectional(DirectionalGaussian),
    /// Polynomial restricted to the closed cube `[-1, 1]^d`.
    IndicatorPoly { name: String, poly: Polynomial },
    /// Tensor Hermite function `h_α`.
    HermitePure { alpha: Vec<u32> },
    /// Samples read from a file; no closed forms.
    CustomGrid { source: String, samples: SampledFunction },
}

impl CatalogFunction {
    pub fn gaussian_diag(a: &[f64]) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidParameter("gaussian_diag needs at least one a_k".into()));
        }
        if a.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
            return Err(Error::InvalidParameter("gaussian_diag requires a_k > 0".into()));
        }
        Ok(Self::GaussianDiag { a: a.to_vec() })
    }

    /// `(3xy/2) 𝟙_{[-1,1]²}`.
    pub fn example1() -> Self {
        Self::IndicatorPoly {
            name: "example1".into(),
            poly: Polynomial::new(2, vec![(1.5, vec![1, 1])]).expect("static polynomial"),
        }
    }

    /// `(√21 x³y/2) 𝟙_{[-1,1]²}`.
    pub fn example2() -> Self {
        Self::IndicatorPoly {
            name: "example2".into(),
            poly: Polynomial::new(2, vec![(0.5 * 21f64.sqrt(), vec![3, 1])])
                .expect("static polynomial"),
        }
    }

    pub fn indicator_poly(poly: Polynomial) -> Self {
        Self::IndicatorPoly {
            name: "indicator_poly".into(),
            poly,
        }
    }

    pub fn hermite_pure(alpha: &[u32]) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::InvalidParameter("hermite_pure needs a multi-index".into()));
        }
        Ok(Self::HermitePure {
            alpha: alpha.to_vec(),
        })
    }

    pub fn id(&self) -> &str {
        match self {
            Self::GaussianDiag { .. } => "gaussian_diag",
            Self::GaussianDirectional(_) => "gaussian_directional",
            Self::IndicatorPoly { name, .. } => name,
            Self::HermitePure { .. } => "hermite_pure",
            Self::CustomGrid { .. } => "custom_grid",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::GaussianDiag { a } => a.len(),
            Self::GaussianDirectional(g) => g.l.len(),
            Self::IndicatorPoly { poly, .. } => poly.dim(),
            Self::HermitePure { alpha } => alpha.len(),
            Self::CustomGrid { samples, .. } => samples.grid().dim(),
        }
    }

    pub fn has_exact_ft(&self) -> bool {
        matches!(
            self,
            Self::GaussianDiag { .. } | Self::IndicatorPoly { .. } | Self::HermitePure { .. }
        )
    }

    pub fn has_exact_gradient(&self) -> bool {
        !matches!(self, Self::CustomGrid { .. })
    }

    /// Supported on a compact box with a jump at the boundary.
    pub fn is_compactly_supported(&self) -> bool {
        matches!(self, Self::IndicatorPoly { .. })
    }

    /// Smooth with Gaussian decay of the function and its gradient.
    pub fn is_admissible(&self) -> bool {
        matches!(
            self,
            Self::GaussianDiag { .. } | Self::GaussianDirectional(_) | Self::HermitePure { .. }
        )
    }

    pub fn symmetry(&self) -> Symmetry {
        match self {
            Self::GaussianDiag { .. } => Symmetry {
                even_modulus: true,
                odd: false,
            },
            Self::HermitePure { alpha } => Symmetry {
                even_modulus: true,
                odd: alpha.iter().all(|k| k % 2 == 1),
            },
            Self::IndicatorPoly { poly, .. } => {
                let parities: Vec<Option<u32>> =
                    (0..poly.dim()).map(|k| poly.axis_parity(k)).collect();
                Symmetry {
                    even_modulus: parities.iter().all(Option::is_some),
                    odd: parities.iter().all(|p| *p == Some(1)),
                }
            }
            Self::GaussianDirectional(_) | Self::CustomGrid { .. } => Symmetry::default(),
        }
    }

    /// Closed-form value at `x`.
    pub fn evaluate(&self, x: &[f64]) -> Complex64 {
        let re = match self {
            Self::GaussianDiag { a } => {
                let d = a.len() as f64;
                let prod: f64 = a.iter().product();
                let q: f64 = a.iter().zip(x).map(|(ak, xk)| ak * xk * xk).sum();
                (2.0 / PI).powf(d / 4.0) * prod.powf(0.25) * (-q).exp()
            }
            Self::GaussianDirectional(g) => g.eval(x),
            Self::IndicatorPoly { poly, .. } => {
                if x.iter().all(|v| v.abs() <= 1.0) {
                    poly.eval(x)
                } else {
                    0.0
                }
            }
            Self::HermitePure { alpha } => alpha
                .iter()
                .zip(x)
                .map(|(&k, &y)| hermite_function(k as usize, y))
                .product(),
            Self::CustomGrid { samples, .. } => return nearest_sample(samples, x),
        };
        Complex64::new(re, 0.0)
    }

    /// Closed-form `f̂(ξ) = ∫ f(x) e^{-2πi⟨x,ξ⟩} dx`.
    pub fn exact_ft(&self, xi: &[f64]) -> Result<Complex64> {
        match self {
            Self::GaussianDiag { a } => {
                let d = a.len() as f64;
                let prod: f64 = a.iter().product();
                let q: f64 = a.iter().zip(xi).map(|(ak, v)| v * v / ak).sum();
                Ok(Complex64::new(
                    (2.0 * PI).powf(d / 4.0) * prod.powf(-0.25) * (-PI * PI * q).exp(),
                    0.0,
                ))
            }
            Self::IndicatorPoly { poly, .. } => Ok(box_polynomial_ft(poly, xi)),
            Self::HermitePure { alpha } => {
                // ĥ_k(ξ) = √(2π) (-i)^k h_k(2πξ)
                let mut v = Complex64::new(1.0, 0.0);
                for (&k, &f) in alpha.iter().zip(xi) {
                    v *= Complex64::new(0.0, -1.0).powu(k)
                        * ((2.0 * PI).sqrt() * hermite_function(k as usize, 2.0 * PI * f));
                }
                Ok(v)
            }
            _ => Err(Error::FtUnavailable(self.id().to_string())),
        }
    }

    /// Closed-form gradient at `x`. Indicator-supported entries return the
    /// classical gradient on the closed cube and zero outside it.
    pub fn gradient(&self, x: &[f64]) -> Result<Vec<Complex64>> {
        let g: Vec<f64> = match self {
            Self::GaussianDiag { a } => {
                let f = self.evaluate(x).re;
                a.iter().zip(x).map(|(ak, xk)| -2.0 * ak * xk * f).collect()
            }
            Self::GaussianDirectional(g) => g.gradient(x),
            Self::IndicatorPoly { poly, .. } => {
                if x.iter().all(|v| v.abs() <= 1.0) {
                    (0..poly.dim()).map(|k| poly.eval_partial(k, x)).collect()
                } else {
                    vec![0.0; poly.dim()]
                }
            }
            Self::HermitePure { alpha } => {
                let vals: Vec<f64> = alpha
                    .iter()
                    .zip(x)
                    .map(|(&k, &y)| hermite_function(k as usize, y))
                    .collect();
                (0..alpha.len())
                    .map(|j| {
                        let k = alpha[j] as usize;
                        let y = x[j];
                        // h_k' = √(k/2) h_{k-1} - √((k+1)/2) h_{k+1}
                        let lower = if k > 0 {
                            (k as f64 / 2.0).sqrt() * hermite_function(k - 1, y)
                        } else {
                            0.0
                        };
                        let upper = ((k + 1) as f64 / 2.0).sqrt() * hermite_function(k + 1, y);
                        let mut v = lower - upper;
                        for (i, hv) in vals.iter().enumerate() {
                            if i != j {
                                v *= hv;
                            }
                        }
                        v
                    })
                    .collect()
            }
            Self::CustomGrid { .. } => {
                return Err(Error::GradientUnavailable(self.id().to_string()))
            }
        };
        Ok(g.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
    }

    /// Samples on `grid`. File-backed entries only accept their own grid.
    pub fn sample(&self, grid: &Grid) -> Result<SampledFunction> {
        if grid.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: grid.dim(),
            });
        }
        if let Self::CustomGrid { samples, .. } = self {
            if samples.grid() != grid {
                return Err(Error::IncompatibleGrids(
                    "custom_grid samples cannot be resampled".into(),
                ));
            }
            return Ok(samples.clone());
        }
        Ok(SampledFunction::from_fn(*grid, |x| self.evaluate(x)))
    }

    /// Samples of `Σ L_j ∂f/∂x_j`: closed form where available, spectral
    /// differentiation for file-backed samples.
    pub fn directional_derivative(&self, grid: &Grid, l: &[f64]) -> Result<SampledFunction> {
        if l.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: l.len(),
            });
        }
        if let Self::CustomGrid { samples, .. } = self {
            return spectral_directional_derivative(samples, l);
        }
        if grid.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: grid.dim(),
            });
        }
        let mut err = None;
        let out = SampledFunction::from_fn(*grid, |x| match self.gradient(x) {
            Ok(g) => g.iter().zip(l).map(|(gk, lk)| gk * lk).sum(),
            Err(e) => {
                err.get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }

    /// Per-axis gradient samples.
    pub fn gradient_samples(&self, grid: &Grid) -> Result<Vec<SampledFunction>> {
        (0..self.dim())
            .map(|k| {
                let mut e = vec![0.0; self.dim()];
                e[k] = 1.0;
                self.directional_derivative(grid, &e)
            })
            .collect()
    }

    /// `(x₀, ξ₀)` beyond which `|f|²` and `|f̂|²` fall below about `e^{-40}`
    /// of their peak, for the smooth rapidly decaying entries.
    pub fn decay_reach(&self) -> Option<(f64, f64)> {
        let gaussian = |amin: f64, amax: f64| ((20.0 / amin).sqrt(), (20.0 * amax).sqrt() / PI);
        match self {
            Self::GaussianDiag { a } => {
                let amin = a.iter().copied().fold(f64::INFINITY, f64::min);
                let amax = a.iter().copied().fold(0.0, f64::max);
                Some(gaussian(amin, amax))
            }
            Self::GaussianDirectional(g) => {
                let c = g.along();
                let (lo, hi) = if self.dim() == 1 {
                    (c, c)
                } else {
                    (c.min(g.nu), c.max(g.nu))
                };
                Some(gaussian(lo / 2.0, hi * 2.0))
            }
            Self::HermitePure { alpha } => {
                let kmax = alpha.iter().copied().max().unwrap_or(0) as f64;
                let reach = (2.0 * kmax + 1.0).sqrt() + 6.5;
                Some((reach, reach / (2.0 * PI)))
            }
            _ => None,
        }
    }

    /// A grid on which box truncation and aliasing errors are negligible.
    pub fn recommended_grid(&self) -> Result<Grid> {
        let d = self.dim();
        if let Some((x0, xi)) = self.decay_reach() {
            let r = x0.max(8.0);
            return Grid::new(d, r, points_for(d, r, xi));
        }
        match self {
            Self::IndicatorPoly { .. } => {
                let n = match d {
                    1 => 4001,
                    2 => 801,
                    3 => 161,
                    _ => 41,
                };
                Grid::new(d, 1.0, n)
            }
            Self::CustomGrid { samples, .. } => Ok(*samples.grid()),
            _ => unreachable!("smooth entries handled above"),
        }
    }

    /// Short parameter summary, `;`-separated.
    pub fn params(&self) -> String {
        let join = |v: &mut dyn Iterator<Item = String>| v.collect::<Vec<_>>().join(";");
        match self {
            Self::GaussianDiag { a } => join(&mut a.iter().map(|v| format!("{v}"))),
            Self::GaussianDirectional(g) => format!(
                "L={};mu={};nu={}",
                g.l.iter().map(|v| format!("{v}")).collect::<Vec<_>>().join(" "),
                g.mu,
                g.nu
            ),
            Self::IndicatorPoly { poly, .. } => join(&mut poly.terms().iter().map(|(c, e)| {
                format!(
                    "{c}@{}",
                    e.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(".")
                )
            })),
            Self::HermitePure { alpha } => join(&mut alpha.iter().map(|v| v.to_string())),
            Self::CustomGrid { source, .. } => source.clone(),
        }
    }
}

impl fmt::Display for CatalogFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.id(), self.params())
    }
}

fn nearest_sample(samples: &SampledFunction, x: &[f64]) -> Complex64 {
    let grid = samples.grid();
    let h = grid.spacing();
    let n = grid.points_per_axis();
    let mut idx = Vec::with_capacity(x.len());
    for &v in x {
        let i = ((v + grid.halfwidth()) / h).round();
        if i < 0.0 || i >= n as f64 {
            return Complex64::new(0.0, 0.0);
        }
        idx.push(i as usize);
    }
    samples.values()[grid.ravel(&idx)]
}

/// Node count per axis so the dual grid reaches frequency `xi` on a box of
/// halfwidth `r`, rounded up to a multiple of 16 and clamped to the budget.
fn points_for(d: usize, r: f64, xi: f64) -> usize {
    let need = (4.0 * r * xi).ceil() as usize + 1;
    let floor = match d {
        1 => 512,
        2 => 256,
        _ => 64,
    };
    let cap = match d {
        1 => 1 << 16,
        2 => 1024,
        3 => 192,
        4 => 48,
        _ => 16,
    };
    need.max(floor).div_ceil(16).saturating_mul(16).min(cap)
}

/// Nonzero vector along which localization is measured.
#[derive(Debug, Clone, PartialEq)]
pub struct Direction {
    components: Vec<f64>,
}

impl Direction {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.is_empty() || components.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("direction must be finite and nonempty".into()));
        }
        if components.iter().all(|v| *v == 0.0) {
            return Err(Error::ZeroDirection);
        }
        Ok(Self { components })
    }

    /// Standard basis vector `e_k` in `ℝ^d`.
    pub fn axis(dim: usize, k: usize) -> Self {
        let mut c = vec![0.0; dim];
        c[k] = 1.0;
        Self { components: c }
    }

    pub fn from_angle(theta: f64) -> Self {
        Self {
            components: vec![theta.cos(), theta.sin()],
        }
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn norm(&self) -> f64 {
        self.components.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn unit(&self) -> Self {
        let n = self.norm();
        Self {
            components: self.components.iter().map(|v| v / n).collect(),
        }
    }

    /// Whether `L ∈ ℤ^d`, as required on the torus.
    pub fn is_integer(&self) -> bool {
        self.components.iter().all(|v| v.fract() == 0.0)
    }

    pub fn dot(&self, x: &[f64]) -> f64 {
        self.components.iter().zip(x).map(|(a, b)| a * b).sum()
    }
}
