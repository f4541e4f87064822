use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::grid::{Grid, SampledFunction};
use crate::error::{Error, Result};

/// Samples of `f̂(ξ) = ∫ f(x) e^{-2πi⟨x,ξ⟩} dx` on the dual grid of `f`.
///
/// The integral is discretised with the trapezoidal weights of the box and
/// evaluated axis by axis with an FFT; the centred box and centred frequency
/// grid are handled by exact rational phase factors.
pub fn continuous_ft(f: &SampledFunction) -> Result<SampledFunction> {
    let grid = *f.grid();
    if grid.is_periodic() {
        return Err(Error::PeriodicGrid);
    }
    let dual = grid.dual()?;
    let mut values = f.values().to_vec();
    apply_axis_weights(&grid, &mut values, false);
    for axis in 0..grid.dim() {
        transform_axis(&grid, &mut values, axis, Sign::Forward);
    }
    SampledFunction::new(dual, values)
}

/// Inverse of [`continuous_ft`]: maps frequency samples back onto the box grid
/// whose dual is `f_hat.grid()`. `inverse_ft(continuous_ft(f)) == f` up to
/// rounding.
pub fn inverse_ft(f_hat: &SampledFunction) -> Result<SampledFunction> {
    let freq = *f_hat.grid();
    if freq.is_periodic() {
        return Err(Error::PeriodicGrid);
    }
    let space = freq.dual()?;
    let mut values = f_hat.values().to_vec();
    for axis in 0..freq.dim() {
        transform_axis(&freq, &mut values, axis, Sign::Inverse);
    }
    apply_axis_weights(&space, &mut values, true);
    SampledFunction::new(space, values)
}

/// `∂f/∂L` of a box-sampled function, by multiplying the transform with
/// `2πi⟨L,ξ⟩`.
pub fn spectral_directional_derivative(f: &SampledFunction, l: &[f64]) -> Result<SampledFunction> {
    let grid = f.grid();
    if l.len() != grid.dim() {
        return Err(Error::DimensionMismatch {
            expected: grid.dim(),
            got: l.len(),
        });
    }
    let f_hat = continuous_ft(f)?;
    let scaled = f_hat.map(|xi, v| {
        let dot: f64 = xi.iter().zip(l).map(|(a, b)| a * b).sum();
        v * Complex64::new(0.0, 2.0 * PI * dot)
    });
    inverse_ft(&scaled)
}

/// Fourier coefficients `c_k = ∫_{𝕋^d} g(x) e^{-2πi⟨k,x⟩} dx` of a torus
/// function, indexed by `k ∈ ℤ^d` with `-⌊n/2⌋ ≤ k_j < n - ⌊n/2⌋`.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusSpectrum {
    dim: usize,
    n: usize,
    coeffs: Vec<Complex64>,
}

impl TorusSpectrum {
    /// Riemann-sum coefficients of the samples, computed with an FFT per axis.
    pub fn of(g: &SampledFunction) -> Result<Self> {
        let grid = g.grid();
        if !grid.is_periodic() {
            return Err(Error::NonPeriodicGrid);
        }
        let n = grid.points_per_axis();
        let d = grid.dim();
        let mut planner = FftPlanner::<f64>::new();
        let fft = planner.plan_fft_forward(n);
        let mut values = g.values().to_vec();
        let mut line = vec![Complex64::new(0.0, 0.0); n];
        let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        // nodes start at -1/2, which contributes (-1)^k
        let post: Vec<Complex64> = (0..n)
            .map(|m| {
                let k = frequency(m, n);
                let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                Complex64::new(sign / n as f64, 0.0)
            })
            .collect();
        for axis in 0..d {
            let stride = n.pow((d - 1 - axis) as u32);
            let outer = n.pow(axis as u32);
            for o in 0..outer {
                for inner in 0..stride {
                    let base = o * n * stride + inner;
                    for (i, slot) in line.iter_mut().enumerate() {
                        *slot = values[base + i * stride];
                    }
                    fft.process_with_scratch(&mut line, &mut scratch);
                    for (m, v) in line.iter().enumerate() {
                        values[base + m * stride] = v * post[m];
                    }
                }
            }
        }
        Ok(Self {
            dim: d,
            n,
            coeffs: values,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Calls `visit(k, c_k)` for every stored coefficient.
    pub fn for_each(&self, mut visit: impl FnMut(&[i64], Complex64)) {
        let mut k = vec![0i64; self.dim];
        for (flat, c) in self.coeffs.iter().enumerate() {
            let mut rest = flat;
            for j in (0..self.dim).rev() {
                k[j] = frequency(rest % self.n, self.n);
                rest /= self.n;
            }
            visit(&k, *c);
        }
    }

    /// `Σ|c_k|²`, equal to the Riemann sum of `|g|²`.
    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }
}

fn frequency(m: usize, n: usize) -> i64 {
    let half = n / 2;
    if m < n - half {
        m as i64
    } else {
        m as i64 - n as i64
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Sign {
    Forward,
    Inverse,
}

fn apply_axis_weights(grid: &Grid, values: &mut [Complex64], divide: bool) {
    let n = grid.points_per_axis();
    let h = grid.spacing();
    // interior weight is h and is folded into the transform scale instead
    let rel: Vec<f64> = grid.axis_weights().iter().map(|w| w / h).collect();
    if rel.iter().all(|&r| r == 1.0) {
        return;
    }
    let mut idx = vec![0usize; grid.dim()];
    for (flat, v) in values.iter_mut().enumerate() {
        grid.unravel(flat, &mut idx);
        let w: f64 = idx.iter().map(|&i| rel[i]).product();
        if w != 1.0 {
            if divide {
                *v /= w;
            } else {
                *v *= w;
            }
        }
    }
    debug_assert_eq!(values.len(), n.pow(grid.dim() as u32));
}

/// `e^{2πi p/q}` for an integer ratio reduced modulo one.
fn unit_phase(p: u128, q: u128, sign: f64) -> Complex64 {
    let r = (p % q) as f64 / q as f64;
    Complex64::from_polar(1.0, sign * 2.0 * PI * r)
}

/// One-dimensional centred transform along `axis` of a grid with nodes
/// `t_i = -T + iδ`, producing values at `s_j = -S + jΔ`, `Δ = 1/(nδ)`:
///
/// `out_j = δ Σ_i in_i e^{±2πi t_i s_j}`.
///
/// With `S = (n-1)Δ/2` the products `TS`, `TjΔ` and `iδS` are the rationals
/// `(n-1)²/(4n)`, `j(n-1)/(2n)` and `i(n-1)/(2n)`, so the phase factors are
/// computed without loss.
fn transform_axis(grid: &Grid, values: &mut [Complex64], axis: usize, sign: Sign) {
    let n = grid.points_per_axis();
    let d = grid.dim();
    let delta = grid.spacing();
    let s = match sign {
        Sign::Forward => -1.0,
        Sign::Inverse => 1.0,
    };
    let nn = n as u128;
    let m = nn - 1;
    let twiddle: Vec<Complex64> = (0..nn).map(|i| unit_phase(i * m, 2 * nn, -s)).collect();
    let global = unit_phase(m * m, 4 * nn, s) * delta;
    let post: Vec<Complex64> = twiddle.iter().map(|t| t * global).collect();

    let mut planner = FftPlanner::<f64>::new();
    let fft: std::sync::Arc<dyn Fft<f64>> = match sign {
        Sign::Forward => planner.plan_fft_forward(n),
        Sign::Inverse => planner.plan_fft_inverse(n),
    };

    let stride = n.pow((d - 1 - axis) as u32);
    let outer = n.pow(axis as u32);
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    for o in 0..outer {
        for inner in 0..stride {
            let base = o * n * stride + inner;
            for (i, slot) in line.iter_mut().enumerate() {
                *slot = values[base + i * stride] * twiddle[i];
            }
            fft.process_with_scratch(&mut line, &mut scratch);
            for (j, v) in line.iter().enumerate() {
                values[base + j * stride] = v * post[j];
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian(grid: Grid, shift: f64) -> SampledFunction {
        SampledFunction::from_fn(grid, |x| {
            let r2: f64 = x.iter().map(|v| (v - shift) * (v - shift)).sum();
            Complex64::new((-PI * r2).exp(), 0.0)
        })
    }

    #[test]
    fn gaussian_is_self_dual() {
        let g = Grid::new(1, 8.0, 512).unwrap();
        let fh = continuous_ft(&gaussian(g, 0.0)).unwrap();
        let err = fh
            .grid()
            .nodes()
            .iter()
            .zip(fh.values())
            .map(|(xi, v)| (v - Complex64::new((-PI * xi * xi).exp(), 0.0)).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-6, "max error {err}");
    }

    #[test]
    fn shift_only_changes_phase() {
        let g = Grid::new(1, 8.0, 512).unwrap();
        let a = continuous_ft(&gaussian(g, 0.0)).unwrap();
        let b = continuous_ft(&gaussian(g, 1.0)).unwrap();
        let err = a
            .values()
            .iter()
            .zip(b.values())
            .map(|(u, v)| (u.norm() - v.norm()).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-6);
    }

    #[test]
    fn two_dimensional_gaussian() {
        let g = Grid::new(2, 6.0, 128).unwrap();
        let fh = continuous_ft(&gaussian(g, 0.0)).unwrap();
        let exact = SampledFunction::from_fn(*fh.grid(), |xi| {
            Complex64::new((-PI * (xi[0] * xi[0] + xi[1] * xi[1])).exp(), 0.0)
        });
        let err = fh
            .values()
            .iter()
            .zip(exact.values())
            .map(|(u, v)| (u - v).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-8, "max error {err}");
    }

    #[test]
    fn round_trip_including_boundary_values() {
        let g = Grid::new(2, 1.0, 33).unwrap();
        let f = SampledFunction::from_fn(g, |x| Complex64::new(x[0] * x[1] + 0.3, x[0]));
        let back = inverse_ft(&continuous_ft(&f).unwrap()).unwrap();
        let num: f64 = f
            .values()
            .iter()
            .zip(back.values())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        let den: f64 = f.values().iter().map(|a| a.norm_sqr()).sum();
        assert!((num / den).sqrt() < 1e-12);
    }

    #[test]
    fn plancherel_gaussian() {
        let g = Grid::new(2, 8.0, 256).unwrap();
        let f = gaussian(g, 0.3);
        let fh = continuous_ft(&f).unwrap();
        assert!((f.norm_sq() - fh.norm_sq()).abs() / f.norm_sq() < 1e-6);
    }

    #[test]
    fn periodic_grid_rejected() {
        let g = Grid::periodic(1, 16).unwrap();
        assert_eq!(
            continuous_ft(&SampledFunction::zeros(g)).unwrap_err(),
            Error::PeriodicGrid
        );
    }

    #[test]
    fn spectral_derivative_of_gaussian() {
        let g = Grid::new(1, 8.0, 512).unwrap();
        let f = SampledFunction::from_fn(g, |x| Complex64::new((-x[0] * x[0]).exp(), 0.0));
        let df = spectral_directional_derivative(&f, &[1.0]).unwrap();
        let err = g
            .nodes()
            .iter()
            .zip(df.values())
            .map(|(x, v)| (v.re + 2.0 * x * (-x * x).exp()).abs() + v.im.abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-8, "{err}");
    }
    #[test]
    fn torus_coefficients_of_trig_polynomial() {
        let g = Grid::periodic(1, 16).unwrap();
        let f = SampledFunction::from_fn(g, |x| {
            Complex64::new(1.0 + 0.5 * (2.0 * PI * x[0]).cos(), 0.0)
                + Complex64::from_polar(0.25, 2.0 * PI * 3.0 * x[0])
        });
        let spec = TorusSpectrum::of(&f).unwrap();
        spec.for_each(|k, c| {
            let want = match k[0] {
                0 => 1.0,
                1 | -1 => 0.25,
                3 => 0.25,
                _ => 0.0,
            };
            assert!((c - want).norm() < 1e-14, "k={k:?} c={c}");
        });
        assert!((spec.norm_sq() - f.norm_sq()).abs() < 1e-14);
    }

    #[test]
    fn torus_coefficients_odd_count_and_2d() {
        let g = Grid::periodic(2, 9).unwrap();
        let f = SampledFunction::from_fn(g, |x| {
            Complex64::from_polar(1.0, 2.0 * PI * (2.0 * x[0] - 4.0 * x[1]))
        });
        let spec = TorusSpectrum::of(&f).unwrap();
        spec.for_each(|k, c| {
            let want = if k == [2, -4] { 1.0 } else { 0.0 };
            assert!((c - want).norm() < 1e-13, "k={k:?} c={c}");
        });
        assert!(TorusSpectrum::of(&SampledFunction::zeros(Grid::new(1, 1.0, 8).unwrap())).is_err());
    }
}
