//! Periodized scaled functions `f_λ^per(x) = λ^{d/2} Σ_k f(λ(x + k))` on
//! `𝕋^d = [-1/2, 1/2)^d` and the `λ → ∞` convergence experiments.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::functions::{CatalogFunction, Direction};
use crate::localization::{catalog_moments, up_gg_periodic, up_periodic};
use crate::numerics::{Grid, SampledFunction};

/// Largest accepted relative mass of the first omitted shell of translates.
pub const TAIL_TOLERANCE: f64 = 1e-8;
/// Relative shell mass targeted when the truncation is chosen automatically.
pub const AUTO_TAIL_TARGET: f64 = 1e-10;
const MAX_TRUNCATION: usize = 64;

/// Samples of `f_λ^per` on a torus grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodizedFunction {
    pub base: CatalogFunction,
    pub lambda: f64,
    /// Translates with `‖k‖_∞ ≤ K` are summed.
    pub truncation: usize,
    pub samples: SampledFunction,
    /// `‖·‖²_𝕋` of the first omitted shell `‖k‖_∞ = K + 1`.
    pub tail_bound: f64,
}

/// Torus grid resolving the Fourier coefficients of `f_λ^per`, which are
/// `λ^{-d/2} f̂(k/λ)`.
pub fn periodic_grid_for(f: &CatalogFunction, lambda: f64) -> Result<Grid> {
    let (_, xi) = f
        .decay_reach()
        .ok_or_else(|| Error::InvalidParameter(format!("`{}` is not admissible", f.id())))?;
    let d = f.dim();
    let need = (2.0 * lambda * xi).ceil() as usize + 8;
    let (floor, cap) = match d {
        1 => (128, 1 << 16),
        2 => (64, 1024),
        _ => (32, 128),
    };
    Grid::periodic(d, need.next_power_of_two().clamp(floor, cap))
}

fn shell(f: &CatalogFunction, lambda: f64, k: usize, grid: &Grid) -> SampledFunction {
    let d = grid.dim();
    let side = 2 * k + 1;
    let shifts: Vec<Vec<f64>> = (0..side.pow(d as u32))
        .filter_map(|flat| {
            let mut rest = flat;
            let mut v = vec![0.0; d];
            let mut on_shell = false;
            for j in (0..d).rev() {
                let c = (rest % side) as i64 - k as i64;
                rest /= side;
                on_shell |= c.unsigned_abs() as usize == k;
                v[j] = c as f64;
            }
            on_shell.then_some(v)
        })
        .collect();
    let scale = lambda.powf(d as f64 / 2.0);
    let eval = |x: &[f64]| -> Complex64 {
        let mut y = vec![0.0; d];
        let mut acc = Complex64::new(0.0, 0.0);
        for s in &shifts {
            for j in 0..d {
                y[j] = lambda * (x[j] + s[j]);
            }
            acc += f.evaluate(&y);
        }
        acc * scale
    };
    let points: Vec<Vec<f64>> = {
        let mut pts = Vec::with_capacity(grid.len());
        grid.for_each_node(|_, x, _| pts.push(x.to_vec()));
        pts
    };
    #[cfg(feature = "parallel")]
    let values: Vec<Complex64> = points.par_iter().map(|x| eval(x)).collect();
    #[cfg(not(feature = "parallel"))]
    let values: Vec<Complex64> = points.iter().map(|x| eval(x)).collect();
    SampledFunction::new(*grid, values).expect("one value per node")
}

/// Builds `f_λ^per` on `grid` from the translates with `‖k‖_∞ ≤ K`. With
/// `truncation = None`, `K` grows until the next shell carries less than
/// [`AUTO_TAIL_TARGET`] of the mass.
pub fn periodize(
    f: &CatalogFunction,
    lambda: f64,
    truncation: Option<usize>,
    grid: &Grid,
) -> Result<PeriodizedFunction> {
    if !f.is_admissible() {
        return Err(Error::InvalidParameter(format!("`{}` is not admissible", f.id())));
    }
    if !grid.is_periodic() {
        return Err(Error::NonPeriodicGrid);
    }
    if grid.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: grid.dim(),
        });
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter(format!("λ must be positive, got {lambda}")));
    }
    if truncation == Some(0) {
        return Err(Error::InvalidParameter("truncation K must be at least 1".into()));
    }

    let mut sum = shell(f, lambda, 0, grid);
    let mut k = 0;
    let tail = loop {
        let next = shell(f, lambda, k + 1, grid);
        let mass = next.norm_sq();
        let stop = match truncation {
            Some(limit) => k == limit,
            None => (k >= 1 && mass < AUTO_TAIL_TARGET * sum.norm_sq()) || k == MAX_TRUNCATION,
        };
        if stop {
            break mass;
        }
        for (a, b) in sum.values_mut().iter_mut().zip(next.values()) {
            *a += b;
        }
        k += 1;
    };
    let norm = sum.norm_sq();
    if !(norm > 0.0) {
        return Err(Error::ZeroNorm);
    }
    if tail >= TAIL_TOLERANCE * norm {
        return Err(Error::PeriodizationTail {
            tail,
            tolerance: TAIL_TOLERANCE * norm,
        });
    }
    Ok(PeriodizedFunction {
        base: f.clone(),
        lambda,
        truncation: k,
        samples: sum,
        tail_bound: tail,
    })
}

/// One `λ` of a convergence sweep. Quantities that could not be computed at
/// this `λ` are `None`, with the reason in `error_message`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub lambda: f64,
    /// `λ² var_A`, tends to `Δ(A_L, f)/‖f‖²`.
    pub scaled_var_a: Option<f64>,
    /// `var_F / λ²`, tends to `Δ(B_L, f)/‖f‖²`.
    pub scaled_var_f: Option<f64>,
    pub up_periodic: Option<f64>,
    /// `|UP_L^𝕋(f_λ^per) - UP_L(f)|`.
    pub error: Option<f64>,
    pub up_gg_periodic: Option<f64>,
    /// `|UP_GG^𝕋(f_λ^per) - UP_GG(f)|`.
    pub error_gg: Option<f64>,
    pub truncation: usize,
    pub error_message: Option<String>,
}

/// Limits that the sweep converges to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepTargets {
    pub delta_a: f64,
    pub delta_b: f64,
    pub up: f64,
    pub up_gg: f64,
}

/// Convergence table of `UP_L^𝕋(f_λ^per)` towards `UP_L(f)` and, when
/// `with_gg`, of `UP_GG^𝕋` towards `UP_GG`. Rows are ordered by `λ`; a
/// vanishing commutator is recorded in the row rather than aborting the sweep.
pub fn convergence_sweep(
    f: &CatalogFunction,
    l: &Direction,
    lambdas: &[f64],
    with_gg: bool,
) -> Result<(SweepTargets, Vec<SweepRow>)> {
    if !l.is_integer() {
        return Err(Error::NonIntegerDirection);
    }
    if lambdas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("λ values must be strictly ascending".into()));
    }
    let m = catalog_moments(f)?;
    let r = m.report(l)?;
    let targets = SweepTargets {
        delta_a: r.delta_a / m.norm_sq,
        delta_b: r.delta_b / m.norm_sq,
        up: r.up,
        up_gg: m.up_gg(),
    };

    let row = |&lambda: &f64| -> Result<SweepRow> {
        let grid = periodic_grid_for(f, lambda)?;
        let p = periodize(f, lambda, None, &grid)?;
        let mut out = SweepRow {
            lambda,
            scaled_var_a: None,
            scaled_var_f: None,
            up_periodic: None,
            error: None,
            up_gg_periodic: None,
            error_gg: None,
            truncation: p.truncation,
            error_message: None,
        };
        match up_periodic(&p.samples, l) {
            Ok(rep) => {
                out.scaled_var_a = Some(lambda * lambda * rep.var_a);
                out.scaled_var_f = Some(rep.var_f / (lambda * lambda));
                out.up_periodic = Some(rep.up);
                out.error = Some((rep.up - targets.up).abs());
            }
            Err(e @ Error::VanishingCommutator { .. }) => out.error_message = Some(e.to_string()),
            Err(e) => return Err(e),
        }
        if with_gg {
            match up_gg_periodic(&p.samples) {
                Ok(gg) => {
                    out.up_gg_periodic = Some(gg.up);
                    out.error_gg = Some((gg.up - targets.up_gg).abs());
                }
                Err(e @ Error::VanishingCommutator { .. }) => {
                    out.error_message.get_or_insert(e.to_string());
                }
                Err(e) => return Err(e),
            }
        }
        Ok(out)
    };
    let rows = lambdas.iter().map(row).collect::<Result<Vec<_>>>()?;
    Ok((targets, rows))
}
