use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest supported dimension.
pub const MAX_DIM: usize = 6;

/// Upper bound on the total number of grid nodes (`n^d`).
pub const MAX_POINTS: usize = 1 << 24;

/// A uniform tensor grid.
///
/// Non-periodic grids cover the closed box `[-R, R]^d` with `n` nodes per axis
/// (spacing `2R/(n-1)`, both endpoints are nodes). Periodic grids cover the torus
/// `[-1/2, 1/2)^d` with spacing `1/n`.
///
/// Samples are stored in row-major order: axis 0 varies slowest, so the flat
/// index of `(i_0, .., i_{d-1})` is `sum_k i_k * n^(d-1-k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    dim: usize,
    halfwidth: f64,
    points_per_axis: usize,
    periodic: bool,
}

impl Grid {
    pub fn new(dim: usize, halfwidth: f64, points_per_axis: usize) -> Result<Self> {
        let grid = Self {
            dim,
            halfwidth,
            points_per_axis,
            periodic: false,
        };
        grid.validate()?;
        Ok(grid)
    }

    /// Grid on the torus `[-1/2, 1/2)^d`.
    pub fn periodic(dim: usize, points_per_axis: usize) -> Result<Self> {
        let grid = Self {
            dim,
            halfwidth: 0.5,
            points_per_axis,
            periodic: true,
        };
        grid.validate()?;
        Ok(grid)
    }

    fn validate(&self) -> Result<()> {
        if self.dim == 0 || self.dim > MAX_DIM {
            return Err(Error::InvalidGrid(format!(
                "dimension {} outside 1..={MAX_DIM}",
                self.dim
            )));
        }
        if self.points_per_axis < 4 {
            return Err(Error::InvalidGrid(format!(
                "need at least 4 points per axis, got {}",
                self.points_per_axis
            )));
        }
        if !(self.halfwidth > 0.0 && self.halfwidth.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "halfwidth must be positive, got {}",
                self.halfwidth
            )));
        }
        let total = (0..self.dim).try_fold(1usize, |acc, _| acc.checked_mul(self.points_per_axis));
        match total {
            Some(t) if t <= MAX_POINTS => Ok(()),
            _ => Err(Error::InvalidGrid(format!(
                "{}^{} points exceed the budget of {MAX_POINTS}",
                self.points_per_axis, self.dim
            ))),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfwidth(&self) -> f64 {
        self.halfwidth
    }

    pub fn points_per_axis(&self) -> usize {
        self.points_per_axis
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    /// Total number of nodes, `n^d`.
    pub fn len(&self) -> usize {
        self.points_per_axis.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        let n = self.points_per_axis as f64;
        if self.periodic {
            1.0 / n
        } else {
            2.0 * self.halfwidth / (n - 1.0)
        }
    }

    /// Coordinate of node `i` along any axis.
    pub fn node(&self, i: usize) -> f64 {
        -self.halfwidth + i as f64 * self.spacing()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.points_per_axis).map(|i| self.node(i)).collect()
    }

    /// One-dimensional quadrature weights, spacing included. Trapezoidal on a
    /// box (half weight at both ends), uniform on the torus.
    pub fn axis_weights(&self) -> Vec<f64> {
        let h = self.spacing();
        let n = self.points_per_axis;
        let mut w = vec![h; n];
        if !self.periodic {
            w[0] = 0.5 * h;
            w[n - 1] = 0.5 * h;
        }
        w
    }

    /// Frequency grid paired with this box grid by the discrete transform:
    /// spacing `1/(n h)`, symmetric about zero, same node count. Taking the
    /// dual twice returns the original grid.
    pub fn dual(&self) -> Result<Grid> {
        if self.periodic {
            return Err(Error::PeriodicGrid);
        }
        let n = self.points_per_axis as f64;
        let df = 1.0 / (n * self.spacing());
        Grid::new(self.dim, 0.5 * (n - 1.0) * df, self.points_per_axis)
    }

    /// Multi-index of a flat position.
    pub fn unravel(&self, mut flat: usize, idx: &mut [usize]) {
        let n = self.points_per_axis;
        for k in (0..self.dim).rev() {
            idx[k] = flat % n;
            flat /= n;
        }
    }

    pub fn ravel(&self, idx: &[usize]) -> usize {
        idx.iter()
            .fold(0, |acc, &i| acc * self.points_per_axis + i)
    }

    /// Visit every node in row-major order with its coordinates and tensor
    /// quadrature weight.
    pub fn for_each_node(&self, mut visit: impl FnMut(usize, &[f64], f64)) {
        let nodes = self.nodes();
        let weights = self.axis_weights();
        let mut idx = vec![0usize; self.dim];
        let mut x: Vec<f64> = vec![nodes[0]; self.dim];
        for flat in 0..self.len() {
            let mut w = 1.0;
            for k in 0..self.dim {
                x[k] = nodes[idx[k]];
                w *= weights[idx[k]];
            }
            visit(flat, &x, w);
            // odometer increment, last axis fastest
            for k in (0..self.dim).rev() {
                idx[k] += 1;
                if idx[k] < self.points_per_axis {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    pub fn same_shape(&self, other: &Grid) -> bool {
        self.dim == other.dim
            && self.points_per_axis == other.points_per_axis
            && self.periodic == other.periodic
    }
}

/// Complex samples of a function on a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    grid: Grid,
    values: Vec<Complex64>,
}

impl SampledFunction {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid, mut f: impl FnMut(&[f64]) -> Complex64) -> Self {
        let mut values = Vec::with_capacity(grid.len());
        grid.for_each_node(|_, x, _| values.push(f(x)));
        Self { grid, values }
    }

    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// `∫ |f|²` by the grid rule.
    pub fn norm_sq(&self) -> f64 {
        self.integrate_with(|_, v| Complex64::new(v.norm_sqr(), 0.0)).re
    }

    /// `∫ g(x, f(x)) dx` by the grid rule.
    pub fn integrate_with(&self, mut g: impl FnMut(&[f64], Complex64) -> Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let values = &self.values;
        self.grid
            .for_each_node(|flat, x, w| acc += g(x, values[flat]) * w);
        acc
    }

    /// Rescale so that `∫ |f|² = 1`.
    pub fn normalized(mut self) -> Result<Self> {
        let ns = self.norm_sq();
        if !(ns > 0.0) {
            return Err(Error::ZeroNorm);
        }
        let s = 1.0 / ns.sqrt();
        self.values.iter_mut().for_each(|v| *v *= s);
        Ok(self)
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sq() - 1.0).abs() < 1e-8
    }

    pub fn map(&self, mut f: impl FnMut(&[f64], Complex64) -> Complex64) -> Self {
        let mut out = Vec::with_capacity(self.values.len());
        self.grid
            .for_each_node(|flat, x, _| out.push(f(x, self.values[flat])));
        Self {
            grid: self.grid,
            values: out,
        }
    }
}

/// Tensor-product quadrature of the samples: trapezoidal on a box, Riemann
/// sum on the torus.
pub fn integrate(f: &SampledFunction) -> Complex64 {
    f.integrate_with(|_, v| v)
}
