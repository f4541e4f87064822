use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;

use super::basis::{gauss_hermite, hermite_row};
use crate::error::{Error, Result};
use crate::functions::CatalogFunction;
use crate::numerics::SampledFunction;

/// Largest cutoff accepted by [`expand`].
pub const MAX_CUTOFF: usize = 16;
/// Largest dimension accepted by [`expand`].
pub const MAX_EXPANSION_DIM: usize = 3;
/// Default tail tolerance for accepted expansions.
pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-6;

const CENTERING_TOL: f64 = 1e-6;

/// Fourier–Hermite coefficients `c_α` for all `α` with `max_k α_k ≤ N`,
/// stored row-major in a tensor of shape `(N+1)^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteExpansion {
    dim: usize,
    cutoff: usize,
    coeffs: Vec<Complex64>,
    norm_sq: f64,
    residual: f64,
}

impl HermiteExpansion {
    /// Expansion with prescribed coefficients; the represented function is the
    /// finite sum itself, so the residual is zero.
    pub fn from_coeffs(dim: usize, cutoff: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        let len = (cutoff + 1).pow(dim as u32);
        if coeffs.len() != len {
            return Err(Error::LengthMismatch {
                expected: len,
                got: coeffs.len(),
            });
        }
        let norm_sq = coeffs.iter().map(|c| c.norm_sqr()).sum();
        Ok(Self {
            dim,
            cutoff,
            coeffs,
            norm_sq,
            residual: 0.0,
        })
    }

    /// Sparse constructor from `(α, c_α)` pairs.
    pub fn from_terms(dim: usize, cutoff: usize, terms: &[(Vec<usize>, Complex64)]) -> Result<Self> {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (cutoff + 1).pow(dim as u32)];
        for (alpha, c) in terms {
            if alpha.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: alpha.len(),
                });
            }
            if alpha.iter().any(|&a| a > cutoff) {
                return Err(Error::InvalidParameter(format!("index {alpha:?} above cutoff")));
            }
            coeffs[ravel(alpha, cutoff + 1)] = *c;
        }
        Self::from_coeffs(dim, cutoff, coeffs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `1 - Σ|c_α|²/‖f‖²`.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// `‖f‖²` of the expanded function.
    pub fn norm_sq(&self) -> f64 {
        self.norm_sq
    }

    /// `Σ|c_α|²`.
    pub fn coeff_norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `c_α`, zero outside `0 ≤ α_k ≤ N`.
    pub fn coeff(&self, alpha: &[isize]) -> Complex64 {
        if alpha.iter().any(|&a| a < 0 || a as usize > self.cutoff) {
            return Complex64::new(0.0, 0.0);
        }
        let idx = alpha
            .iter()
            .fold(0usize, |acc, &a| acc * (self.cutoff + 1) + a as usize);
        self.coeffs[idx]
    }

    /// Multi-indices and coefficients with `|c_α| > tol`.
    pub fn nonzero(&self, tol: f64) -> Vec<(Vec<usize>, Complex64)> {
        let side = self.cutoff + 1;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() > tol)
            .map(|(flat, c)| (unravel(flat, side, self.dim), *c))
            .collect()
    }

    /// Text dump: header `dim cutoff residual`, then `α_1 … α_d re im` for
    /// every `|c_α| > 1e-12`.
    pub fn dump(&self) -> String {
        let mut out = format!("{} {} {:?}\n", self.dim, self.cutoff, self.residual);
        for (alpha, c) in self.nonzero(1e-12) {
            for a in &alpha {
                let _ = write!(out, "{a} ");
            }
            let _ = writeln!(out, "{:?} {:?}", c.re, c.im);
        }
        out
    }

    /// Reads a [`dump`](Self::dump). The norm is taken as `Σ|c|²/(1 - residual)`.
    pub fn parse_dump(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::Parse("expansion dump: missing header".into()))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        let bad = |i: usize, what: &str| Error::Parse(format!("line {}: malformed {what}", i + 1));
        if h.len() != 3 {
            return Err(bad(0, "header"));
        }
        let dim: usize = h[0].parse().map_err(|_| bad(0, "dim"))?;
        let cutoff: usize = h[1].parse().map_err(|_| bad(0, "cutoff"))?;
        let residual: f64 = h[2].parse().map_err(|_| bad(0, "residual"))?;
        let mut terms = Vec::new();
        for (i, line) in lines {
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != dim + 2 {
                return Err(bad(i, "coefficient line"));
            }
            let alpha = f[..dim]
                .iter()
                .map(|s| s.parse::<usize>().map_err(|_| bad(i, "index")))
                .collect::<Result<Vec<_>>>()?;
            let re: f64 = f[dim].parse().map_err(|_| bad(i, "re"))?;
            let im: f64 = f[dim + 1].parse().map_err(|_| bad(i, "im"))?;
            terms.push((alpha, Complex64::new(re, im)));
        }
        let mut e = Self::from_terms(dim, cutoff, &terms)?;
        e.residual = residual;
        e.norm_sq = e.coeff_norm_sq() / (1.0 - residual);
        Ok(e)
    }

    /// `⟨A_L f, f⟩/‖f‖²` and `⟨B_L f, f⟩/‖f‖²` of the finite sum, from the
    /// ladder relations `x h_k = (√k h_{k-1} + √(k+1) h_{k+1})/√2` and
    /// `h_k' = (√k h_{k-1} - √(k+1) h_{k+1})/√2`.
    pub fn centering(&self, l: &[f64]) -> (f64, f64) {
        let mut x_mom = Complex64::new(0.0, 0.0);
        let mut d_mom = Complex64::new(0.0, 0.0);
        let side = self.cutoff + 1;
        for (flat, c) in self.coeffs.iter().enumerate() {
            if c.norm_sqr() == 0.0 {
                continue;
            }
            let alpha = unravel(flat, side, self.dim);
            for (n, &ln) in l.iter().enumerate() {
                let a = alpha[n] as f64;
                let down = self.coeff(&shift(&alpha, n, -1)) * a.sqrt();
                let up = self.coeff(&shift(&alpha, n, 1)) * (a + 1.0).sqrt();
                x_mom += c.conj() * (down + up) * (ln / 2f64.sqrt());
                d_mom += c.conj() * (up - down) * (ln / 2f64.sqrt());
            }
        }
        let ns = self.coeff_norm_sq();
        let alpha_l = 2.0 * PI * x_mom.re / ns;
        let beta_l = (Complex64::new(0.0, 1.0 / (2.0 * PI)) * d_mom).re / ns;
        (alpha_l, beta_l)
    }

    fn check_centering(&self, l: &[f64]) -> Result<()> {
        if l.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: l.len(),
            });
        }
        let (alpha, beta) = self.centering(l);
        if alpha.abs() >= CENTERING_TOL || beta.abs() >= CENTERING_TOL {
            return Err(Error::CenteringViolated { alpha, beta });
        }
        Ok(())
    }

    /// `(Σ_α |Σ_n L_n √α_n c_{α-e_n}|², Σ_α |Σ_n L_n √(α_n+1) c_{α+e_n}|²)`
    /// over `α ∈ [0, N+1]^d`.
    fn ladder_sums(&self, l: &[f64]) -> (f64, f64, f64, f64) {
        let side = self.cutoff + 2;
        let total = side.pow(self.dim as u32);
        let (mut lower, mut upper, mut plus, mut minus) = (0.0, 0.0, 0.0, 0.0);
        for flat in 0..total {
            let alpha = unravel(flat, side, self.dim);
            let mut lo = Complex64::new(0.0, 0.0);
            let mut hi = Complex64::new(0.0, 0.0);
            for (n, &ln) in l.iter().enumerate() {
                let a = alpha[n] as f64;
                lo += self.coeff(&shift(&alpha, n, -1)) * (ln * a.sqrt());
                hi += self.coeff(&shift(&alpha, n, 1)) * (ln * (a + 1.0).sqrt());
            }
            lower += lo.norm_sqr();
            upper += hi.norm_sqr();
            plus += (lo + hi).norm_sqr();
            minus += (lo - hi).norm_sqr();
        }
        (lower, upper, plus, minus)
    }
}

/// Value of the sum functional in coefficient space together with an estimate
/// of the contribution lost to truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermiteSum {
    pub value: f64,
    pub truncation_bound: f64,
}

/// `(2π)^{-2}‖A_L f‖² + (2π)²‖B_L f‖²` from the coefficients.
pub fn sum_functional_hermite(e: &HermiteExpansion, l: &[f64]) -> Result<HermiteSum> {
    e.check_centering(l)?;
    let (lower, upper, _, _) = e.ladder_sums(l);
    let l2: f64 = l.iter().map(|v| v * v).sum();
    let tail_mass = e.residual.max(0.0) * e.norm_sq;
    Ok(HermiteSum {
        value: lower + upper,
        truncation_bound: 2.0 * (2 * e.cutoff + 3) as f64 * l2 * tail_mass * e.dim as f64,
    })
}

/// `(Δ(A_L,f), Δ(B_L,f))` of the finite sum for centred coefficients:
/// `‖⟨L,x⟩f‖² = S₊/2` and `‖∂_L f‖² = S₋/2`.
pub fn hermite_variances(e: &HermiteExpansion, l: &[f64]) -> Result<(f64, f64)> {
    e.check_centering(l)?;
    let (_, _, plus, minus) = e.ladder_sums(l);
    let delta_a = 4.0 * PI * PI * plus / 2.0;
    let delta_b = minus / 2.0 / (4.0 * PI * PI);
    Ok((delta_a, delta_b))
}

/// Directional uncertainty product of the finite sum,
/// `S₊ S₋ / (4 ‖L‖⁴ (Σ|c_α|²)²)`.
pub fn up_hermite(e: &HermiteExpansion, l: &[f64]) -> Result<f64> {
    e.check_centering(l)?;
    let l2: f64 = l.iter().map(|v| v * v).sum();
    if l2 == 0.0 {
        return Err(Error::ZeroDirection);
    }
    let ns = e.coeff_norm_sq();
    if ns == 0.0 {
        return Err(Error::ZeroNorm);
    }
    let (_, _, plus, minus) = e.ladder_sums(l);
    Ok(plus * minus / (4.0 * l2 * l2 * ns * ns))
}

/// Whether every coefficient above `1e-10` sits on an all-odd multi-index,
/// the coefficient form of oddness in each variable.
pub fn odd_symmetry_check(e: &HermiteExpansion) -> bool {
    e.nonzero(1e-10)
        .iter()
        .all(|(alpha, _)| alpha.iter().all(|a| a % 2 == 1))
}

/// Source accepted by [`expand`].
pub enum ExpansionSource<'a> {
    Catalog(&'a CatalogFunction),
    Sampled(&'a SampledFunction),
}

impl<'a> From<&'a CatalogFunction> for ExpansionSource<'a> {
    fn from(f: &'a CatalogFunction) -> Self {
        Self::Catalog(f)
    }
}

impl<'a> From<&'a SampledFunction> for ExpansionSource<'a> {
    fn from(f: &'a SampledFunction) -> Self {
        Self::Sampled(f)
    }
}

/// Fourier–Hermite coefficients up to `cutoff`, rejected when the tail mass
/// exceeds [`DEFAULT_TAIL_TOLERANCE`].
pub fn expand<'a>(f: impl Into<ExpansionSource<'a>>, cutoff: usize) -> Result<HermiteExpansion> {
    expand_with_tolerance(f, cutoff, DEFAULT_TAIL_TOLERANCE)
}

/// As [`expand`] with an explicit tail tolerance.
///
/// Catalog functions use tensor Gauss–Hermite quadrature with `2N+8` nodes per
/// axis and the Gaussian weight factored out; sampled functions use the grid
/// rule.
pub fn expand_with_tolerance<'a>(
    f: impl Into<ExpansionSource<'a>>,
    cutoff: usize,
    tolerance: f64,
) -> Result<HermiteExpansion> {
    let source = f.into();
    let dim = match &source {
        ExpansionSource::Catalog(c) => c.dim(),
        ExpansionSource::Sampled(s) => s.grid().dim(),
    };
    if dim > MAX_EXPANSION_DIM {
        return Err(Error::UnsupportedDimension(dim));
    }
    if cutoff > MAX_CUTOFF {
        return Err(Error::InvalidParameter(format!(
            "cutoff {cutoff} above the limit {MAX_CUTOFF}"
        )));
    }
    let side = cutoff + 1;

    let (coeffs, norm_sq) = match source {
        ExpansionSource::Catalog(func) => {
            if let CatalogFunction::CustomGrid { samples, .. } = func {
                return expand_with_tolerance(samples, cutoff, tolerance);
            }
            let q = 2 * cutoff + 8;
            let (nodes, weights) = gauss_hermite(q);
            // table[k][i] = w_i e^{x_i²/2} h_k(x_i) e^{x_i²/2}, so that
            // Σ_i table[k][i] f(x_i) = ∫ f h_k
            let table: Vec<Vec<f64>> = {
                let mut rows = vec![vec![0.0; q]; side];
                let mut row = vec![0.0; side];
                for (i, (&x, &w)) in nodes.iter().zip(&weights).enumerate() {
                    hermite_row(x, &mut row);
                    let scale = w * (0.5 * x * x).exp();
                    for k in 0..side {
                        rows[k][i] = row[k] * scale;
                    }
                }
                rows
            };
            let mut samples = Vec::with_capacity(q.pow(dim as u32));
            let mut idx = vec![0usize; dim];
            let mut x = vec![0.0; dim];
            for flat in 0..q.pow(dim as u32) {
                let mut rest = flat;
                for k in (0..dim).rev() {
                    idx[k] = rest % q;
                    rest /= q;
                }
                for k in 0..dim {
                    x[k] = nodes[idx[k]];
                }
                samples.push(func.evaluate(&x));
            }
            let coeffs = contract(samples, q, dim, &table);
            let norm_sq = catalog_norm_sq(func)?;
            (coeffs, norm_sq)
        }
        ExpansionSource::Sampled(s) => {
            let grid = s.grid();
            if grid.is_periodic() {
                return Err(Error::PeriodicGrid);
            }
            let n = grid.points_per_axis();
            let weights = grid.axis_weights();
            let table: Vec<Vec<f64>> = {
                let mut rows = vec![vec![0.0; n]; side];
                let mut row = vec![0.0; side];
                for (i, x) in grid.nodes().into_iter().enumerate() {
                    hermite_row(x, &mut row);
                    let g = (-0.5 * x * x).exp() * weights[i];
                    for k in 0..side {
                        rows[k][i] = row[k] * g;
                    }
                }
                rows
            };
            let coeffs = contract(s.values().to_vec(), n, dim, &table);
            (coeffs, s.norm_sq())
        }
    };

    if !(norm_sq > 0.0) {
        return Err(Error::ZeroNorm);
    }
    let captured: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
    let residual = 1.0 - captured / norm_sq;
    if residual > tolerance {
        return Err(Error::TailToleranceExceeded {
            residual,
            tolerance,
        });
    }
    Ok(HermiteExpansion {
        dim,
        cutoff,
        coeffs,
        norm_sq,
        residual,
    })
}

fn catalog_norm_sq(f: &CatalogFunction) -> Result<f64> {
    match f {
        CatalogFunction::GaussianDiag { .. } | CatalogFunction::HermitePure { .. } => Ok(1.0),
        _ => Ok(f.sample(&f.recommended_grid()?)?.norm_sq()),
    }
}

/// Contracts every axis of a `len^dim` tensor against `table[k][i]`, giving a
/// `table.len()^dim` tensor.
fn contract(mut data: Vec<Complex64>, len: usize, dim: usize, table: &[Vec<f64>]) -> Vec<Complex64> {
    let side = table.len();
    let mut shape = vec![len; dim];
    for axis in 0..dim {
        let outer: usize = shape[..axis].iter().product();
        let inner: usize = shape[axis + 1..].iter().product();
        let mut next = vec![Complex64::new(0.0, 0.0); outer * side * inner];
        for o in 0..outer {
            for k in 0..side {
                let row = &table[k];
                for (i, &t) in row.iter().enumerate() {
                    if t == 0.0 {
                        continue;
                    }
                    let src = (o * len + i) * inner;
                    let dst = (o * side + k) * inner;
                    for j in 0..inner {
                        next[dst + j] += data[src + j] * t;
                    }
                }
            }
        }
        data = next;
        shape[axis] = side;
    }
    data
}

fn ravel(alpha: &[usize], side: usize) -> usize {
    alpha.iter().fold(0, |acc, &a| acc * side + a)
}

fn unravel(mut flat: usize, side: usize, dim: usize) -> Vec<usize> {
    let mut alpha = vec![0; dim];
    for k in (0..dim).rev() {
        alpha[k] = flat % side;
        flat /= side;
    }
    alpha
}

fn shift(alpha: &[usize], n: usize, by: isize) -> Vec<isize> {
    alpha
        .iter()
        .enumerate()
        .map(|(k, &a)| a as isize + if k == n { by } else { 0 })
        .collect()
}
