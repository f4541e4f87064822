use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::functions::Direction;
use crate::numerics::{SampledFunction, TorusSpectrum};

fn check(g: &SampledFunction, l: &Direction) -> Result<()> {
    if !g.grid().is_periodic() {
        return Err(Error::NonPeriodicGrid);
    }
    if l.dim() != g.grid().dim() {
        return Err(Error::DimensionMismatch {
            expected: g.grid().dim(),
            got: l.dim(),
        });
    }
    if !l.is_integer() {
        return Err(Error::NonIntegerDirection);
    }
    Ok(())
}

fn weighted(g: &SampledFunction, l: &Direction, phase: impl Fn(f64) -> f64) -> f64 {
    g.integrate_with(|x, v| Complex64::new(phase(l.dot(x)) * v.norm_sqr(), 0.0))
        .re
}

/// `K_L(g) = 2 ∫_𝕋 sin²(π⟨L,x⟩) |g|²`.
pub fn k_functional(g: &SampledFunction, l: &Direction) -> Result<f64> {
    check(g, l)?;
    Ok(weighted(g, l, |t| 2.0 * (PI * t).sin().powi(2)))
}

/// `M_L(g) = i ∫_𝕋 sin(2π⟨L,x⟩) |g|²`, purely imaginary.
pub fn m_functional(g: &SampledFunction, l: &Direction) -> Result<Complex64> {
    check(g, l)?;
    Ok(Complex64::new(0.0, weighted(g, l, |t| (2.0 * PI * t).sin())))
}

/// Angular and frequency variances of a torus function along an integer
/// direction.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicReport {
    pub direction: Direction,
    /// `‖g‖⁴ / |⟨A_L g, g⟩|² - 1`.
    pub var_a: f64,
    /// The same variance through `K_L` and `M_L`.
    pub var_a_km: f64,
    /// `‖B_L g‖²/‖g‖² - |⟨B_L g, g⟩|²/‖g‖⁴`.
    pub var_f: f64,
    /// `var_A var_F / ‖L‖⁴`.
    pub up: f64,
    /// `⟨A_L g, g⟩`.
    pub commutator: Complex64,
}

fn angular(g: &SampledFunction, l: &Direction, norm_sq: f64) -> Result<Complex64> {
    let c = g.integrate_with(|x, v| Complex64::from_polar(v.norm_sqr(), 2.0 * PI * l.dot(x)));
    let threshold = 1e-10 * norm_sq;
    if c.norm() <= threshold {
        return Err(Error::VanishingCommutator {
            modulus: c.norm(),
            threshold,
        });
    }
    Ok(c)
}

/// `(‖B_L g‖², ⟨B_L g, g⟩)` from the Fourier coefficients: `B_L` multiplies
/// `c_k` by `-⟨L,k⟩`.
fn frequency_moments(spec: &TorusSpectrum, l: &Direction) -> (f64, f64) {
    let mut second = 0.0;
    let mut first = 0.0;
    spec.for_each(|k, c| {
        let lk: f64 = k.iter().zip(l.components()).map(|(&a, b)| a as f64 * b).sum();
        let p = c.norm_sqr();
        second += lk * lk * p;
        first -= lk * p;
    });
    (second, first)
}

/// Periodic directional uncertainty product of `g`.
pub fn up_periodic(g: &SampledFunction, l: &Direction) -> Result<PeriodicReport> {
    check(g, l)?;
    let ns = g.norm_sq();
    if !(ns > 0.0) {
        return Err(Error::ZeroNorm);
    }
    let c = angular(g, l, ns)?;
    let var_a = ns * ns / c.norm_sqr() - 1.0;

    let k = k_functional(g, l)?;
    let m = m_functional(g, l)?;
    let m_sq = (m * m).re;
    let var_a_km = (2.0 * ns * k - k * k + m_sq) / ((ns - k).powi(2) - m_sq);

    let spec = TorusSpectrum::of(g)?;
    let (second, first) = frequency_moments(&spec, l);
    let var_f = (second / ns - first * first / (ns * ns)).max(0.0);
    let l2 = l.norm() * l.norm();
    Ok(PeriodicReport {
        direction: l.clone(),
        var_a,
        var_a_km,
        var_f,
        up: var_a * var_f / (l2 * l2),
        commutator: c,
    })
}

/// Coordinate-operator uncertainty product on the torus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodicGgReport {
    /// `Σ(‖g‖⁴ - |⟨A_j g, g⟩|²) / (Σ|⟨A_j g, g⟩|)²`.
    pub var_a: f64,
    /// `Σ_j (‖B_j g‖²/‖g‖² - |⟨B_j g, g⟩|²/‖g‖⁴)`.
    pub var_f: f64,
    pub up: f64,
}

/// `UP_GG^𝕋(g)`; every coordinate commutator must be nonzero.
pub fn up_gg_periodic(g: &SampledFunction) -> Result<PeriodicGgReport> {
    if !g.grid().is_periodic() {
        return Err(Error::NonPeriodicGrid);
    }
    let d = g.grid().dim();
    let ns = g.norm_sq();
    if !(ns > 0.0) {
        return Err(Error::ZeroNorm);
    }
    let spec = TorusSpectrum::of(g)?;
    let mut num = 0.0;
    let mut den = 0.0;
    let mut var_f = 0.0;
    for j in 0..d {
        let e = Direction::axis(d, j);
        let c = angular(g, &e, ns)?;
        num += ns * ns - c.norm_sqr();
        den += c.norm();
        let (second, first) = frequency_moments(&spec, &e);
        var_f += second / ns - first * first / (ns * ns);
    }
    let var_a = num / (den * den);
    Ok(PeriodicGgReport {
        var_a,
        var_f,
        up: var_a * var_f,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Grid;

    fn trig(n: usize) -> SampledFunction {
        SampledFunction::from_fn(Grid::periodic(1, n).unwrap(), |x| {
            Complex64::new(1.0 + 0.5 * (2.0 * PI * x[0]).cos(), 0.0)
        })
    }

    #[test]
    fn constant_function_functionals() {
        let g = SampledFunction::from_fn(Grid::periodic(1, 32).unwrap(), |_| Complex64::new(1.0, 0.0));
        let l = Direction::axis(1, 0);
        assert!((k_functional(&g, &l).unwrap() - 1.0).abs() < 1e-14);
        assert!(m_functional(&g, &l).unwrap().norm() < 1e-14);
        assert!(matches!(
            up_periodic(&g, &l),
            Err(Error::VanishingCommutator { .. })
        ));
    }

    #[test]
    fn trig_polynomial_against_coefficient_formulas() {
        // c_0 = 1, c_{±1} = 1/4
        let c = [(-1i64, 0.25f64), (0, 1.0), (1, 0.25)];
        let ns: f64 = c.iter().map(|(_, v)| v * v).sum();
        let shift: f64 = c
            .iter()
            .map(|&(k, v)| v * c.iter().find(|(j, _)| *j == k - 1).map_or(0.0, |(_, u)| *u))
            .sum();
        let var_a = ns * ns / (shift * shift) - 1.0;
        let second: f64 = c.iter().map(|&(k, v)| (k * k) as f64 * v * v).sum();
        let first: f64 = c.iter().map(|&(k, v)| k as f64 * v * v).sum();
        let var_f = second / ns - first * first / (ns * ns);

        let r = up_periodic(&trig(64), &Direction::axis(1, 0)).unwrap();
        assert!((r.var_a - var_a).abs() < 1e-13);
        assert!((r.var_f - var_f).abs() < 1e-13);
        assert!((r.var_a - r.var_a_km).abs() < 1e-10 * r.var_a);
        assert!((r.up - var_a * var_f).abs() < 1e-13);
    }

    #[test]
    fn gg_matches_directional_in_one_dimension() {
        let g = trig(32);
        let gg = up_gg_periodic(&g).unwrap();
        let r = up_periodic(&g, &Direction::axis(1, 0)).unwrap();
        assert!((gg.up - r.up).abs() < 1e-13);
    }

    #[test]
    fn argument_checks() {
        let g = trig(16);
        assert_eq!(
            k_functional(&g, &Direction::new(vec![0.5]).unwrap()).unwrap_err(),
            Error::NonIntegerDirection
        );
        let b = SampledFunction::zeros(Grid::new(1, 1.0, 16).unwrap());
        assert_eq!(up_gg_periodic(&b).unwrap_err(), Error::NonPeriodicGrid);
        let one = SampledFunction::from_fn(Grid::periodic(2, 8).unwrap(), |_| Complex64::new(1.0, 0.0));
        assert!(matches!(
            up_gg_periodic(&one),
            Err(Error::VanishingCommutator { .. })
        ));
    }
}
