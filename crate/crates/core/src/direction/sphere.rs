use std::f64::consts::PI;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::localization::MomentSet;

/// Quantity swept by [`sphere_bruteforce`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    /// `UP_L`.
    Up,
    /// `(2π)^{-2} Δ_A + (2π)² Δ_B`, normalized.
    SumFunctional,
}

/// Extremes found on a finite set of unit directions.
#[derive(Debug, Clone, PartialEq)]
pub struct BruteForce {
    pub min: f64,
    pub max: f64,
    pub argmin: Vec<f64>,
    pub argmax: Vec<f64>,
    /// Gradient bound times covering radius of the direction set.
    pub error_bound: f64,
    pub samples: usize,
}

/// `resolution` unit directions: equally spaced angles on `[0, π)` for `d = 2`
/// (enough since every objective is even in `L`), a Fibonacci lattice on the
/// sphere for `d = 3`.
pub fn sphere_directions(dim: usize, resolution: usize) -> Result<Vec<Vec<f64>>> {
    if resolution == 0 {
        return Err(Error::InvalidParameter("resolution must be positive".into()));
    }
    match dim {
        2 => Ok((0..resolution)
            .map(|i| {
                let t = PI * i as f64 / resolution as f64;
                vec![t.cos(), t.sin()]
            })
            .collect()),
        3 => {
            let golden = PI * (3.0 - 5f64.sqrt());
            let n = resolution as f64;
            Ok((0..resolution)
                .map(|i| {
                    let z = 1.0 - (2.0 * i as f64 + 1.0) / n;
                    let r = (1.0 - z * z).max(0.0).sqrt();
                    let phi = golden * i as f64;
                    vec![r * phi.cos(), r * phi.sin(), z]
                })
                .collect())
        }
        d => Err(Error::UnsupportedDimension(d)),
    }
}

fn covering_radius(dim: usize, resolution: usize) -> f64 {
    let n = resolution as f64;
    if dim == 2 {
        PI / (2.0 * n)
    } else {
        // each lattice point owns an area of about 4π/N
        2.0 * (4.0 / n).sqrt()
    }
}

/// Sweeps `objective` over [`sphere_directions`] using the moment quadratic
/// forms, an oracle independent of both extremal-direction procedures.
pub fn sphere_bruteforce(m: &MomentSet, objective: Objective, resolution: usize) -> Result<BruteForce> {
    let d = m.dim();
    let dirs = sphere_directions(d, resolution)?;
    let tc = m.time_covariance();
    let fc = m.freq_covariance();
    let c = 4.0 * PI * PI;
    let eval = |l: &Vec<f64>| -> f64 {
        let a = (c * tc.quadratic_form(l)).max(0.0);
        let b = fc.quadratic_form(l).max(0.0);
        match objective {
            Objective::Up => a * b,
            Objective::SumFunctional => a / c + c * b,
        }
    };
    #[cfg(feature = "parallel")]
    let values: Vec<f64> = dirs.par_iter().map(eval).collect();
    #[cfg(not(feature = "parallel"))]
    let values: Vec<f64> = dirs.iter().map(eval).collect();

    let (mut lo, mut hi) = (0, 0);
    for (i, v) in values.iter().enumerate() {
        if *v < values[lo] {
            lo = i;
        }
        if *v > values[hi] {
            hi = i;
        }
    }

    // |∂_t (LᵀPL)| ≤ 2‖P‖ along the sphere; Frobenius norms bound spectral ones
    let p = c * tc.norm();
    let q = fc.norm();
    let pmax = c * tc.max_abs() * d as f64;
    let qmax = fc.max_abs() * d as f64;
    let grad = match objective {
        Objective::Up => 2.0 * (p * qmax + pmax * q),
        Objective::SumFunctional => 2.0 * (p / c + c * q),
    };
    Ok(BruteForce {
        min: values[lo],
        max: values[hi],
        argmin: dirs[lo].clone(),
        argmax: dirs[hi].clone(),
        error_bound: grad * covering_radius(d, resolution),
        samples: resolution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::CatalogFunction;
    use crate::localization::catalog_moments;

    #[test]
    fn gaussian_up_extremes() {
        let m = catalog_moments(&CatalogFunction::gaussian_diag(&[1.0, 4.0]).unwrap()).unwrap();
        let b = sphere_bruteforce(&m, Objective::Up, 100_000).unwrap();
        assert!((b.min - 0.25).abs() < 1e-6);
        assert!((b.max - 0.390625).abs() < 1e-5);
        assert!((b.argmax[0].abs() - b.argmax[1].abs()).abs() < 1e-4);
        assert!(b.error_bound > 0.0);
    }

    #[test]
    fn example_sums() {
        let m = catalog_moments(&CatalogFunction::example1()).unwrap();
        let b = sphere_bruteforce(&m, Objective::SumFunctional, 720).unwrap();
        assert!(b.max - b.min < 1e-8);
        let m2 = catalog_moments(&CatalogFunction::example2()).unwrap();
        let b2 = sphere_bruteforce(&m2, Objective::SumFunctional, 720).unwrap();
        assert!(b2.argmax[0].abs() > 1.0 - 1e-9);
    }

    #[test]
    fn fibonacci_points_are_unit() {
        let dirs = sphere_directions(3, 500).unwrap();
        assert!(dirs
            .iter()
            .all(|v| (v.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12));
        assert_eq!(sphere_directions(4, 10).unwrap_err(), Error::UnsupportedDimension(4));
    }
}
