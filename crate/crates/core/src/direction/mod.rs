//! Directions of best and worst localization: the simplex quadratic form for
//! the uncertainty product, the eigenproblem for the sum functional, and a
//! brute-force sweep over the unit sphere.

mod candidates;
mod sphere;

pub use candidates::{build_a_matrix, extremal_directions, Candidate, CandidateSet};
pub use sphere::{sphere_bruteforce, sphere_directions, BruteForce, Objective};

use std::f64::consts::PI;

use crate::localization::MomentSet;
use crate::numerics::{sym_eig, EigenPair, MatrixSym};

/// `M = Cov_t + (2π)² Cov_ξ` with both covariances normalized by `‖f‖²`, so
/// that `LᵀML` is the sum functional for unit `L`.
pub fn build_m_matrix(m: &MomentSet) -> MatrixSym {
    let t = m.time_covariance();
    let f = m.freq_covariance();
    MatrixSym::from_fn(m.dim(), |j, k| t.get(j, k) + 4.0 * PI * PI * f.get(j, k))
}

/// Extremes of `LᵀML` over the unit sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct SumExtremes {
    pub min_value: f64,
    pub min_direction: Vec<f64>,
    pub max_value: f64,
    pub max_direction: Vec<f64>,
    /// `λ_max - λ_min < 1e-8 |λ_max|`: the sum functional does not depend on `L`.
    pub isotropic: bool,
    /// All eigenpairs, ascending.
    pub eigen: Vec<EigenPair>,
}

/// Minimum and maximum of the sum functional from the extreme eigenpairs of `M`.
pub fn optimize_sum_functional(m: &MatrixSym) -> SumExtremes {
    let mut eigen = sym_eig(m);
    for p in eigen.iter_mut() {
        canonical_sign(&mut p.vector);
    }
    let lo = eigen.first().cloned().expect("nonempty matrix");
    let hi = eigen.last().cloned().expect("nonempty matrix");
    SumExtremes {
        isotropic: hi.value - lo.value < 1e-8 * hi.value.abs(),
        min_value: lo.value,
        min_direction: lo.vector,
        max_value: hi.value,
        max_direction: hi.vector,
        eigen,
    }
}

/// Flips `v` so its largest-magnitude component is positive.
pub(crate) fn canonical_sign(v: &mut [f64]) {
    let lead = v
        .iter()
        .copied()
        .fold(0.0f64, |a, b| if b.abs() > a.abs() + 1e-12 { b } else { a });
    if lead < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::CatalogFunction;
    use crate::localization::catalog_moments;

    fn m_of(f: &CatalogFunction) -> MatrixSym {
        build_m_matrix(&catalog_moments(f).unwrap())
    }

    #[test]
    fn gaussian_m_is_diagonal() {
        let m = m_of(&CatalogFunction::gaussian_diag(&[1.0, 4.0]).unwrap());
        assert!((m.get(0, 0) - 1.25).abs() < 1e-8);
        assert!((m.get(1, 1) - 4.0625).abs() < 1e-8);
        assert!(m.get(0, 1).abs() < 1e-12);
        let s = optimize_sum_functional(&m);
        assert!((s.min_value - 1.25).abs() < 1e-8);
        assert!((s.max_value - 4.0625).abs() < 1e-8);
        assert!((s.min_direction[0] - 1.0).abs() < 1e-12);
        assert!((s.max_direction[1] - 1.0).abs() < 1e-12);
        assert!(!s.isotropic);
    }

    #[test]
    fn shift_does_not_change_m() {
        use crate::localization::moments;
        use crate::numerics::{continuous_ft, Grid, SampledFunction};
        use num_complex::Complex64;
        let g = Grid::new(2, 10.0, 256).unwrap();
        let make = |x0: f64, y0: f64| {
            let f = SampledFunction::from_fn(g, |x| {
                Complex64::new((-(x[0] - x0).powi(2) - 4.0 * (x[1] - y0).powi(2)).exp(), 0.0)
            });
            build_m_matrix(&moments(&f, &continuous_ft(&f).unwrap()).unwrap())
        };
        let a = make(0.0, 0.0);
        let b = make(0.8, -0.5);
        for j in 0..2 {
            for k in 0..2 {
                assert!((a.get(j, k) - b.get(j, k)).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn example1_is_isotropic() {
        let s = optimize_sum_functional(&m_of(&CatalogFunction::example1()));
        assert!(s.isotropic);
        assert!((s.min_value - 3.6).abs() < 1e-4);
    }

    #[test]
    fn sign_convention() {
        let mut v = vec![-0.6, 0.8];
        canonical_sign(&mut v);
        assert_eq!(v, vec![-0.6, 0.8]);
        let mut w = vec![0.0, -1.0];
        canonical_sign(&mut w);
        assert_eq!(w, vec![0.0, 1.0]);
    }
}
