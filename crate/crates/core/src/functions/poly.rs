use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Sparse real multivariate polynomial `Σ c · x^α`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    dim: usize,
    terms: Vec<(f64, Vec<u32>)>,
}

impl Polynomial {
    pub fn new(dim: usize, terms: Vec<(f64, Vec<u32>)>) -> Result<Self> {
        if let Some((_, e)) = terms.iter().find(|(_, e)| e.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: e.len(),
            });
        }
        Ok(Self { dim, terms })
    }

    pub fn constant(dim: usize, c: f64) -> Self {
        Self {
            dim,
            terms: vec![(c, vec![0; dim])],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(f64, Vec<u32>)] {
        &self.terms
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(_, e)| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, e)| c * e.iter().zip(x).map(|(&p, v)| v.powi(p as i32)).product::<f64>())
            .sum()
    }

    /// `∂p/∂x_k` evaluated at `x`.
    pub fn eval_partial(&self, k: usize, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .filter(|(_, e)| e[k] > 0)
            .map(|(c, e)| {
                let mut v = c * e[k] as f64;
                for (j, (&p, &xj)) in e.iter().zip(x).enumerate() {
                    let p = if j == k { p - 1 } else { p };
                    v *= xj.powi(p as i32);
                }
                v
            })
            .sum()
    }

    /// Parity of every term in axis `k`, if all terms agree.
    pub fn axis_parity(&self, k: usize) -> Option<u32> {
        let mut parities = self.terms.iter().filter(|(c, _)| *c != 0.0).map(|(_, e)| e[k] % 2);
        let first = parities.next()?;
        parities.all(|p| p == first).then_some(first)
    }
}

/// `∫_{-1}^{1} x^m e^{-iωx} dx` for small `m`.
pub(crate) fn box_moment_ft(m: u32, omega: f64) -> Complex64 {
    if omega.abs() < 1.0 {
        // Taylor series in ω, only terms with even m + k survive
        let mut acc = Complex64::new(0.0, 0.0);
        let mut coeff = Complex64::new(1.0, 0.0); // (-iω)^k / k!
        for k in 0..40u32 {
            if (m + k) % 2 == 0 {
                acc += coeff * (2.0 / (m + k + 1) as f64);
            }
            coeff *= Complex64::new(0.0, -omega) / (k + 1) as f64;
        }
        acc
    } else {
        // integration by parts, upward in m
        let iw = Complex64::new(0.0, omega);
        let ep = Complex64::from_polar(1.0, -omega);
        let em = Complex64::from_polar(1.0, omega);
        let mut prev = (em - ep) / iw;
        for j in 1..=m {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            prev = -(ep - em * sign) / iw + prev * (j as f64) / iw;
        }
        prev
    }
}

/// `∫_{[-1,1]^d} p(x) e^{-2πi⟨x,ξ⟩} dx`.
pub(crate) fn box_polynomial_ft(p: &Polynomial, xi: &[f64]) -> Complex64 {
    p.terms()
        .iter()
        .map(|(c, e)| {
            e.iter()
                .zip(xi)
                .map(|(&m, &f)| box_moment_ft(m, 2.0 * PI * f))
                .product::<Complex64>()
                * *c
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad_moment(m: u32, omega: f64) -> Complex64 {
        // composite Simpson, 4000 panels
        let n = 4000;
        let h = 2.0 / n as f64;
        (0..=n)
            .map(|i| {
                let x = -1.0 + i as f64 * h;
                let w = if i == 0 || i == n {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                Complex64::from_polar(x.powi(m as i32), -omega * x) * (w * h / 3.0)
            })
            .sum()
    }

    #[test]
    fn moment_ft_matches_quadrature_on_both_branches() {
        for m in 0..=4 {
            for &w in &[0.0, 1e-3, 0.7, 0.99, 1.01, 2.5, 9.0, 31.0] {
                let err = (box_moment_ft(m, w) - quad_moment(m, w)).norm();
                assert!(err < 1e-10, "m={m} ω={w} err={err}");
            }
        }
    }

    #[test]
    fn polynomial_partials() {
        let p = Polynomial::new(2, vec![(2.0, vec![3, 1]), (-1.0, vec![0, 2])]).unwrap();
        let x = [0.5, -2.0];
        assert!((p.eval(&x) - (2.0 * 0.125 * -2.0 - 4.0)).abs() < 1e-15);
        assert!((p.eval_partial(0, &x) - 2.0 * 3.0 * 0.25 * -2.0).abs() < 1e-15);
        assert!((p.eval_partial(1, &x) - (2.0 * 0.125 - 2.0 * -2.0)).abs() < 1e-15);
    }

    #[test]
    fn parity() {
        let p = Polynomial::new(2, vec![(1.0, vec![3, 1]), (1.0, vec![1, 2])]).unwrap();
        assert_eq!(p.axis_parity(0), Some(1));
        assert_eq!(p.axis_parity(1), None);
    }
}
