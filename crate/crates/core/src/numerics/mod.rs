//! Grids, tensor-product quadrature, the continuous Fourier transform on a
//! truncated box, and small dense linear algebra.

mod fourier;
mod grid;
mod linalg;

pub use fourier::{continuous_ft, inverse_ft, spectral_directional_derivative, TorusSpectrum};
pub use grid::{integrate, Grid, SampledFunction};
pub use linalg::{solve_and_det, sym_eig, EigenPair, MatrixSym, Solve};
