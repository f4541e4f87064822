//! Fourier–Hermite expansions and the uncertainty functionals computed from
//! their coefficients.

mod basis;
mod expansion;

pub use basis::{gauss_hermite, hermite_function, hermite_values};
pub use expansion::{
    expand, expand_with_tolerance, hermite_variances, odd_symmetry_check, sum_functional_hermite,
    up_hermite, ExpansionSource, HermiteExpansion, HermiteSum, DEFAULT_TAIL_TOLERANCE, MAX_CUTOFF,
    MAX_EXPANSION_DIM,
};
