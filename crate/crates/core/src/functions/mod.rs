//! Analytic test functions and their sampled representations.

mod catalog;
mod custom;
mod parse;
mod poly;

pub use catalog::{CatalogFunction, Direction, DirectionalGaussian, Symmetry};
pub use custom::{load_custom_grid, parse_custom_grid, write_custom_grid};
pub use parse::{parse_function, parse_polynomial};
pub use poly::Polynomial;
