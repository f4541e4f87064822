//! Directional Heisenberg uncertainty products on `R^d` and the torus.

pub mod direction;
pub mod error;
pub mod functions;
pub mod hermite;
pub mod localization;
pub mod numerics;
pub mod periodization;

pub use error::{Error, Result};
pub use functions::{CatalogFunction, Direction};
pub use numerics::{Grid, SampledFunction};
