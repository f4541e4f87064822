//! Run specifications, dispatch and output formats behind the `uplocal` binary.

pub mod commands;
pub mod output;
pub mod spec;

pub use commands::{run, Artifacts};
pub use spec::{parse_spec, RunSpec, SpecError};
