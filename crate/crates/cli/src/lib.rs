//! Command-line front end for `tropmat`.
//!
//! Reads a self-contained JSON instance (matroid plus exact weights) and
//! prints solver and postoptimality results as a text table or JSON.

pub mod args;
pub mod commands;
pub mod instance;
pub mod report;
mod table;

pub use args::{Cli, Command, Family, Format};
pub use commands::{run, Output};
pub use instance::{Instance, InstanceFile, MatroidSpec};
pub use report::{AnalysisReport, ElementRecord, PersistencySets};
