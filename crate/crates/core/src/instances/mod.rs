//! Concrete matroid families.

mod explicit;
mod graphic;
mod linear;
mod uniform;

pub use explicit::{explicit, ExplicitBases, EXPLICIT_CAP};
pub use graphic::{graphic, GraphDescription, GraphEdge};
pub use linear::{column_rank, linear, RationalMatrix};
pub use uniform::{uniform, UniformParams};
