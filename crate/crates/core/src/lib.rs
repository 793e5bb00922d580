//! Minimum-weight matroid bases and their postoptimality analysis.
//!
//! A [`Matroid`] is an independence oracle over labelled ground elements.
//! Given exact rational weights, [`Optimum`] computes a greedy optimum and
//! from it, per element, the min-max weight (the least possible heaviest
//! other element on a circuit through the element), the bottleneck weight
//! and the tolerance. These answer how the optimum reacts to contraction,
//! deletion and reweighting, which reweightings keep a basis optimal, and
//! which elements sit in all, none or some optimal bases.
//!
//! [`oracle`] holds the exhaustive reference used to cross-check all of it
//! on small instances.
//!
//! ```
//! use tropmat::instances::{graphic, GraphDescription};
//! use tropmat::rational::{integer, rational};
//! use tropmat::{parse_rational, Optimum, Weighting};
//!
//! # fn main() -> tropmat::Result<()> {
//! let m = graphic(&GraphDescription::new(3, [("a", 0, 1), ("b", 1, 2), ("c", 0, 2)]))?;
//! let x = Weighting::for_ground(&m, [1, 2, 3].map(integer))?;
//! let opt = Optimum::new(&m, &x)?;
//! let c = m.element("c")?;
//! assert_eq!(opt.minmax(c)?, integer(2));
//! assert_eq!(opt.postopt_value(c, &parse_rational("3/2")?)?, rational(5, 2));
//! # Ok(())
//! # }
//! ```

pub mod element;
pub mod error;
pub mod instances;
pub mod matroid;
pub mod oracle;
pub mod postopt;
pub mod rational;
pub mod tropical;
pub mod weights;

pub use element::{ElementId, ElementSet};
pub use error::{DefectKind, Error, Result};
pub use matroid::{Basis, Circuit, IndependenceOracle, Matroid, MinorSpec};
pub use oracle::{BruteForce, EnumerationCap, NextBestMode};
pub use postopt::{
    AdversarialPerturbation, KirchhoffValues, LocalSensitivity, Persistency, PersistencyPartition,
    PerturbationReport,
};
pub use rational::{format_rational, parse_rational, Rational};
pub use tropical::{ElementAnalysis, OptResult, Optimum};
pub use weights::Weighting;
