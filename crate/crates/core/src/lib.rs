//! Polynomial *-algebras on the quantum spaces of symmetric and general
//! 2x2 matrices: exact normal forms, truncated operator models of their
//! bounded representations, coaction composites and spectral analysis.

pub mod algebra;
pub mod analysis;
pub mod catalog;
pub mod coaction;
pub mod error;
pub mod numeric;
pub mod orbit;

pub use algebra::{Algebra, Generator, LaurentScalar, NCPoly, Presentation, Word};
pub use catalog::{Printing, SeriesId, Simplest, Su2Kind};
pub use error::{Error, Result};
pub use numeric::{RepInstance, Space, TruncOp};
