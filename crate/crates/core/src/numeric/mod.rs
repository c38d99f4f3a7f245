//! Truncated operator models: sparse banded operators on tensor products
//! of `l2(Z+)`, representation instances, relation residuals on interior
//! vectors, joint spectra and commutants.

mod commutant;
mod export;
mod op;
mod rep;
mod residual;
mod space;
mod spectrum;

pub(crate) use commutant::{null_space, solve_blocks};
pub use commutant::{commutant_dimension, commutant_with, diagonal_family, BlockSystem, NullSpaceReport, MAX_UNKNOWNS};
pub use export::{export_json, export_text, import_json, import_text, OperatorHeader};
pub use op::{graded_space, Band, TruncOp, C64};
pub use rep::RepInstance;
pub use residual::{
    evaluate_word, interior_for, interior_residual, relation_residual_suite, require_representation, word_margin,
    worst_relation, RelationResidual,
};
pub use space::{Factor, FactorKind, Space};
pub use spectrum::{
    joint_decomposition, joint_spectrum, JointDecomposition, JointEigenspace, SparseVec, SpectralOptions, SpectralPoint,
};
