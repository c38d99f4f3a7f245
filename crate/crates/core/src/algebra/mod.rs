//! Exact symbolic layer: Laurent coefficients, words in the generators and
//! their adjoints, parsing, normal-ordering and the Fock module.

mod fock;
mod generator;
mod laurent;
mod parse;
mod poly;
mod presentation;
mod transport;

pub use fock::{
    action_matrix, fock_act, fock_basis, gram_matrix, is_positive_definite_at, vacuum_expectation,
    FockVector,
};
pub use generator::{Algebra, Generator, Word};
pub use laurent::LaurentScalar;
pub use parse::{parse_expression, parse_scalar};
pub use poly::NCPoly;
pub use presentation::{Presentation, Relation, Strategy};
pub use transport::{pair_transport_identities, TransportIdentity};
