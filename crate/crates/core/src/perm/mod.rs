//! Finite permutation groups.

mod abelian;
mod chain;
mod classes;
mod group;
mod permutation;
mod stabilizer;
pub mod text;

use thiserror::Error;

pub use abelian::{abelian_invariants_of_perm_group, abelianization_order, derived_subgroup, normal_closure};
pub use classes::{conjugacy_classes, ConjugacyClass, ConjugacyClassTable, DEFAULT_CLASS_LIMIT};
pub use group::{build_group, PermGroup, DEFAULT_ENUMERATION_LIMIT};
pub use permutation::{cycle_type, CycleType, Permutation};
pub use stabilizer::setwise_stabilizer;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("images do not form a bijection")]
    NotABijection,
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("{what}: group order {order} exceeds limit {limit}")]
    LimitExceeded {
        what: &'static str,
        order: String,
        limit: u64,
    },
    #[error("syntax error: {0}")]
    Syntax(String),
}
