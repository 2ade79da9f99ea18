//! Almost-conjugate (Gassmann) subgroups: class-intersection counts,
//! permutation-character comparison, regular embeddings and pair search.

mod action;
mod certificate;
mod lattice;
mod stats;

pub use action::{coset_action_of_subgroup, fix_count_scan, perm_reps_equivalent, FixScan, GroupAction, ScanMode};
pub use certificate::{
    almost_conjugate, coset_fix_count, describe_ambient, every_element_conjugate_into, is_symmetric, ClassEntry,
    ClassMode, GassmannCertificate,
};
pub use lattice::{
    enumerate_subgroups, search_gassmann_pairs, ElementSet, GassmannPair, GroupTable, SubgroupClass,
    DEFAULT_SUBGROUP_LIMIT,
};
pub use stats::{
    order_statistics, regular_embedding, regular_embedding_map, regular_pair_almost_conjugate, OrderStatistics,
    RegularEmbedding,
};

use thiserror::Error;

use crate::perm::PermError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GassmannError {
    #[error("{0}")]
    Perm(#[from] PermError),
    #[error("{0} is not a subgroup of the ambient group")]
    NotASubgroup(&'static str),
    #[error("no feasible class mode: group too large for explicit classes and not symmetric")]
    NoClassMode,
    #[error("group orders differ: {h} and {k}")]
    OrderMismatch { h: u64, k: u64 },
    #[error("inexact division: inputs are inconsistent")]
    InexactDivision,
    #[error("action degrees differ: {left} and {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("action images do not define a homomorphism")]
    NotAHomomorphism,
    #[error("action is not the coset action of {0}")]
    NotACosetAction(&'static str),
    #[error("unsupported action: {0}")]
    UnsupportedAction(&'static str),
}
