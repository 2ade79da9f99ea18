//! The mod-2 invariant `S`, `csinv(π; φ)`, CS-condition checks and the
//! catalog of example groups.

mod catalog;
mod csinv;
mod m23;
mod report;
mod verify;

pub use catalog::{
    abelian_group, abelian_groups_of_order, build_16gamma2c1, build_q8abc, catalog, certify_symmetric_coxeter,
    demo_s16, presentation_16gamma2c1, presentation_q8abc, symmetric_coxeter_presentation, symmetric_group,
    CatalogEntry, PRESENTATION_16GAMMA2C1,
};
pub use csinv::{csinv, s_of_group, s_of_perm_group, GroupHandle, NamedGroup, Phi, Pi, PiInput};
pub use m23::{
    build_m23, demo_m23, four_transitive, golay_codewords, golay_heptads, m23_index253_actions, M23Demo,
    DEFAULT_M23_PATH,
};
pub use report::{CsReport, CsVerification, GroupDescription, PhiDescription, Verdict};
pub use verify::{check_cs_fp, verify_cs_finite};

use thiserror::Error;

use crate::fp::{FpError, DEFAULT_MAX_COSETS, MAX_HOM_INDEX};
use crate::gassmann::{GassmannCertificate, GassmannError, DEFAULT_SUBGROUP_LIMIT};
use crate::perm::{PermError, DEFAULT_ENUMERATION_LIMIT};

/// Resource bounds shared by the obstruction computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_cosets: usize,
    pub max_group_order: u64,
    pub max_subgroup_enum_order: u64,
    pub max_hom_index: usize,
    pub hom_node_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_cosets: DEFAULT_MAX_COSETS,
            max_group_order: DEFAULT_ENUMERATION_LIMIT,
            max_subgroup_enum_order: DEFAULT_SUBGROUP_LIMIT,
            max_hom_index: MAX_HOM_INDEX,
            hom_node_budget: 10_000_000,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("{0}")]
    Perm(#[from] PermError),
    #[error("{0}")]
    Fp(#[from] FpError),
    #[error("{0}")]
    Gassmann(#[from] GassmannError),
    #[error("H and K are not almost conjugate in G")]
    NotGassmann(Box<GassmannCertificate>),
    #[error("phi is not a surjection onto G: {0}")]
    NotSurjective(String),
    #[error("preimage realization infeasible: {0}")]
    Infeasible(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("construction self-test failed: {0}")]
    SelfTest(String),
    #[error("data file: {0}")]
    DataFile(String),
}
