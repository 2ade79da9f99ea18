//! Finitely presented groups: words, presentations, coset enumeration,
//! Reidemeister–Schreier rewriting and homomorphisms to permutation groups.

mod hom;
mod parse;
mod presentation;
mod schreier;
mod todd_coxeter;
mod word;

pub use hom::{
    coset_table_from_hom, eval_word, hom_search, HomSearch, HomomorphismSpec, MAX_HOM_INDEX,
};
pub use parse::{parse_presentation, parse_words};
pub use presentation::Presentation;
pub use schreier::{abelianized_relation_matrix, coset_action, reidemeister_schreier};
pub use todd_coxeter::{todd_coxeter, CosetTable, DEFAULT_MAX_COSETS};
pub use word::{Letter, Word};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FpError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("exponent 0 is not allowed")]
    ZeroExponent,
    #[error("generator index {index} out of range for {count} generators")]
    InvalidGenerator { index: usize, count: usize },
    #[error("coset limit exceeded ({limit} cosets); index unknown")]
    CosetLimit { limit: usize },
    #[error("coset table is incomplete")]
    IncompleteTable,
    #[error("index {index} exceeds the limit {limit}")]
    IndexTooLarge { index: String, limit: usize },
    #[error("generator images do not satisfy relator {0}")]
    NotAHomomorphism(String),
    #[error("expected {expected} generator images, found {found}")]
    ImageCount { expected: usize, found: usize },
    #[error("{0}")]
    Perm(#[from] crate::perm::PermError),
}
