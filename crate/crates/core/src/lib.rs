//! Computational group theory for the mod-2 `S` obstruction: permutation
//! groups, finitely presented groups, Smith normal form, almost-conjugate
//! (Gassmann) subgroup pairs and the resulting `csinv` verdicts.

pub mod perm;
pub mod snf;
pub mod fp;
pub mod gassmann;
pub mod obstruction;
