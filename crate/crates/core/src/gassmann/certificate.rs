use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::perm::{conjugacy_classes, CycleType, PermGroup, DEFAULT_CLASS_LIMIT, DEFAULT_ENUMERATION_LIMIT};

use super::action::{fix_count_scan, GroupAction};
use super::GassmannError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub key: String,
    #[serde(rename = "inH")]
    pub in_h: u64,
    #[serde(rename = "inK")]
    pub in_k: u64,
}

/// Per-class intersection counts `|C∩H|`, `|C∩K|` for the classes meeting
/// `H ∪ K`. The verdict is true iff every row agrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GassmannCertificate {
    pub ambient: String,
    pub classes: Vec<ClassEntry>,
    pub verdict: bool,
}

impl GassmannCertificate {
    pub fn new(ambient: String, classes: Vec<ClassEntry>) -> Self {
        let verdict = classes.iter().all(|c| c.in_h == c.in_k);
        GassmannCertificate {
            ambient,
            classes,
            verdict,
        }
    }

    pub fn total_h(&self) -> u64 {
        self.classes.iter().map(|c| c.in_h).sum()
    }

    pub fn total_k(&self) -> u64 {
        self.classes.iter().map(|c| c.in_k).sum()
    }

    /// The certificate for `(K, H)`.
    pub fn swapped(&self) -> Self {
        let classes = self
            .classes
            .iter()
            .map(|c| ClassEntry {
                key: c.key.clone(),
                in_h: c.in_k,
                in_k: c.in_h,
            })
            .collect();
        GassmannCertificate::new(self.ambient.clone(), classes)
    }
}

/// How the conjugacy classes of the ambient group are identified.
#[derive(Clone, Copy, Debug)]
pub enum ClassMode<'a> {
    /// Explicit classes if `|G|` is within the class limit, else cycle types
    /// if `G` is symmetric.
    Auto,
    /// Conjugation orbits, keyed by class representative.
    Explicit,
    /// `G = Sym(degree)`: classes are cycle types.
    CycleType,
    /// Full scan of `G` in its actions on `G/H` and `G/K`; buckets are keyed
    /// by natural cycle type and the two fixed-point counts.
    FixCountScan {
        h_action: &'a GroupAction,
        k_action: &'a GroupAction,
    },
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(i))
}

pub fn is_symmetric(g: &PermGroup) -> bool {
    *g.order() == factorial(g.degree())
}

/// Short description of an ambient group for certificates.
pub fn describe_ambient(g: &PermGroup) -> String {
    if is_symmetric(g) {
        format!("S{}", g.degree())
    } else {
        format!("group of order {} on {} points", g.order(), g.degree())
    }
}

fn check_subgroup(g: &PermGroup, h: &PermGroup, which: &'static str) -> Result<(), GassmannError> {
    if h.degree() != g.degree() || !h.is_subgroup_of(g) {
        return Err(GassmannError::NotASubgroup(which));
    }
    Ok(())
}

/// Condition (2) of almost-conjugacy: `|C∩H| = |C∩K|` for every class `C` of `G`.
pub fn almost_conjugate(
    g: &PermGroup,
    h: &PermGroup,
    k: &PermGroup,
    mode: ClassMode<'_>,
) -> Result<(bool, GassmannCertificate), GassmannError> {
    check_subgroup(g, h, "H")?;
    check_subgroup(g, k, "K")?;
    let mode = match mode {
        ClassMode::Auto => {
            if g.order_u64().is_some_and(|n| n <= DEFAULT_CLASS_LIMIT) {
                ClassMode::Explicit
            } else if is_symmetric(g) {
                ClassMode::CycleType
            } else {
                return Err(GassmannError::NoClassMode);
            }
        }
        m => m,
    };
    let cert = match mode {
        ClassMode::Explicit => explicit_certificate(g, h, k)?,
        ClassMode::CycleType => {
            if !is_symmetric(g) {
                return Err(GassmannError::NoClassMode);
            }
            cycle_type_certificate(g, h, k)?
        }
        ClassMode::FixCountScan { h_action, k_action } => scan_certificate(g, h, k, h_action, k_action)?,
        ClassMode::Auto => unreachable!(),
    };
    Ok((cert.verdict, cert))
}

fn explicit_certificate(g: &PermGroup, h: &PermGroup, k: &PermGroup) -> Result<GassmannCertificate, GassmannError> {
    let table = conjugacy_classes(g, DEFAULT_CLASS_LIMIT)?;
    let mut counts = vec![(0u64, 0u64); table.len()];
    h.for_each_element(DEFAULT_CLASS_LIMIT, |x| counts[table.class_index(x).unwrap()].0 += 1)?;
    k.for_each_element(DEFAULT_CLASS_LIMIT, |x| counts[table.class_index(x).unwrap()].1 += 1)?;
    let classes = counts
        .iter()
        .enumerate()
        .filter(|(_, c)| c.0 + c.1 > 0)
        .map(|(i, &(in_h, in_k))| ClassEntry {
            key: table.classes[i].representative.to_cycle_string(),
            in_h,
            in_k,
        })
        .collect();
    Ok(GassmannCertificate::new(describe_ambient(g), classes))
}

fn cycle_type_counts(h: &PermGroup) -> Result<BTreeMap<CycleType, u64>, GassmannError> {
    Ok(h.par_fold_elements(
        DEFAULT_ENUMERATION_LIMIT,
        BTreeMap::new,
        |acc, x| *acc.entry(x.cycle_type()).or_insert(0) += 1,
        |mut a, b| {
            for (key, v) in b {
                *a.entry(key).or_insert(0) += v;
            }
            a
        },
    )?)
}

fn cycle_type_certificate(g: &PermGroup, h: &PermGroup, k: &PermGroup) -> Result<GassmannCertificate, GassmannError> {
    let ch = cycle_type_counts(h)?;
    let ck = cycle_type_counts(k)?;
    let keys: std::collections::BTreeSet<&CycleType> = ch.keys().chain(ck.keys()).collect();
    let classes = keys
        .into_iter()
        .map(|t| ClassEntry {
            key: t.label(),
            in_h: ch.get(t).copied().unwrap_or(0),
            in_k: ck.get(t).copied().unwrap_or(0),
        })
        .collect();
    Ok(GassmannCertificate::new(describe_ambient(g), classes))
}

fn scan_certificate(
    g: &PermGroup,
    h: &PermGroup,
    k: &PermGroup,
    h_action: &GroupAction,
    k_action: &GroupAction,
) -> Result<GassmannCertificate, GassmannError> {
    let g_order = g.order_u64().ok_or(GassmannError::NoClassMode)?;
    for (sub, action, which) in [(h, h_action, "H"), (k, k_action, "K")] {
        if !action.is_coset_action_of(g, sub)? {
            return Err(GassmannError::NotACosetAction(which));
        }
    }
    let scan = fix_count_scan(g, h_action, k_action)?;
    let (oh, ok) = (h.order_u64().unwrap(), k.order_u64().unwrap());
    // Σ_{x∈T} fix_{G/H}(x) = |T∩H|·|G|/|H| for any union of classes T.
    let exact = |sum: u64, sub: u64| -> Result<u64, GassmannError> {
        let num = sum as u128 * sub as u128;
        if num % g_order as u128 != 0 {
            return Err(GassmannError::InexactDivision);
        }
        Ok((num / g_order as u128) as u64)
    };
    let mut classes = Vec::new();
    for ((ct, f1, f2), count) in &scan.buckets {
        if *f1 == 0 && *f2 == 0 {
            continue;
        }
        classes.push(ClassEntry {
            key: format!("{}[{}:{}]", ct.label(), f1, f2),
            in_h: exact(count * f1, oh)?,
            in_k: exact(count * f2, ok)?,
        });
    }
    Ok(GassmannCertificate::new(describe_ambient(g), classes))
}

/// Number of cosets of `H` fixed by `g`: `|C∩H|·|C_G(g)|/|H|` for the class `C` of `g`.
pub fn coset_fix_count(class_h_count: u64, centralizer_order: u64, subgroup_order: u64) -> Result<u64, GassmannError> {
    let num = class_h_count as u128 * centralizer_order as u128;
    if subgroup_order == 0 || num % subgroup_order as u128 != 0 {
        return Err(GassmannError::InexactDivision);
    }
    Ok((num / subgroup_order as u128) as u64)
}

/// Condition (1): every element of `H` is conjugate in `G` to an element of `K`.
pub fn every_element_conjugate_into(g: &PermGroup, h: &PermGroup, k: &PermGroup) -> Result<bool, GassmannError> {
    let table = conjugacy_classes(g, DEFAULT_CLASS_LIMIT)?;
    let mut meets_k = HashSet::new();
    k.for_each_element(DEFAULT_CLASS_LIMIT, |x| {
        meets_k.insert(table.class_index(x).unwrap());
    })?;
    let mut ok = true;
    h.for_each_element(DEFAULT_CLASS_LIMIT, |x| {
        ok &= meets_k.contains(&table.class_index(x).unwrap());
    })?;
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn p(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, &cycles.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn s4() -> PermGroup {
        PermGroup::new(4, vec![p(4, &[&[0, 1]]), p(4, &[&[0, 1, 2, 3]])]).unwrap()
    }

    #[test]
    fn transposition_versus_double_transposition() {
        let g = s4();
        let h = PermGroup::new(4, vec![p(4, &[&[0, 1]])]).unwrap();
        let k = PermGroup::new(4, vec![p(4, &[&[0, 1], &[2, 3]])]).unwrap();
        for mode in [ClassMode::Explicit, ClassMode::CycleType] {
            let (v, cert) = almost_conjugate(&g, &h, &k, mode).unwrap();
            assert!(!v);
            assert_eq!(cert.total_h(), 2);
            assert_eq!(cert.total_k(), 2);
            assert_eq!(cert.swapped().swapped(), cert);
        }
    }

    #[test]
    fn conjugate_subgroups_agree() {
        let g = s4();
        let h = PermGroup::new(4, vec![p(4, &[&[0, 1]])]).unwrap();
        let k = PermGroup::new(4, vec![p(4, &[&[2, 3]])]).unwrap();
        assert!(almost_conjugate(&g, &h, &k, ClassMode::Auto).unwrap().0);
        assert!(every_element_conjugate_into(&g, &h, &k).unwrap());
    }

    #[test]
    fn rejects_non_subgroup() {
        let g = PermGroup::new(4, vec![p(4, &[&[0, 1, 2, 3]])]).unwrap();
        let h = PermGroup::new(4, vec![p(4, &[&[0, 1]])]).unwrap();
        assert!(matches!(
            almost_conjugate(&g, &h, &g, ClassMode::Auto),
            Err(GassmannError::NotASubgroup("H"))
        ));
    }

    #[test]
    fn cycle_type_mode_needs_symmetric_ambient() {
        let g = PermGroup::new(4, vec![p(4, &[&[0, 1, 2, 3]])]).unwrap();
        assert!(matches!(
            almost_conjugate(&g, &g, &g, ClassMode::CycleType),
            Err(GassmannError::NoClassMode)
        ));
    }

    #[test]
    fn fix_count_formula() {
        // S4, H = <(1 2)>, g a transposition
        assert_eq!(coset_fix_count(1, 4, 2).unwrap(), 2);
        assert_eq!(coset_fix_count(1, 24, 2).unwrap(), 12);
        assert_eq!(coset_fix_count(0, 4, 2).unwrap(), 0);
        assert!(coset_fix_count(1, 3, 2).is_err());
    }
}
