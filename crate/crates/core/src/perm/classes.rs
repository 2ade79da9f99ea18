use std::collections::HashMap;

use super::group::PermGroup;
use super::permutation::Permutation;
use super::PermError;

/// Default ceiling on `|G|` for explicit conjugacy-class computation.
pub const DEFAULT_CLASS_LIMIT: u64 = 100_000;

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub representative: Permutation,
    pub size: u64,
}

/// Conjugacy classes of a group, with a lookup from element to class.
#[derive(Clone, Debug)]
pub struct ConjugacyClassTable {
    pub classes: Vec<ConjugacyClass>,
    pub total: u64,
    class_of: HashMap<Permutation, usize>,
}

impl ConjugacyClassTable {
    /// Index of the class containing `g`, if `g` belongs to the group.
    pub fn class_index(&self, g: &Permutation) -> Option<usize> {
        self.class_of.get(g).copied()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// `|C_G(g)| = |G| / |class(g)|`.
    pub fn centralizer_order(&self, class: usize) -> u64 {
        self.total / self.classes[class].size
    }
}

/// Partitions `G` into orbits under conjugation by its generators.
/// Classes appear in order of their first element in the enumeration, so the
/// identity class is always first.
pub fn conjugacy_classes(g: &PermGroup, limit: u64) -> Result<ConjugacyClassTable, PermError> {
    let order = match g.order_u64() {
        Some(n) if n <= limit => n,
        _ => {
            return Err(PermError::LimitExceeded {
                what: "conjugacy classes",
                order: g.order().to_string(),
                limit,
            })
        }
    };
    let elements = g.elements(limit)?;
    let index: HashMap<&Permutation, usize> =
        elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut class_id = vec![usize::MAX; elements.len()];
    let mut classes = Vec::new();
    for start in 0..elements.len() {
        if class_id[start] != usize::MAX {
            continue;
        }
        let cid = classes.len();
        class_id[start] = cid;
        let mut stack = vec![start];
        let mut size = 1u64;
        while let Some(i) = stack.pop() {
            for s in g.generators() {
                let c = elements[i].conjugate_by(s);
                let j = index[&c];
                if class_id[j] == usize::MAX {
                    class_id[j] = cid;
                    size += 1;
                    stack.push(j);
                }
            }
        }
        classes.push(ConjugacyClass {
            representative: elements[start].clone(),
            size,
        });
    }
    drop(index);
    let class_of = elements.into_iter().zip(class_id).collect();
    Ok(ConjugacyClassTable {
        classes,
        total: order,
        class_of,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(deg: usize, cycles: &[&[usize]]) -> Permutation {
        let cs: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(deg, &cs).unwrap()
    }

    #[test]
    fn s4_classes() {
        let g = PermGroup::new(4, vec![perm(4, &[&[0, 1]]), perm(4, &[&[0, 1, 2, 3]])]).unwrap();
        let t = conjugacy_classes(&g, 1000).unwrap();
        let mut sizes: Vec<u64> = t.classes.iter().map(|c| c.size).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        assert!(t.classes[0].representative.is_identity());
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let g = PermGroup::new(6, vec![perm(6, &[&[0, 1, 2]]), perm(6, &[&[3, 4]])]).unwrap();
        let t = conjugacy_classes(&g, 1000).unwrap();
        assert_eq!(t.len(), 6);
        assert!(t.classes.iter().all(|c| c.size == 1));
    }

    #[test]
    fn limit_is_enforced() {
        let g = PermGroup::new(6, vec![perm(6, &[&[0, 1]]), perm(6, &[&[0, 1, 2, 3, 4, 5]])]).unwrap();
        assert!(conjugacy_classes(&g, 100).is_err());
    }
}
