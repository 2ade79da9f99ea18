use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::perm::{PermGroup, Permutation};

use super::certificate::{ClassEntry, GassmannCertificate};
use super::GassmannError;

/// Number of elements of each order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderStatistics {
    pub counts: BTreeMap<u64, u64>,
    pub group_order: u64,
}

pub fn order_statistics(h: &PermGroup, limit: u64) -> Result<OrderStatistics, GassmannError> {
    let mut counts = BTreeMap::new();
    h.for_each_element(limit, |x| *counts.entry(x.order()).or_insert(0) += 1)?;
    Ok(OrderStatistics {
        counts,
        group_order: h.order_u64().expect("within limit"),
    })
}

/// The right regular representation of a finite permutation group, with the
/// element list used for labelling: point `i` is `elements[i]`, and `x` acts
/// by `elements[i] ↦ elements[i]·x`.
#[derive(Clone, Debug)]
pub struct RegularEmbedding {
    pub elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    pub image: PermGroup,
}

impl RegularEmbedding {
    /// Image of `x` in `Sym(|H|)`.
    pub fn embed(&self, x: &Permutation) -> Permutation {
        let images = self
            .elements
            .iter()
            .map(|e| self.index[&(e * x)] as u32)
            .collect();
        Permutation::from_images(images).expect("right multiplication is a bijection")
    }
}

pub fn regular_embedding_map(h: &PermGroup, limit: u64) -> Result<RegularEmbedding, GassmannError> {
    let elements = h.elements(limit)?;
    let index: HashMap<Permutation, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    let mut emb = RegularEmbedding {
        elements,
        index,
        image: PermGroup::trivial(1),
    };
    let gens = h.generators().iter().map(|x| emb.embed(x)).collect();
    emb.image = PermGroup::new(emb.elements.len(), gens)?;
    Ok(emb)
}

/// `H` as a regular permutation group of degree `|H|`.
pub fn regular_embedding(h: &PermGroup, limit: u64) -> Result<PermGroup, GassmannError> {
    Ok(regular_embedding_map(h, limit)?.image)
}

/// Almost-conjugacy of the regular images of two groups of order `n` in
/// `S_n`. An element of order `k` has cycle type `k^(n/k)` in the regular
/// representation, so the class counts are the order statistics.
pub fn regular_pair_almost_conjugate(
    h: &OrderStatistics,
    k: &OrderStatistics,
) -> Result<(bool, GassmannCertificate), GassmannError> {
    if h.group_order != k.group_order {
        return Err(GassmannError::OrderMismatch {
            h: h.group_order,
            k: k.group_order,
        });
    }
    let n = h.group_order;
    let mut orders: Vec<u64> = h.counts.keys().chain(k.counts.keys()).copied().collect();
    orders.sort_unstable_by(|a, b| b.cmp(a));
    orders.dedup();
    let classes = orders
        .into_iter()
        .map(|ord| ClassEntry {
            key: format!("{}^{}", ord, n / ord),
            in_h: h.counts.get(&ord).copied().unwrap_or(0),
            in_k: k.counts.get(&ord).copied().unwrap_or(0),
        })
        .collect();
    let cert = GassmannCertificate::new(format!("S{n}"), classes);
    Ok((cert.verdict, cert))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> PermGroup {
        let c: Vec<usize> = (0..n).collect();
        PermGroup::new(n, vec![Permutation::from_cycles(n, &[c]).unwrap()]).unwrap()
    }

    #[test]
    fn statistics_of_cyclic_group() {
        let s = order_statistics(&cyclic(6), 1000).unwrap();
        assert_eq!(s.counts, BTreeMap::from([(1, 1), (2, 1), (3, 2), (6, 2)]));
    }

    #[test]
    fn trivial_group() {
        let s = order_statistics(&PermGroup::trivial(3), 10).unwrap();
        assert_eq!(s.counts, BTreeMap::from([(1, 1)]));
    }

    #[test]
    fn regular_image_of_z2_is_a_transposition() {
        let g = regular_embedding(&cyclic(2), 10).unwrap();
        assert_eq!(g.degree(), 2);
        assert_eq!(g.generators()[0].cycle_type().label(), "2^1");
    }

    #[test]
    fn regular_image_of_z4_generator_is_a_4_cycle() {
        let z4 = PermGroup::new(
            6,
            vec![Permutation::from_cycles(6, &[vec![0, 1, 2, 3], vec![4, 5]]).unwrap()],
        )
        .unwrap();
        let e = regular_embedding_map(&z4, 10).unwrap();
        assert_eq!(e.embed(&z4.generators()[0]).cycle_type().label(), "4^1");
        assert_eq!(e.image.order_u64(), Some(4));
    }

    #[test]
    fn z4_versus_klein_four() {
        let v4 = PermGroup::new(
            4,
            vec![
                Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap(),
            ],
        )
        .unwrap();
        let a = order_statistics(&cyclic(4), 10).unwrap();
        let b = order_statistics(&v4, 10).unwrap();
        assert!(!regular_pair_almost_conjugate(&a, &b).unwrap().0);
        assert!(regular_pair_almost_conjugate(&a, &a).unwrap().0);
    }
}
