//! Subgroup classes of small groups via a Cayley table: cyclic extension by
//! prime-power elements, deduplicated up to conjugacy.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::perm::{PermGroup, Permutation};

use super::certificate::{describe_ambient, ClassEntry, GassmannCertificate};
use super::GassmannError;

/// Default ceiling on `|G|` for subgroup enumeration.
pub const DEFAULT_SUBGROUP_LIMIT: u64 = 512;

/// A set of group elements, by index into [`GroupTable::elements`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ElementSet {
    bits: Vec<u64>,
}

impl ElementSet {
    fn empty(n: usize) -> Self {
        ElementSet {
            bits: vec![0; n.div_ceil(64)],
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    fn insert(&mut self, i: usize) -> bool {
        let fresh = !self.contains(i);
        self.bits[i / 64] |= 1 << (i % 64);
        fresh
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            let mut m = word;
            std::iter::from_fn(move || {
                if m == 0 {
                    return None;
                }
                let b = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(w * 64 + b)
            })
        })
    }
}

/// Multiplication table of a small permutation group. Element 0 is the identity.
#[derive(Clone, Debug)]
pub struct GroupTable {
    pub group: PermGroup,
    pub elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    gens: Vec<usize>,
    class_of: Vec<usize>,
    class_sizes: Vec<u64>,
}

/// One conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub members: ElementSet,
    pub generators: Vec<usize>,
    pub order: usize,
    pub conjugates: usize,
}

impl SubgroupClass {
    pub fn is_normal(&self) -> bool {
        self.conjugates == 1
    }
}

/// A pair of non-conjugate almost-conjugate subgroups.
#[derive(Clone, Debug)]
pub struct GassmannPair {
    pub h: PermGroup,
    pub k: PermGroup,
    pub certificate: GassmannCertificate,
}

impl GroupTable {
    pub fn new(g: &PermGroup, limit: u64) -> Result<Self, GassmannError> {
        let elements = g.elements(limit)?;
        let n = elements.len();
        let index: HashMap<Permutation, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        debug_assert!(elements[0].is_identity());
        let mut mul = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                mul[i * n + j] = index[&(a * b)] as u32;
            }
        }
        let inv = elements.iter().map(|e| index[&e.inverse()] as u32).collect();
        let gens = g.generators().iter().map(|x| index[x]).collect();
        let mut table = GroupTable {
            group: g.clone(),
            elements,
            index,
            mul,
            inv,
            gens,
            class_of: Vec::new(),
            class_sizes: Vec::new(),
        };
        table.compute_classes();
        Ok(table)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn index_of(&self, x: &Permutation) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// `g⁻¹ x g`
    fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut sizes = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let c = sizes.len();
            class_of[start] = c;
            let mut stack = vec![start];
            let mut size = 1;
            while let Some(x) = stack.pop() {
                for &g in &self.gens {
                    let y = self.conj(x, g);
                    if class_of[y] == usize::MAX {
                        class_of[y] = c;
                        size += 1;
                        stack.push(y);
                    }
                }
            }
            sizes.push(size);
        }
        self.class_of = class_of;
        self.class_sizes = sizes;
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn num_classes(&self) -> usize {
        self.class_sizes.len()
    }

    fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Subgroup generated by `gens`, by closure under right multiplication.
    pub fn closure(&self, gens: &[usize]) -> ElementSet {
        let mut set = ElementSet::empty(self.order());
        set.insert(0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    fn conjugate_set(&self, s: &ElementSet, g: usize) -> ElementSet {
        let mut out = ElementSet::empty(self.order());
        for x in s.iter() {
            out.insert(self.conj(x, g));
        }
        out
    }

    fn conjugates(&self, s: &ElementSet) -> Vec<ElementSet> {
        let mut seen: HashSet<ElementSet> = HashSet::from([s.clone()]);
        let mut list = vec![s.clone()];
        let mut i = 0;
        while i < list.len() {
            for &g in &self.gens {
                let c = self.conjugate_set(&list[i], g);
                if seen.insert(c.clone()) {
                    list.push(c);
                }
            }
            i += 1;
        }
        list
    }

    /// One representative per conjugacy class of subgroups of order at most
    /// `max_order`, sorted by order and then by discovery.
    pub fn subgroup_classes(&self, max_order: usize) -> Vec<SubgroupClass> {
        let n = self.order();
        let mut extenders: Vec<usize> = Vec::new();
        let mut cyclic_seen: HashSet<ElementSet> = HashSet::new();
        for x in 1..n {
            let o = self.element_order(x);
            if is_prime_power(o) && cyclic_seen.insert(self.closure(&[x])) {
                extenders.push(x);
            }
        }
        let trivial = self.closure(&[]);
        let mut seen: HashSet<ElementSet> = HashSet::from([trivial.clone()]);
        let mut classes = vec![SubgroupClass {
            members: trivial,
            generators: Vec::new(),
            order: 1,
            conjugates: 1,
        }];
        let mut i = 0;
        while i < classes.len() {
            for &x in &extenders {
                if classes[i].members.contains(x) {
                    continue;
                }
                let mut gens = classes[i].generators.clone();
                gens.push(x);
                let members = self.closure(&gens);
                let order = members.len();
                if order > max_order || seen.contains(&members) {
                    continue;
                }
                let conj = self.conjugates(&members);
                let conjugates = conj.len();
                seen.extend(conj);
                classes.push(SubgroupClass {
                    members,
                    generators: gens,
                    order,
                    conjugates,
                });
            }
            i += 1;
        }
        classes.sort_by_key(|c| c.order);
        classes
    }

    pub fn normal_subgroups(&self) -> Vec<SubgroupClass> {
        self.subgroup_classes(self.order())
            .into_iter()
            .filter(SubgroupClass::is_normal)
            .collect()
    }

    /// The subgroup as a permutation group on the ambient points.
    pub fn to_perm_group(&self, s: &SubgroupClass) -> PermGroup {
        self.perm_group_from(&s.generators)
    }

    pub fn perm_group_from(&self, gens: &[usize]) -> PermGroup {
        PermGroup::new(
            self.group.degree(),
            gens.iter().map(|&i| self.elements[i].clone()).collect(),
        )
        .expect("elements share the degree")
    }

    /// A small generating set for the subgroup with the given members.
    pub fn generators_of(&self, members: &ElementSet) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.closure(&gens);
        for x in members.iter() {
            if !span.contains(x) {
                gens.push(x);
                span = self.closure(&gens);
            }
        }
        gens
    }

    fn class_counts(&self, s: &ElementSet) -> Vec<u64> {
        let mut counts = vec![0u64; self.num_classes()];
        for x in s.iter() {
            counts[self.class_of[x]] += 1;
        }
        counts
    }

    /// Certificate for two subgroups given as element sets; keys are class
    /// representatives.
    pub fn certificate(&self, h: &ElementSet, k: &ElementSet) -> GassmannCertificate {
        let (ch, ck) = (self.class_counts(h), self.class_counts(k));
        let mut reps = vec![usize::MAX; self.num_classes()];
        for x in (0..self.order()).rev() {
            reps[self.class_of[x]] = x;
        }
        let classes = (0..self.num_classes())
            .filter(|&c| ch[c] + ck[c] > 0)
            .map(|c| ClassEntry {
                key: self.elements[reps[c]].to_cycle_string(),
                in_h: ch[c],
                in_k: ck[c],
            })
            .collect();
        GassmannCertificate::new(describe_ambient(&self.group), classes)
    }

    /// Pairs `(i, j)`, `i < j`, of subgroup classes that are almost conjugate.
    pub fn gassmann_pairs(&self, classes: &[SubgroupClass]) -> Vec<(usize, usize)> {
        let counts: Vec<Vec<u64>> = classes.iter().map(|c| self.class_counts(&c.members)).collect();
        let mut pairs = Vec::new();
        for i in 0..classes.len() {
            for j in i + 1..classes.len() {
                if classes[i].order == classes[j].order && counts[i] == counts[j] {
                    pairs.push((i, j));
                }
            }
        }
        pairs
    }
}

fn is_prime_power(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|d| n % d == 0).unwrap();
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

/// One subgroup per conjugacy class, of order at most `max_order`.
pub fn enumerate_subgroups(g: &PermGroup, max_order: usize) -> Result<Vec<PermGroup>, GassmannError> {
    let table = GroupTable::new(g, DEFAULT_SUBGROUP_LIMIT)?;
    Ok(table
        .subgroup_classes(max_order)
        .iter()
        .map(|c| table.to_perm_group(c))
        .collect())
}

/// All unordered pairs of non-conjugate almost-conjugate subgroups.
pub fn search_gassmann_pairs(g: &PermGroup) -> Result<Vec<GassmannPair>, GassmannError> {
    let table = GroupTable::new(g, DEFAULT_SUBGROUP_LIMIT)?;
    let classes = table.subgroup_classes(table.order());
    Ok(table
        .gassmann_pairs(&classes)
        .into_iter()
        .map(|(i, j)| GassmannPair {
            h: table.to_perm_group(&classes[i]),
            k: table.to_perm_group(&classes[j]),
            certificate: table.certificate(&classes[i].members, &classes[j].members),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, &cycles.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn orders(g: &PermGroup) -> Vec<u64> {
        enumerate_subgroups(g, usize::MAX)
            .unwrap()
            .iter()
            .map(|h| h.order_u64().unwrap())
            .collect()
    }

    #[test]
    fn cyclic_six() {
        let g = PermGroup::new(6, vec![p(6, &[&[0, 1, 2, 3, 4, 5]])]).unwrap();
        assert_eq!(orders(&g), vec![1, 2, 3, 6]);
        assert!(search_gassmann_pairs(&g).unwrap().is_empty());
    }

    #[test]
    fn s4_has_eleven_classes() {
        let g = PermGroup::new(4, vec![p(4, &[&[0, 1]]), p(4, &[&[0, 1, 2, 3]])]).unwrap();
        assert_eq!(orders(&g), vec![1, 2, 2, 3, 4, 4, 4, 6, 8, 12, 24]);
        let t = GroupTable::new(&g, 100).unwrap();
        let normal: Vec<usize> = t.normal_subgroups().iter().map(|c| c.order).collect();
        assert_eq!(normal, vec![1, 4, 12, 24]);
    }

    #[test]
    fn quaternion_group() {
        // Q8 regular on 8 points
        let i = p(8, &[&[0, 2, 1, 3], &[4, 6, 5, 7]]);
        let j = p(8, &[&[0, 4, 1, 5], &[2, 7, 3, 6]]);
        let q8 = PermGroup::new(8, vec![i, j]).unwrap();
        assert_eq!(q8.order_u64(), Some(8));
        assert_eq!(orders(&q8), vec![1, 2, 4, 4, 4, 8]);
        assert!(search_gassmann_pairs(&q8).unwrap().is_empty());
    }

    #[test]
    fn max_order_filter() {
        let g = PermGroup::new(4, vec![p(4, &[&[0, 1]]), p(4, &[&[0, 1, 2, 3]])]).unwrap();
        assert_eq!(enumerate_subgroups(&g, 4).unwrap().len(), 7);
    }
}
