use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::chain::StabChain;
use super::permutation::Permutation;
use super::PermError;

/// Default ceiling on `|G|` for anything that walks every element.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 20_000_000;

/// A permutation group given by generators, with its stabiliser chain.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    order: BigUint,
}

impl PermGroup {
    /// Schreier–Sims on `generators`; base points are the first moved points.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let chain = StabChain::from_generators(degree, &[], generators.iter());
        let order = chain.order();
        Ok(PermGroup {
            degree,
            generators,
            chain,
            order,
        })
    }

    /// Like [`PermGroup::new`] but the degree is taken from the generators.
    pub fn from_generators(generators: Vec<Permutation>) -> Result<Self, PermError> {
        let degree = generators.first().map(|g| g.degree()).ok_or(PermError::ZeroDegree)?;
        PermGroup::new(degree, generators)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("positive degree")
    }

    pub(crate) fn from_chain(generators: Vec<Permutation>, chain: StabChain) -> Self {
        let order = chain.order();
        PermGroup {
            degree: chain.degree(),
            generators,
            chain,
            order,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// `|G|` when it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.base()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.chain.strong_generators()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| &(a * b) == &(b * a))
        })
    }

    /// Orbit of `point`, in breadth-first discovery order.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    /// The subgroup generated by `gens`, which must lie in this group's degree.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermGroup, PermError> {
        PermGroup::new(self.degree, gens)
    }

    /// Same group, chain rebuilt so that the base starts with `prefix`.
    pub(crate) fn chain_with_base_prefix(&self, prefix: &[usize]) -> StabChain {
        StabChain::from_generators(self.degree, prefix, self.chain.strong_generators().iter())
    }

    fn check_limit(&self, limit: u64) -> Result<u64, PermError> {
        match self.order_u64() {
            Some(n) if n <= limit => Ok(n),
            _ => Err(PermError::LimitExceeded {
                what: "element enumeration",
                order: self.order.to_string(),
                limit,
            }),
        }
    }

    /// Streams every element exactly once (identity first).
    pub fn for_each_element<F: FnMut(&Permutation)>(&self, limit: u64, f: F) -> Result<(), PermError> {
        self.check_limit(limit)?;
        self.chain.for_each_element(f);
        Ok(())
    }

    /// Parallel fold over all elements. Each top-level transversal branch is
    /// folded independently with `fold`; branch results are combined with
    /// `merge` in branch order, so the result does not depend on the worker count.
    pub fn par_fold_elements<T, I, F, M>(
        &self,
        limit: u64,
        init: I,
        fold: F,
        merge: M,
    ) -> Result<T, PermError>
    where
        T: Send,
        I: Fn() -> T + Sync,
        F: Fn(&mut T, &Permutation) + Sync,
        M: Fn(T, T) -> T,
    {
        self.check_limit(limit)?;
        let branches: Vec<T> = (0..self.chain.top_orbit_len())
            .into_par_iter()
            .map(|top| {
                let mut acc = init();
                self.chain.for_each_element_in_branch(top, |g| fold(&mut acc, g));
                acc
            })
            .collect();
        let mut iter = branches.into_iter();
        let first = iter.next().unwrap_or_else(&init);
        Ok(iter.fold(first, merge))
    }

    /// All elements, materialised.
    pub fn elements(&self, limit: u64) -> Result<Vec<Permutation>, PermError> {
        let n = self.check_limit(limit)?;
        let mut out = Vec::with_capacity(n as usize);
        self.chain.for_each_element(|g| out.push(g.clone()));
        Ok(out)
    }

    /// Order by brute-force closure under right multiplication by generators.
    /// Independent of the stabiliser chain; used as a test oracle.
    pub fn closure_order(&self, limit: usize) -> Option<usize> {
        let id = Permutation::identity(self.degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(id.clone());
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for g in &self.generators {
                let y = &x * g;
                if seen.insert(y.clone()) {
                    if seen.len() > limit {
                        return None;
                    }
                    queue.push(y);
                }
            }
        }
        Some(seen.len())
    }

    /// The element of the right coset `H·g` (`H` = self) whose images of the
    /// base points are lexicographically least. Two elements lie in the same
    /// right coset iff their canonical representatives agree.
    pub fn canonical_right_coset_rep(&self, g: &Permutation) -> Permutation {
        let mut cur = g.clone();
        for level in &self.chain.levels {
            let best = level
                .orbit
                .iter()
                .copied()
                .min_by_key(|&o| cur.apply(o))
                .expect("orbit contains the base point");
            if best != level.base {
                cur = level.rep(best).unwrap() * &cur;
            }
        }
        cur
    }

    /// The same group acting on `degree ≥ self.degree()` points.
    pub fn extend_degree(&self, degree: usize) -> PermGroup {
        let gens = self.generators.iter().map(|g| g.extend_to(degree)).collect();
        PermGroup::new(degree, gens).expect("consistent degree")
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order.to_string())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Schreier–Sims closure of `generators`.
pub fn build_group(degree: usize, generators: Vec<Permutation>) -> Result<PermGroup, PermError> {
    PermGroup::new(degree, generators)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(deg: usize, cycles: &[&[usize]]) -> Permutation {
        let cs: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(deg, &cs).unwrap()
    }

    #[test]
    fn s4_order() {
        let g = PermGroup::new(4, vec![perm(4, &[&[0, 1]]), perm(4, &[&[0, 1, 2, 3]])]).unwrap();
        assert_eq!(g.order_u64(), Some(24));
        assert_eq!(g.closure_order(100), Some(24));
    }

    #[test]
    fn trivial_group() {
        let g = PermGroup::new(5, vec![]).unwrap();
        assert_eq!(g.order_u64(), Some(1));
        assert_eq!(g.elements(10).unwrap().len(), 1);
    }

    #[test]
    fn degree_mismatch() {
        let err = PermGroup::new(4, vec![Permutation::identity(3)]).unwrap_err();
        assert!(matches!(err, PermError::DegreeMismatch { .. }));
    }

    #[test]
    fn enumeration_is_exact_and_distinct() {
        let g = PermGroup::new(3, vec![perm(3, &[&[0, 1]]), perm(3, &[&[0, 1, 2]])]).unwrap();
        let els = g.elements(100).unwrap();
        assert_eq!(els.len(), 6);
        let set: HashSet<_> = els.iter().cloned().collect();
        assert_eq!(set.len(), 6);
        assert!(els[0].is_identity());
        assert!(els.iter().all(|e| g.contains(e)));
    }

    #[test]
    fn enumeration_limit() {
        let g = PermGroup::new(5, vec![perm(5, &[&[0, 1]]), perm(5, &[&[0, 1, 2, 3, 4]])]).unwrap();
        assert!(matches!(g.elements(100), Err(PermError::LimitExceeded { .. })));
    }

    #[test]
    fn membership_rejects_outsiders() {
        let a4 = PermGroup::new(4, vec![perm(4, &[&[0, 1, 2]]), perm(4, &[&[1, 2, 3]])]).unwrap();
        assert_eq!(a4.order_u64(), Some(12));
        assert!(!a4.contains(&perm(4, &[&[0, 1]])));
        assert!(a4.contains(&perm(4, &[&[0, 1], &[2, 3]])));
    }

    #[test]
    fn par_fold_counts_every_element() {
        let g = PermGroup::new(6, vec![perm(6, &[&[0, 1]]), perm(6, &[&[0, 1, 2, 3, 4, 5]])]).unwrap();
        let n = g
            .par_fold_elements(1000, || 0u64, |acc, _| *acc += 1, |a, b| a + b)
            .unwrap();
        assert_eq!(n, 720);
    }
}
