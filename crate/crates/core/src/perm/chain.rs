//! Deterministic Schreier–Sims.
//!
//! Level `i` holds a base point `b_i`, generators of
//! `G⁽ⁱ⁾ = Stab(b_0, …, b_{i-1})`, the orbit of `b_i` under those generators
//! and a transversal `u_β` with `b_i^{u_β} = β`. Every group element factors
//! uniquely as `u_{k-1} ⋯ u_1 u_0` with `u_i` drawn from level `i`.

use num_bigint::BigUint;

use super::permutation::Permutation;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base: usize,
    pub gens: Vec<Permutation>,
    pub orbit: Vec<usize>,
    transversal: Vec<Option<(Permutation, Permutation)>>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Self {
        let mut transversal = vec![None; degree];
        let id = Permutation::identity(degree);
        transversal[base] = Some((id.clone(), id));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            transversal,
        }
    }

    /// `u_β`, mapping the base point to `β`.
    #[inline]
    pub fn rep(&self, point: usize) -> Option<&Permutation> {
        self.transversal[point].as_ref().map(|(u, _)| u)
    }

    #[inline]
    pub fn rep_inv(&self, point: usize) -> Option<&Permutation> {
        self.transversal[point].as_ref().map(|(_, v)| v)
    }
}

#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    degree: usize,
    pub levels: Vec<Level>,
}

impl StabChain {
    /// An empty chain (trivial group) whose first base points are `prefix`.
    pub fn new(degree: usize, prefix: &[usize]) -> Self {
        StabChain {
            degree,
            levels: prefix.iter().map(|&b| Level::new(degree, b)).collect(),
        }
    }

    pub fn from_generators<'a>(
        degree: usize,
        prefix: &[usize],
        gens: impl IntoIterator<Item = &'a Permutation>,
    ) -> Self {
        let mut chain = StabChain::new(degree, prefix);
        for g in gens {
            chain.add_generator(g.clone());
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Adds `g` to the group; returns false when it was already a member.
    pub fn add_generator(&mut self, g: Permutation) -> bool {
        if self.contains(&g) {
            return false;
        }
        self.extend(0, g);
        true
    }

    fn extend(&mut self, level: usize, g: Permutation) {
        if self.sift_from(level, &g).is_identity() {
            return;
        }
        if level == self.levels.len() {
            let base = g
                .first_moved_point()
                .expect("non-member must move a point");
            self.levels.push(Level::new(self.degree, base));
        }

        let mut pending = Vec::new();
        {
            let lvl = &mut self.levels[level];
            lvl.gens.push(g.clone());
            let old_len = lvl.orbit.len();
            for idx in 0..old_len {
                let beta = lvl.orbit[idx];
                let gamma = g.apply(beta);
                let u_beta_g = lvl.rep(beta).unwrap() * &g;
                if let Some(u_gamma_inv) = lvl.rep_inv(gamma) {
                    let t = &u_beta_g * u_gamma_inv;
                    if !t.is_identity() {
                        pending.push(t);
                    }
                } else {
                    let inv = u_beta_g.inverse();
                    lvl.transversal[gamma] = Some((u_beta_g, inv));
                    lvl.orbit.push(gamma);
                }
            }
            let mut idx = old_len;
            while idx < lvl.orbit.len() {
                let beta = lvl.orbit[idx];
                for s in 0..lvl.gens.len() {
                    let gamma = lvl.gens[s].apply(beta);
                    let u_beta_s = lvl.rep(beta).unwrap() * &lvl.gens[s];
                    if let Some(u_gamma_inv) = lvl.rep_inv(gamma) {
                        let t = &u_beta_s * u_gamma_inv;
                        if !t.is_identity() {
                            pending.push(t);
                        }
                    } else {
                        let inv = u_beta_s.inverse();
                        lvl.transversal[gamma] = Some((u_beta_s, inv));
                        lvl.orbit.push(gamma);
                    }
                }
                idx += 1;
            }
        }
        for t in pending {
            self.extend(level + 1, t);
        }
    }

    /// Strips `g` through the levels starting at `level`; the residue is the
    /// identity exactly when `g` lies in `G⁽ˡᵉᵛᵉˡ⁾` (once the chain is complete).
    pub fn sift_from(&self, level: usize, g: &Permutation) -> Permutation {
        let mut h = g.clone();
        let mut scratch = Permutation::identity(self.degree);
        for lvl in &self.levels[level.min(self.levels.len())..] {
            let beta = h.apply(lvl.base);
            match lvl.rep_inv(beta) {
                Some(v) => {
                    h.compose_into(v, &mut scratch);
                    std::mem::swap(&mut h, &mut scratch);
                }
                None => return h,
            }
        }
        h
    }

    /// Strips `g` through the first `levels` levels and returns the product
    /// `u_{levels-1} ⋯ u_0` of the representatives used, which agrees with
    /// `g` on those base points. `None` if some base image leaves its orbit.
    pub fn factor_prefix(&self, g: &Permutation, levels: usize) -> Option<Permutation> {
        let mut h = g.clone();
        let mut product = Permutation::identity(self.degree);
        for lvl in &self.levels[..levels.min(self.levels.len())] {
            let beta = h.apply(lvl.base);
            let v = lvl.rep_inv(beta)?;
            h = &h * v;
            product = lvl.rep(beta).unwrap() * &product;
        }
        Some(product)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift_from(0, g).is_identity()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.levels.iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }

    /// Generators of the pointwise stabiliser of the first `k` base points.
    pub fn stabilizer_generators(&self, k: usize) -> Vec<Permutation> {
        self.levels[k.min(self.levels.len())..]
            .iter()
            .flat_map(|l| l.gens.iter().cloned())
            .collect()
    }

    /// Visits every element exactly once, as `u_{k-1} ⋯ u_0`.
    pub fn for_each_element<F: FnMut(&Permutation)>(&self, mut f: F) {
        let k = self.levels.len();
        if k == 0 {
            f(&Permutation::identity(self.degree));
            return;
        }
        let mut partial: Vec<Permutation> = vec![Permutation::identity(self.degree); k];
        self.visit(0, None, &mut partial, &mut f);
    }

    /// Visits the elements whose level-0 factor is the `top`-th orbit point.
    pub fn for_each_element_in_branch<F: FnMut(&Permutation)>(&self, top: usize, mut f: F) {
        let k = self.levels.len();
        if k == 0 {
            if top == 0 {
                f(&Permutation::identity(self.degree));
            }
            return;
        }
        let mut partial: Vec<Permutation> = vec![Permutation::identity(self.degree); k];
        let lvl = &self.levels[0];
        partial[0] = lvl.rep(lvl.orbit[top]).unwrap().clone();
        if k == 1 {
            f(&partial[0]);
        } else {
            self.visit(1, Some(0), &mut partial, &mut f);
        }
    }

    pub fn top_orbit_len(&self) -> usize {
        self.levels.first().map_or(1, |l| l.orbit.len())
    }

    fn visit<F: FnMut(&Permutation)>(
        &self,
        depth: usize,
        prev: Option<usize>,
        partial: &mut [Permutation],
        f: &mut F,
    ) {
        let lvl = &self.levels[depth];
        let last = depth + 1 == self.levels.len();
        for &beta in &lvl.orbit {
            let u = lvl.rep(beta).unwrap();
            let (lower, upper) = partial.split_at_mut(depth);
            match prev {
                Some(p) => u.compose_into(&lower[p], &mut upper[0]),
                None => upper[0].clone_from(u),
            }
            if last {
                f(&partial[depth]);
            } else {
                self.visit(depth + 1, Some(depth), partial, f);
            }
        }
    }
}
