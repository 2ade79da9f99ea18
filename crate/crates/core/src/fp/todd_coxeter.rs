//! HLT coset enumeration with lookahead; coincidences are merged through a
//! union–find forest with path compression.

use std::collections::VecDeque;

use super::presentation::Presentation;
use super::word::{Letter, Word};
use super::FpError;

/// Default ceiling on the number of live cosets.
pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

const NONE: u32 = u32::MAX;

/// Right action of a finitely presented group on the cosets of a subgroup.
/// Coset 0 is the subgroup itself; column `2g` is generator `g`, `2g+1` its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    num_generators: usize,
    num_cosets: usize,
    entries: Vec<u32>,
    complete: bool,
    subgroup_words: Vec<Word>,
}

impl CosetTable {
    /// Assembles a table from rows of targets (`None` = undefined).
    pub fn from_rows(
        num_generators: usize,
        rows: Vec<Vec<Option<usize>>>,
        subgroup_words: Vec<Word>,
    ) -> Self {
        let num_cosets = rows.len();
        let mut entries = Vec::with_capacity(num_cosets * 2 * num_generators);
        let mut complete = true;
        for r in &rows {
            assert_eq!(r.len(), 2 * num_generators, "row width");
            for e in r {
                match e {
                    Some(x) => entries.push(*x as u32),
                    None => {
                        complete = false;
                        entries.push(NONE)
                    }
                }
            }
        }
        CosetTable {
            num_generators,
            num_cosets,
            entries,
            complete,
            subgroup_words,
        }
    }

    pub fn num_cosets(&self) -> usize {
        self.num_cosets
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn subgroup_words(&self) -> &[Word] {
        &self.subgroup_words
    }

    #[inline]
    pub fn entry(&self, coset: usize, letter: Letter) -> Option<usize> {
        let v = self.entries[coset * 2 * self.num_generators + letter.column()];
        (v != NONE).then_some(v as usize)
    }

    /// Image of `coset` under `w`, if every step is defined.
    pub fn act(&self, coset: usize, w: &Word) -> Option<usize> {
        w.letters()
            .iter()
            .try_fold(coset, |c, &l| self.entry(c, l))
    }

    /// Checks the defining properties of a complete table for `p`: inverse
    /// columns are mutually inverse, every relator closes at every coset and
    /// every subgroup word fixes coset 0.
    pub fn verify(&self, p: &Presentation) -> bool {
        if !self.complete || p.num_generators() != self.num_generators {
            return false;
        }
        for c in 0..self.num_cosets {
            for g in 0..self.num_generators {
                let x = Letter::new(g, false);
                let d = self.entry(c, x).unwrap();
                if self.entry(d, x.inv()) != Some(c) {
                    return false;
                }
            }
            if p.relators.iter().any(|r| self.act(c, r) != Some(c)) {
                return false;
            }
        }
        self.subgroup_words.iter().all(|w| self.act(0, w) == Some(0))
    }
}

struct Overflow;

struct Enumerator {
    ncols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    max_cosets: usize,
    queue: VecDeque<u32>,
}

impl Enumerator {
    fn new(ngens: usize, max_cosets: usize) -> Self {
        let ncols = 2 * ngens;
        Enumerator {
            ncols,
            table: vec![NONE; ncols],
            parent: vec![0],
            live: 1,
            max_cosets,
            queue: VecDeque::new(),
        }
    }

    #[inline]
    fn len(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.ncols + col]
    }

    #[inline]
    fn set(&mut self, c: u32, col: usize, v: u32) {
        self.table[c as usize * self.ncols + col] = v;
    }

    #[inline]
    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, col: usize) -> Result<u32, Overflow> {
        if self.live >= self.max_cosets {
            return Err(Overflow);
        }
        let d = self.len() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat(NONE).take(self.ncols));
        self.live += 1;
        self.set(c, col, d);
        self.set(d, col ^ 1, c);
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != root {
            let next = self.parent[x as usize];
            self.parent[x as usize] = root;
            x = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill as usize] = keep;
        self.live -= 1;
        self.queue.push_back(kill);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        while let Some(g) = self.queue.pop_front() {
            for x in 0..self.ncols {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                self.set(d, x ^ 1, NONE);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mu_x = self.get(mu, x);
                if mu_x != NONE {
                    self.merge(nu, mu_x);
                } else {
                    let nu_inv = self.get(nu, x ^ 1);
                    if nu_inv != NONE {
                        self.merge(mu, nu_inv);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, x ^ 1, mu);
                    }
                }
            }
        }
    }

    /// Scans `w` from `c` in both directions, defining new cosets to close
    /// the gap when `fill` is set; otherwise only deductions and
    /// coincidences are recorded.
    fn scan(&mut self, c: u32, w: &[usize], fill: bool) -> Result<(), Overflow> {
        let mut f = c;
        let mut b = c;
        let mut i: isize = 0;
        let mut j: isize = w.len() as isize - 1;
        loop {
            while i <= j {
                let n = self.get(f, w[i as usize]);
                if n == NONE {
                    break;
                }
                f = n;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i {
                let n = self.get(b, w[j as usize] ^ 1);
                if n == NONE {
                    break;
                }
                b = n;
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let col = w[i as usize];
                self.set(f, col, b);
                self.set(b, col ^ 1, f);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }

    fn lookahead(&mut self, relators: &[Vec<usize>]) {
        let mut c = 0;
        while c < self.len() {
            let cc = c as u32;
            for r in relators {
                if !self.is_live(cc) {
                    break;
                }
                let _ = self.scan(cc, r, false);
            }
            c += 1;
        }
    }

    /// Renumbers live cosets consecutively, preserving order. Returns the new
    /// index of the first live coset at or after `pos`.
    fn compact(&mut self, pos: usize) -> usize {
        let mut new_index = vec![NONE; self.len()];
        let mut next = 0u32;
        let mut new_pos = None;
        for c in 0..self.len() {
            if c >= pos && new_pos.is_none() {
                new_pos = Some(next as usize);
            }
            if self.parent[c] == c as u32 {
                new_index[c] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.ncols);
        for c in 0..self.len() {
            if new_index[c] == NONE {
                continue;
            }
            for x in 0..self.ncols {
                let v = self.table[c * self.ncols + x];
                table.push(if v == NONE { NONE } else { new_index[v as usize] });
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        new_pos.unwrap_or(next as usize)
    }

    /// Called on overflow: lookahead, then compaction. Fails when too little
    /// room was recovered to make progress.
    fn relieve(&mut self, relators: &[Vec<usize>], pos: usize) -> Result<usize, FpError> {
        self.lookahead(relators);
        let new_pos = self.compact(pos);
        let slack = (self.max_cosets / 20).max(1);
        if self.live + slack > self.max_cosets {
            return Err(FpError::CosetLimit {
                limit: self.max_cosets,
            });
        }
        Ok(new_pos)
    }

    fn complete_and_closed(&self, relators: &[Vec<usize>], subgroup: &[Vec<usize>]) -> bool {
        let trace = |c: u32, w: &[usize]| -> Option<u32> {
            w.iter().try_fold(c, |c, &x| {
                let n = self.get(c, x);
                (n != NONE).then_some(n)
            })
        };
        for c in 0..self.len() as u32 {
            if !self.is_live(c) {
                continue;
            }
            if (0..self.ncols).any(|x| self.get(c, x) == NONE) {
                return false;
            }
            if relators.iter().any(|r| trace(c, r) != Some(c)) {
                return false;
            }
        }
        subgroup.iter().all(|w| trace(0, w) == Some(0))
    }

    fn run(&mut self, relators: &[Vec<usize>], subgroup: &[Vec<usize>]) -> Result<(), FpError> {
        'restart: loop {
            let mut k = 0;
            while k < subgroup.len() {
                if self.scan(0, &subgroup[k], true).is_err() {
                    self.relieve(relators, 0)?;
                    k = 0;
                    continue;
                }
                k += 1;
            }
            let mut alpha = 0usize;
            while alpha < self.len() {
                let a = alpha as u32;
                if self.is_live(a) {
                    if self.process(a, relators).is_err() {
                        alpha = self.relieve(relators, alpha)?;
                        continue;
                    }
                }
                alpha += 1;
            }
            if self.complete_and_closed(relators, subgroup) {
                return Ok(());
            }
            continue 'restart;
        }
    }

    fn process(&mut self, a: u32, relators: &[Vec<usize>]) -> Result<(), Overflow> {
        for r in relators {
            if !self.is_live(a) {
                return Ok(());
            }
            self.scan(a, r, true)?;
        }
        for x in 0..self.ncols {
            if !self.is_live(a) {
                return Ok(());
            }
            if self.get(a, x) == NONE {
                self.define(a, x)?;
            }
        }
        Ok(())
    }

    /// Final table in breadth-first (standard) order from coset 0.
    fn standardize(&mut self) -> Vec<u32> {
        self.compact(0);
        let n = self.len();
        let mut order = Vec::with_capacity(n);
        let mut new_index = vec![NONE; n];
        new_index[0] = 0;
        order.push(0u32);
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            for x in 0..self.ncols {
                let d = self.get(c, x);
                if new_index[d as usize] == NONE {
                    new_index[d as usize] = order.len() as u32;
                    order.push(d);
                }
            }
            i += 1;
        }
        let mut out = Vec::with_capacity(n * self.ncols);
        for &c in &order {
            for x in 0..self.ncols {
                out.push(new_index[self.get(c, x) as usize]);
            }
        }
        out
    }
}

fn columns(w: &Word) -> Vec<usize> {
    w.letters().iter().map(|l| l.column()).collect()
}

/// Enumerates the cosets of `⟨subgroup⟩` in the group presented by `p`.
///
/// Success means the returned table is complete, consistent and its size is
/// the exact index. Running out of room reports [`FpError::CosetLimit`],
/// which says nothing about finiteness.
pub fn todd_coxeter(p: &Presentation, subgroup: &[Word], max_cosets: usize) -> Result<CosetTable, FpError> {
    if max_cosets == 0 {
        return Err(FpError::CosetLimit { limit: 0 });
    }
    for w in subgroup {
        if w.max_generator().is_some_and(|g| g >= p.num_generators()) {
            return Err(FpError::InvalidGenerator {
                index: w.max_generator().unwrap(),
                count: p.num_generators(),
            });
        }
    }
    let relators: Vec<Vec<usize>> = p.relators.iter().map(columns).collect();
    let sub: Vec<Vec<usize>> = subgroup.iter().map(columns).collect();
    let mut e = Enumerator::new(p.num_generators(), max_cosets);
    e.run(&relators, &sub)?;
    let entries = e.standardize();
    let table = CosetTable {
        num_generators: p.num_generators(),
        num_cosets: entries.len() / (2 * p.num_generators()).max(1),
        entries,
        complete: true,
        subgroup_words: subgroup.to_vec(),
    };
    // zero generators: the trivial group, one coset
    if p.num_generators() == 0 {
        return Ok(CosetTable {
            num_cosets: 1,
            ..table
        });
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::parse::{parse_presentation, parse_words};

    fn index(text: &str, sub: &str) -> usize {
        let p = parse_presentation(text).unwrap();
        let h = parse_words(&p, sub).unwrap();
        let t = todd_coxeter(&p, &h, 100_000).unwrap();
        assert!(t.verify(&p));
        t.num_cosets()
    }

    #[test]
    fn cyclic() {
        assert_eq!(index("< a | a^6 >", ""), 6);
        assert_eq!(index("< a | a^6 >", "a^2"), 2);
    }

    #[test]
    fn von_dyck_235() {
        assert_eq!(index("< a, b | a^2, b^3, (a*b)^5 >", ""), 60);
        assert_eq!(index("< a, b | a^2, b^3, (a*b)^5 >", "a"), 30);
    }

    #[test]
    fn order_16_group() {
        assert_eq!(
            index("< u, v, c | u^2, v^2, c^4, [u,v], c*u*c^-1*v^-1, c*v*c^-1*u^-1 >", ""),
            16
        );
    }

    #[test]
    fn collapse_to_trivial() {
        assert_eq!(index("< a, b | a*b^-1, a^2*b^-3 >", ""), 1);
    }

    #[test]
    fn coset_limit_is_unknown_not_infinite() {
        let p = parse_presentation("< a, b | a^2 >").unwrap();
        assert!(matches!(todd_coxeter(&p, &[], 500), Err(FpError::CosetLimit { .. })));
    }

    #[test]
    fn lookahead_recovers_under_pressure() {
        // S5 as a Coxeter group needs far more than 120 scratch cosets under HLT.
        let p = parse_presentation(
            "< a, b, c, d | a^2, b^2, c^2, d^2, (a*b)^3, (b*c)^3, (c*d)^3, (a*c)^2, (a*d)^2, (b*d)^2 >",
        )
        .unwrap();
        let roomy = todd_coxeter(&p, &[], 100_000).unwrap();
        assert_eq!(roomy.num_cosets(), 120);
        let tight = todd_coxeter(&p, &[], 200).unwrap();
        assert_eq!(tight.num_cosets(), 120);
        assert_eq!(tight, roomy);
    }
}
