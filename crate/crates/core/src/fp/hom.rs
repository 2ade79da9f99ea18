use std::collections::{HashMap, VecDeque};

use crate::perm::{PermGroup, Permutation};

use super::presentation::Presentation;
use super::schreier::schreier_generators;
use super::todd_coxeter::CosetTable;
use super::word::{Letter, Word};
use super::FpError;

/// Largest index for which [`coset_table_from_hom`] will build a table.
pub const MAX_HOM_INDEX: usize = 100_000;

/// Image of `w` when generator `i` maps to `images[i]`.
pub fn eval_word(degree: usize, images: &[Permutation], inverses: &[Permutation], w: &Word) -> Permutation {
    let mut acc = Permutation::identity(degree);
    let mut tmp = acc.clone();
    for l in w.letters() {
        let g = l.gen as usize;
        let p = if l.inverse { &inverses[g] } else { &images[g] };
        acc.compose_into(p, &mut tmp);
        std::mem::swap(&mut acc, &mut tmp);
    }
    acc
}

/// A homomorphism from a finitely presented group to `Sym(degree)`, given by
/// the images of the generators. Construction checks every relator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomomorphismSpec {
    degree: usize,
    images: Vec<Permutation>,
    inverses: Vec<Permutation>,
}

impl HomomorphismSpec {
    pub fn new(p: &Presentation, degree: usize, images: Vec<Permutation>) -> Result<Self, FpError> {
        if images.len() != p.num_generators() {
            return Err(FpError::ImageCount {
                expected: p.num_generators(),
                found: images.len(),
            });
        }
        if let Some(x) = images.iter().find(|x| x.degree() != degree) {
            return Err(crate::perm::PermError::DegreeMismatch {
                expected: degree,
                found: x.degree(),
            }
            .into());
        }
        let inverses = images.iter().map(|x| x.inverse()).collect();
        let h = HomomorphismSpec {
            degree,
            images,
            inverses,
        };
        if let Some(r) = p.relators.iter().find(|r| !h.image(r).is_identity()) {
            return Err(FpError::NotAHomomorphism(p.format_word(r)));
        }
        Ok(h)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn image(&self, w: &Word) -> Permutation {
        eval_word(self.degree, &self.images, &self.inverses, w)
    }

    pub fn image_group(&self) -> PermGroup {
        PermGroup::new(self.degree, self.images.clone()).expect("images share the degree")
    }

    /// Whether the image is all of `target` (assumed to contain it).
    pub fn is_surjective_onto(&self, target: &PermGroup) -> bool {
        self.image_group().order() == target.order()
    }
}

/// Coset table of `φ⁻¹(H)` in the presented group: the orbit of the coset
/// `H` under right multiplication by the generator images. Subgroup words
/// are the Schreier generators of the preimage.
pub fn coset_table_from_hom(
    p: &Presentation,
    phi: &HomomorphismSpec,
    h: &PermGroup,
    max_index: usize,
) -> Result<CosetTable, FpError> {
    if h.degree() != phi.degree() {
        return Err(crate::perm::PermError::DegreeMismatch {
            expected: phi.degree(),
            found: h.degree(),
        }
        .into());
    }
    let ngens = p.num_generators();
    let start = h.canonical_right_coset_rep(&Permutation::identity(phi.degree()));
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    index.insert(start.clone(), 0);
    let mut reps = vec![start];
    let mut rows: Vec<Vec<Option<usize>>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        let mut row = vec![None; 2 * ngens];
        for g in 0..ngens {
            let x = h.canonical_right_coset_rep(&(&reps[c] * &phi.images[g]));
            let d = match index.get(&x) {
                Some(&d) => d,
                None => {
                    let d = reps.len();
                    if d >= max_index {
                        return Err(FpError::IndexTooLarge {
                            index: format!("> {max_index}"),
                            limit: max_index,
                        });
                    }
                    index.insert(x.clone(), d);
                    reps.push(x);
                    queue.push_back(d);
                    d
                }
            };
            row[2 * g] = Some(d);
        }
        if rows.len() <= c {
            rows.resize(c + 1, Vec::new());
        }
        rows[c] = row;
    }
    // fill inverse columns
    let n = reps.len();
    rows.resize(n, vec![None; 2 * ngens]);
    for c in 0..n {
        for g in 0..ngens {
            let d = rows[c][2 * g].unwrap();
            rows[d][2 * g + 1] = Some(c);
        }
    }
    let table = CosetTable::from_rows(ngens, rows, Vec::new());
    let words = schreier_generators(&table);
    Ok(CosetTable::from_rows(ngens, table_rows(&table), words))
}

fn table_rows(t: &CosetTable) -> Vec<Vec<Option<usize>>> {
    (0..t.num_cosets())
        .map(|c| {
            (0..2 * t.num_generators())
                .map(|col| t.entry(c, Letter::from_column(col)))
                .collect()
        })
        .collect()
}

/// Result of a homomorphism search. `exhaustive` is false when the node
/// budget ran out, in which case `homs` is only a partial list.
#[derive(Clone, Debug)]
pub struct HomSearch {
    pub homs: Vec<HomomorphismSpec>,
    pub exhaustive: bool,
    pub nodes: u64,
}

/// All homomorphisms `π → target` (optionally only the surjective ones),
/// by backtracking over generator images. After each generator is assigned,
/// relators whose largest generator index is that generator are checked.
pub fn hom_search(
    p: &Presentation,
    target: &PermGroup,
    surjective_only: bool,
    node_budget: u64,
) -> Result<HomSearch, FpError> {
    let elements = target.elements(crate::perm::DEFAULT_ENUMERATION_LIMIT)?;
    let inverses: Vec<Permutation> = elements.iter().map(|x| x.inverse()).collect();
    let ngens = p.num_generators();
    let mut check_at: Vec<Vec<&Word>> = vec![Vec::new(); ngens];
    for r in &p.relators {
        match r.max_generator() {
            Some(g) => check_at[g].push(r),
            None => {}
        }
    }
    let mut search = Search {
        degree: target.degree(),
        elements: &elements,
        inverses: &inverses,
        check_at: &check_at,
        choice: vec![0; ngens],
        images: Vec::with_capacity(ngens),
        image_invs: Vec::with_capacity(ngens),
        nodes: 0,
        budget: node_budget,
        found: Vec::new(),
    };
    let exhaustive = search.run(0);
    let mut homs = Vec::new();
    for images in search.found {
        let h = HomomorphismSpec::new(p, target.degree(), images)?;
        if !surjective_only || h.is_surjective_onto(target) {
            homs.push(h);
        }
    }
    Ok(HomSearch {
        homs,
        exhaustive,
        nodes: search.nodes,
    })
}

struct Search<'a> {
    degree: usize,
    elements: &'a [Permutation],
    inverses: &'a [Permutation],
    check_at: &'a [Vec<&'a Word>],
    choice: Vec<usize>,
    images: Vec<Permutation>,
    image_invs: Vec<Permutation>,
    nodes: u64,
    budget: u64,
    found: Vec<Vec<Permutation>>,
}

impl Search<'_> {
    /// Returns false when the budget was exhausted.
    fn run(&mut self, g: usize) -> bool {
        if g == self.choice.len() {
            self.found.push(self.images.clone());
            return true;
        }
        for i in 0..self.elements.len() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return false;
            }
            self.choice[g] = i;
            self.images.push(self.elements[i].clone());
            self.image_invs.push(self.inverses[i].clone());
            let ok = self.check_at[g]
                .iter()
                .all(|r| eval_word(self.degree, &self.images, &self.image_invs, r).is_identity());
            let complete = !ok || self.run(g + 1);
            self.images.pop();
            self.image_invs.pop();
            if !complete {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::parse::{parse_presentation, parse_words};
    use crate::fp::todd_coxeter::todd_coxeter;

    fn s3() -> PermGroup {
        let a = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        PermGroup::new(3, vec![a, b]).unwrap()
    }

    #[test]
    fn free_group_onto_s3() {
        let p = Presentation::free(&["a", "b"]);
        let all = hom_search(&p, &s3(), false, u64::MAX).unwrap();
        assert!(all.exhaustive);
        assert_eq!(all.homs.len(), 36);
        let onto = hom_search(&p, &s3(), true, u64::MAX).unwrap();
        assert_eq!(onto.homs.len(), 18);
    }

    #[test]
    fn budget_marks_search_partial() {
        let p = Presentation::free(&["a", "b"]);
        let r = hom_search(&p, &s3(), false, 10).unwrap();
        assert!(!r.exhaustive);
    }

    #[test]
    fn relators_prune() {
        let p = parse_presentation("< a, b | a^2, b^3, (a*b)^2 >").unwrap();
        let r = hom_search(&p, &s3(), true, u64::MAX).unwrap();
        // 3 involutions x 2 elements of order 3, all dihedral
        assert_eq!(r.homs.len(), 6);
    }

    #[test]
    fn rejects_non_homomorphism() {
        let p = parse_presentation("< a | a^2 >").unwrap();
        let x = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        assert!(matches!(
            HomomorphismSpec::new(&p, 3, vec![x]),
            Err(FpError::NotAHomomorphism(_))
        ));
    }

    #[test]
    fn hom_table_matches_todd_coxeter() {
        // A5 = <a,b | a^2,b^3,(ab)^5> acting on 5 points; H = point stabiliser.
        let p = parse_presentation("< a, b | a^2, b^3, (a*b)^5 >").unwrap();
        let a = Permutation::from_cycles(5, &[vec![0, 1], vec![2, 3]]).unwrap();
        let b = Permutation::from_cycles(5, &[vec![1, 2, 4]]).unwrap();
        let phi = HomomorphismSpec::new(&p, 5, vec![a.clone(), b.clone()]).unwrap();
        let g = phi.image_group();
        assert_eq!(g.order_u64(), Some(60));
        let stab: Vec<Permutation> = g
            .elements(100)
            .unwrap()
            .into_iter()
            .filter(|x| x.apply(0) == 0)
            .collect();
        let h = PermGroup::new(5, stab).unwrap();
        let t = coset_table_from_hom(&p, &phi, &h, MAX_HOM_INDEX).unwrap();
        assert_eq!(t.num_cosets(), 5);
        assert!(t.verify(&p));
        let tc = todd_coxeter(&p, t.subgroup_words(), 10_000).unwrap();
        assert_eq!(tc.num_cosets(), 5);
        for w in t.subgroup_words() {
            assert_eq!(phi.image(w).apply(0), 0);
        }
        let _ = parse_words;
    }

    #[test]
    fn index_limit() {
        let p = parse_presentation("< a, b | a^2, b^3, (a*b)^5 >").unwrap();
        let a = Permutation::from_cycles(5, &[vec![0, 1], vec![2, 3]]).unwrap();
        let b = Permutation::from_cycles(5, &[vec![1, 2, 4]]).unwrap();
        let phi = HomomorphismSpec::new(&p, 5, vec![a, b]).unwrap();
        let h = PermGroup::trivial(5);
        assert!(matches!(
            coset_table_from_hom(&p, &phi, &h, 10),
            Err(FpError::IndexTooLarge { .. })
        ));
        assert_eq!(coset_table_from_hom(&p, &phi, &h, 100).unwrap().num_cosets(), 60);
    }
}
