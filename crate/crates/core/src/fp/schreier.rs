use std::collections::VecDeque;

use crate::perm::{PermGroup, Permutation};
use crate::snf::IntMatrix;

use super::presentation::Presentation;
use super::todd_coxeter::CosetTable;
use super::word::{Letter, Word};
use super::FpError;

/// Permutation action of the generators on the cosets of a complete table.
pub fn coset_action(t: &CosetTable) -> Result<PermGroup, FpError> {
    if !t.is_complete() {
        return Err(FpError::IncompleteTable);
    }
    let n = t.num_cosets();
    let gens = (0..t.num_generators())
        .map(|g| {
            let images = (0..n)
                .map(|c| t.entry(c, Letter::new(g, false)).unwrap() as u32)
                .collect();
            Permutation::from_images(images)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PermGroup::new(n, gens)?)
}

/// Breadth-first spanning tree of the coset graph. Returns, for every coset,
/// the edge `(parent, letter)` it was reached by (`None` for coset 0).
pub(crate) fn spanning_tree(t: &CosetTable) -> Vec<Option<(usize, Letter)>> {
    let n = t.num_cosets();
    let mut parent: Vec<Option<(usize, Letter)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for col in 0..2 * t.num_generators() {
            let l = Letter::from_column(col);
            let d = t.entry(c, l).expect("complete table");
            if !seen[d] {
                seen[d] = true;
                parent[d] = Some((c, l));
                queue.push_back(d);
            }
        }
    }
    parent
}

/// Coset representatives as words along the spanning tree.
pub(crate) fn tree_words(parent: &[Option<(usize, Letter)>]) -> Vec<Word> {
    let mut reps: Vec<Option<Word>> = vec![None; parent.len()];
    reps[0] = Some(Word::identity());
    fn rep(i: usize, parent: &[Option<(usize, Letter)>], reps: &mut Vec<Option<Word>>) -> Word {
        if let Some(w) = &reps[i] {
            return w.clone();
        }
        let (p, l) = parent[i].expect("tree edge");
        let w = rep(p, parent, reps).concat(&Word::new([l]));
        reps[i] = Some(w.clone());
        w
    }
    (0..parent.len()).map(|i| rep(i, parent, &mut reps)).collect()
}

/// Whether the edge `c --g--> t(c, g)` for a positive generator lies on the tree.
fn is_tree_edge(t: &CosetTable, parent: &[Option<(usize, Letter)>], c: usize, g: usize) -> bool {
    let x = Letter::new(g, false);
    let d = t.entry(c, x).unwrap();
    parent[d] == Some((c, x)) || parent[c] == Some((d, x.inv()))
}

/// Schreier generators `rep(i)·x·rep(i·x)⁻¹` of the subgroup, one per
/// non-tree edge, as words in the original generators.
pub(crate) fn schreier_generators(t: &CosetTable) -> Vec<Word> {
    let parent = spanning_tree(t);
    let reps = tree_words(&parent);
    let mut out = Vec::new();
    for c in 0..t.num_cosets() {
        for g in 0..t.num_generators() {
            if is_tree_edge(t, &parent, c, g) {
                continue;
            }
            let d = t.entry(c, Letter::new(g, false)).unwrap();
            out.push(reps[c].concat(&Word::generator(g)).concat(&reps[d].inverse()));
        }
    }
    out
}

/// Reidemeister–Schreier presentation of the subgroup whose complete coset
/// table is `t`. Generators are named `{generator}_{coset}` for the non-tree
/// edges; relators are every relator of `p` traced from every coset.
pub fn reidemeister_schreier(p: &Presentation, t: &CosetTable) -> Result<Presentation, FpError> {
    if !t.is_complete() {
        return Err(FpError::IncompleteTable);
    }
    if t.num_generators() != p.num_generators() {
        return Err(FpError::InvalidGenerator {
            index: t.num_generators(),
            count: p.num_generators(),
        });
    }
    let parent = spanning_tree(t);
    let n = t.num_cosets();
    let ngens = p.num_generators();
    let mut symbol = vec![None; n * ngens];
    let mut names = Vec::new();
    for c in 0..n {
        for g in 0..ngens {
            if !is_tree_edge(t, &parent, c, g) {
                symbol[c * ngens + g] = Some(names.len());
                names.push(format!("{}_{}", p.generator_names[g], c));
            }
        }
    }
    let mut relators = Vec::new();
    for c in 0..n {
        for r in &p.relators {
            let mut cur = c;
            let mut letters = Vec::new();
            for &l in r.letters() {
                let next = t.entry(cur, l).unwrap();
                let g = l.gen as usize;
                if l.inverse {
                    if let Some(s) = symbol[next * ngens + g] {
                        letters.push(Letter::new(s, true));
                    }
                } else if let Some(s) = symbol[cur * ngens + g] {
                    letters.push(Letter::new(s, false));
                }
                cur = next;
            }
            let w = Word::new(letters);
            if !w.is_empty() {
                relators.push(w);
            }
        }
    }
    Presentation::new(names, relators)
}

/// Exponent-sum matrix: one row per relator, one column per generator.
/// Its Smith form gives the abelianisation.
pub fn abelianized_relation_matrix(p: &Presentation) -> IntMatrix {
    let n = p.num_generators();
    let rows: Vec<Vec<i64>> = p.relators.iter().map(|r| r.exponent_sums(n)).collect();
    IntMatrix::from_rows(n, &rows)
}
