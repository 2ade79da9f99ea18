use std::collections::{BTreeMap, HashMap};

use crate::perm::{conjugacy_classes, CycleType, PermGroup, Permutation, DEFAULT_CLASS_LIMIT, DEFAULT_ENUMERATION_LIMIT};

use super::GassmannError;

/// A transitive action of a permutation group `G` on a finite set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupAction {
    /// Action on a `G`-invariant family of subsets of the natural points
    /// (at most 64 points), each stored as a bit mask.
    OnBlocks { blocks: Vec<u64> },
    /// Action given by the images of `G`'s generators, in order.
    Images { images: Vec<Permutation> },
}

/// How `perm_reps_equivalent` compares fixed-point counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    /// Every element of `G`.
    FullScan,
    /// One representative per conjugacy class (needs `|G|` within the class limit).
    ClassReps,
}

/// Fixed-point counts over all of `G`, bucketed by cycle type in the natural
/// action and the counts in the two actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixScan {
    pub buckets: BTreeMap<(CycleType, u64, u64), u64>,
    pub elements: u64,
}

impl FixScan {
    pub fn agrees(&self) -> bool {
        self.buckets.keys().all(|(_, a, b)| a == b)
    }
}

fn mask_image(images: &[u32], mask: u64) -> u64 {
    let mut m = mask;
    let mut out = 0u64;
    while m != 0 {
        let p = m.trailing_zeros() as usize;
        out |= 1 << images[p];
        m &= m - 1;
    }
    out
}

fn block_fixes(images: &[u32], blocks: &[u64]) -> u64 {
    let mut fixed = 0;
    'blocks: for &b in blocks {
        let mut m = b;
        while m != 0 {
            let p = m.trailing_zeros() as usize;
            if b >> images[p] & 1 == 0 {
                continue 'blocks;
            }
            m &= m - 1;
        }
        fixed += 1;
    }
    fixed
}

fn prefix_cycle_type(images: &[u32], n: usize) -> CycleType {
    let mut seen = [0u64; 4];
    let mut big_seen;
    let mut parts = Vec::new();
    if n <= 256 {
        for start in 0..n {
            if seen[start / 64] >> (start % 64) & 1 == 1 {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while seen[x / 64] >> (x % 64) & 1 == 0 {
                seen[x / 64] |= 1 << (x % 64);
                x = images[x] as usize;
                len += 1;
            }
            parts.push(len);
        }
    } else {
        big_seen = vec![false; n];
        for start in 0..n {
            if big_seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !big_seen[x] {
                big_seen[x] = true;
                x = images[x] as usize;
                len += 1;
            }
            parts.push(len);
        }
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    CycleType { parts }
}

impl GroupAction {
    /// Action on subsets given as lists of 0-based points.
    pub fn on_blocks(blocks: &[Vec<usize>]) -> Result<Self, GassmannError> {
        let masks = blocks
            .iter()
            .map(|b| {
                b.iter().try_fold(0u64, |m, &p| {
                    if p < 64 {
                        Ok(m | 1 << p)
                    } else {
                        Err(GassmannError::UnsupportedAction("block points must be below 64"))
                    }
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GroupAction::OnBlocks { blocks: masks })
    }

    pub fn degree(&self) -> usize {
        match self {
            GroupAction::OnBlocks { blocks } => blocks.len(),
            GroupAction::Images { images } => images.first().map_or(0, |x| x.degree()),
        }
    }

    /// Images of `G`'s generators in this action.
    pub fn generator_images(&self, g: &PermGroup) -> Result<Vec<Permutation>, GassmannError> {
        match self {
            GroupAction::Images { images } => {
                if images.len() != g.generators().len() {
                    return Err(GassmannError::NotAHomomorphism);
                }
                Ok(images.clone())
            }
            GroupAction::OnBlocks { blocks } => {
                if g.degree() > 64 {
                    return Err(GassmannError::UnsupportedAction("block points must be below 64"));
                }
                let index: HashMap<u64, u32> = blocks.iter().enumerate().map(|(i, &b)| (b, i as u32)).collect();
                g.generators()
                    .iter()
                    .map(|x| {
                        let images = blocks
                            .iter()
                            .map(|&b| index.get(&mask_image(x.images(), b)).copied())
                            .collect::<Option<Vec<u32>>>()
                            .ok_or(GassmannError::NotAHomomorphism)?;
                        Ok(Permutation::from_images(images)?)
                    })
                    .collect()
            }
        }
    }

    /// The group `{(x, φ(x))}` on `n + m` points, with a check that it is
    /// the graph of a homomorphism (its order equals `|G|`).
    fn diagonal(&self, g: &PermGroup) -> Result<PermGroup, GassmannError> {
        let images = self.generator_images(g)?;
        let n = g.degree();
        let m = self.degree();
        let gens = g
            .generators()
            .iter()
            .zip(&images)
            .map(|(x, y)| {
                let mut im: Vec<u32> = x.images().to_vec();
                im.extend(y.images().iter().map(|&v| v + n as u32));
                Permutation::from_images(im)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let d = PermGroup::new(n + m, gens)?;
        if d.order() != g.order() {
            return Err(GassmannError::NotAHomomorphism);
        }
        Ok(d)
    }

    /// Whether this is (equivalent to) the action of `G` on the cosets of `H`:
    /// transitive, of degree `[G:H]`, with `H` fixing point 0.
    pub fn is_coset_action_of(&self, g: &PermGroup, h: &PermGroup) -> Result<bool, GassmannError> {
        let images = self.generator_images(g)?;
        let m = self.degree();
        if m == 0 {
            return Ok(false);
        }
        let image = PermGroup::new(m, images)?;
        if !image.is_transitive() || subgroup_index(g, h) != Some(m as u64) {
            return Ok(false);
        }
        match self {
            GroupAction::OnBlocks { blocks } => Ok(h
                .generators()
                .iter()
                .all(|x| mask_image(x.images(), blocks[0]) == blocks[0])),
            GroupAction::Images { .. } => {
                let d = self.diagonal(g)?;
                let chain = d.chain_with_base_prefix(&(0..g.degree()).collect::<Vec<_>>());
                for x in h.generators() {
                    let ext = x.extend_to(g.degree() + m);
                    match chain.factor_prefix(&ext, g.degree()) {
                        Some(lift) if lift.apply(g.degree()) == g.degree() => {}
                        _ => return Ok(false),
                    }
                }
                Ok(true)
            }
        }
    }
}

fn subgroup_index(g: &PermGroup, h: &PermGroup) -> Option<u64> {
    let (a, b) = (g.order_u64()?, h.order_u64()?);
    (a % b == 0).then_some(a / b)
}

/// The action of `G` on the right cosets `Hx`, by right multiplication.
/// Coset 0 is `H`; the others are numbered in breadth-first order.
pub fn coset_action_of_subgroup(g: &PermGroup, h: &PermGroup) -> Result<GroupAction, GassmannError> {
    if h.degree() != g.degree() || !h.is_subgroup_of(g) {
        return Err(GassmannError::NotASubgroup("H"));
    }
    let index = subgroup_index(g, h).ok_or(GassmannError::NotASubgroup("H"))?;
    if index > crate::fp::MAX_HOM_INDEX as u64 {
        return Err(GassmannError::UnsupportedAction("index above the coset-action limit"));
    }
    let start = h.canonical_right_coset_rep(&Permutation::identity(g.degree()));
    let mut reps = vec![start.clone()];
    let mut lookup: HashMap<Permutation, u32> = HashMap::from([(start, 0)]);
    let mut images: Vec<Vec<u32>> = vec![Vec::new(); g.generators().len()];
    let mut i = 0;
    while i < reps.len() {
        for (j, x) in g.generators().iter().enumerate() {
            let c = h.canonical_right_coset_rep(&(&reps[i] * x));
            let next = lookup.len() as u32;
            let target = *lookup.entry(c.clone()).or_insert_with(|| {
                reps.push(c);
                next
            });
            images[j].push(target);
        }
        i += 1;
    }
    let images = images
        .into_iter()
        .map(Permutation::from_images)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GroupAction::Images { images })
}

enum Segment<'a> {
    Blocks(&'a [u64]),
    Points { offset: usize, len: usize },
}

impl Segment<'_> {
    fn fixes(&self, images: &[u32]) -> u64 {
        match self {
            Segment::Blocks(b) => block_fixes(images, b),
            Segment::Points { offset, len } => (*offset..offset + len)
                .filter(|&p| images[p] as usize == p)
                .count() as u64,
        }
    }
}

/// Builds the group to walk (G itself, or the diagonal with any
/// generator-image actions appended) and the two fixed-point evaluators.
fn scan_setup<'a>(
    g: &PermGroup,
    a1: &'a GroupAction,
    a2: &'a GroupAction,
) -> Result<(PermGroup, [Segment<'a>; 2]), GassmannError> {
    let n = g.degree();
    let mut extra: Vec<Vec<Permutation>> = Vec::new();
    let mut offset = n;
    let mut segs = Vec::new();
    for a in [a1, a2] {
        match a {
            GroupAction::OnBlocks { blocks } => {
                if n > 64 {
                    return Err(GassmannError::UnsupportedAction("block points must be below 64"));
                }
                segs.push(Segment::Blocks(blocks));
            }
            GroupAction::Images { .. } => {
                let images = a.generator_images(g)?;
                let len = a.degree();
                segs.push(Segment::Points { offset, len });
                offset += len;
                extra.push(images);
            }
        }
    }
    let walk = if extra.is_empty() {
        g.clone()
    } else {
        let gens = (0..g.generators().len())
            .map(|i| {
                let mut im: Vec<u32> = g.generators()[i].images().to_vec();
                let mut base = n as u32;
                for e in &extra {
                    im.extend(e[i].images().iter().map(|&v| v + base));
                    base += e[i].degree() as u32;
                }
                Permutation::from_images(im)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let d = PermGroup::new(offset, gens)?;
        if d.order() != g.order() {
            return Err(GassmannError::NotAHomomorphism);
        }
        d
    };
    let mut it = segs.into_iter();
    Ok((walk, [it.next().unwrap(), it.next().unwrap()]))
}

/// Walks every element of `G` (in parallel over top-level branches) and
/// records its natural cycle type and its fixed-point counts in both actions.
pub fn fix_count_scan(g: &PermGroup, a1: &GroupAction, a2: &GroupAction) -> Result<FixScan, GassmannError> {
    let n = g.degree();
    let (walk, segs) = scan_setup(g, a1, a2)?;
    let buckets = walk.par_fold_elements(
        DEFAULT_ENUMERATION_LIMIT,
        BTreeMap::new,
        |acc: &mut BTreeMap<(CycleType, u64, u64), u64>, x| {
            let im = x.images();
            let key = (prefix_cycle_type(im, n), segs[0].fixes(im), segs[1].fixes(im));
            *acc.entry(key).or_insert(0) += 1;
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    )?;
    let elements = buckets.values().sum();
    Ok(FixScan { buckets, elements })
}

/// Condition (3): the two permutation representations have the same
/// fixed-point count at every element, hence equal permutation characters.
pub fn perm_reps_equivalent(
    g: &PermGroup,
    a1: &GroupAction,
    a2: &GroupAction,
    mode: ScanMode,
) -> Result<bool, GassmannError> {
    if a1.degree() != a2.degree() {
        return Err(GassmannError::DegreeMismatch {
            left: a1.degree(),
            right: a2.degree(),
        });
    }
    match mode {
        ScanMode::FullScan => Ok(fix_count_scan(g, a1, a2)?.agrees()),
        ScanMode::ClassReps => {
            let (walk, segs) = scan_setup(g, a1, a2)?;
            let table = conjugacy_classes(&walk, DEFAULT_CLASS_LIMIT)?;
            Ok(table.classes.iter().all(|c| {
                let im = c.representative.images();
                segs[0].fixes(im) == segs[1].fixes(im)
            }))
        }
    }
}
