use std::collections::{HashSet, VecDeque};
use std::path::Path;

use crate::gassmann::{perm_reps_equivalent, ClassMode, GroupAction, ScanMode};
use crate::perm::text::parse_perm_group;
use crate::perm::{setwise_stabilizer, PermGroup};

use super::csinv::{csinv, s_of_perm_group, NamedGroup, Phi, Pi, PiInput};
use super::report::CsReport;
use super::{Limits, ObstructionError};

pub const DEFAULT_M23_PATH: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/m23.pgrp");

const M23_ORDER: u64 = 10_200_960;
/// Generator polynomial of the cyclic Golay code: x¹¹+x¹⁰+x⁶+x⁵+x⁴+x²+1.
const GOLAY_GENERATOR: u32 = (1 << 11) | (1 << 10) | (1 << 6) | (1 << 5) | (1 << 4) | (1 << 2) | 1;

/// Whether `G` is transitive on ordered 4-tuples of distinct points.
pub fn four_transitive(g: &PermGroup) -> bool {
    let n = g.degree();
    if n < 4 {
        return false;
    }
    let encode = |t: [usize; 4]| t.iter().fold(0usize, |acc, &x| acc * n + x);
    let expected = n * (n - 1) * (n - 2) * (n - 3);
    let start = [0, 1, 2, 3];
    let mut seen = HashSet::with_capacity(expected);
    seen.insert(encode(start));
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        for x in g.generators() {
            let u = t.map(|p| x.apply(p));
            if seen.insert(encode(u)) {
                queue.push_back(u);
            }
        }
    }
    seen.len() == expected
}

/// Reads the generators, checks `|G| = 10 200 960` and 4-transitivity on 23 points.
pub fn build_m23(path: &Path) -> Result<PermGroup, ObstructionError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ObstructionError::DataFile(format!("{}: {e}", path.display())))?;
    let g = parse_perm_group(&text)?;
    if g.degree() != 23 {
        return Err(ObstructionError::DataFile(format!("degree {} instead of 23", g.degree())));
    }
    if g.order_u64() != Some(M23_ORDER) {
        return Err(ObstructionError::DataFile(format!("group order {} instead of {M23_ORDER}", g.order())));
    }
    if !four_transitive(&g) {
        return Err(ObstructionError::DataFile("group is not 4-transitive".into()));
    }
    Ok(g)
}

/// All 4096 codewords of the binary cyclic [23,12,7] code, as 23-bit masks
/// (bit `i` is point `i`).
pub fn golay_codewords() -> Vec<u32> {
    let basis: Vec<u32> = (0..12).map(|i| GOLAY_GENERATOR << i).collect();
    let mut words: Vec<u32> = (0u32..1 << 12)
        .map(|c| {
            basis
                .iter()
                .enumerate()
                .filter(|(i, _)| c >> i & 1 == 1)
                .fold(0, |acc, (_, &b)| acc ^ b)
        })
        .collect();
    words.sort_unstable();
    words
}

/// The 253 weight-7 codewords, in increasing mask order.
pub fn golay_heptads() -> Vec<u32> {
    golay_codewords().into_iter().filter(|w| w.count_ones() == 7).collect()
}

fn mask_points(mask: u32) -> Vec<usize> {
    (0..23).filter(|i| mask >> i & 1 == 1).collect()
}

/// The two index-253 actions of M₂₃: on 2-subsets and on heptads.
pub fn m23_index253_actions() -> Result<(GroupAction, GroupAction), ObstructionError> {
    let pairs: Vec<Vec<usize>> = (0..23).flat_map(|i| (i + 1..23).map(move |j| vec![i, j])).collect();
    let heptads: Vec<Vec<usize>> = golay_heptads().into_iter().map(mask_points).collect();
    Ok((GroupAction::on_blocks(&pairs)?, GroupAction::on_blocks(&heptads)?))
}

/// Everything the M₂₃ example computes.
#[derive(Clone, Debug)]
pub struct M23Demo {
    pub order: u64,
    pub four_transitive: bool,
    pub heptads: usize,
    pub pair_action_transitive: bool,
    pub heptad_action_transitive: bool,
    pub heptad_stabilizer_order: u64,
    pub pair_stabilizer_order: u64,
    pub equivalent: bool,
    pub report: CsReport,
}

fn action_transitive(g: &PermGroup, a: &GroupAction) -> Result<bool, ObstructionError> {
    let images = a.generator_images(g)?;
    Ok(PermGroup::new(a.degree(), images)?.is_transitive())
}

/// `H` = stabiliser of a heptad (`2⁴.A₇`), `K` = stabiliser of a pair
/// (`L₃(4).2`); both index 253 with equal permutation characters.
pub fn demo_m23(path: &Path, limits: &Limits) -> Result<M23Demo, ObstructionError> {
    let g = build_m23(path)?;
    let (pair_action, heptad_action) = m23_index253_actions()?;
    let heptads = golay_heptads();
    let h = setwise_stabilizer(&g, &mask_points(heptads[0]))?;
    let k = setwise_stabilizer(&g, &[0, 1])?;
    let equivalent = perm_reps_equivalent(&g, &heptad_action, &pair_action, ScanMode::FullScan)?;
    let pi = PiInput {
        name: "M23".into(),
        group: Pi::Perm(g.clone()),
    };
    let report = csinv(
        &pi,
        &Phi::Identity,
        &NamedGroup::new("M23", g.clone()),
        &NamedGroup::new("heptad stabilizer 2^4.A7", h.clone()),
        &NamedGroup::new("pair stabilizer L3(4).2", k.clone()),
        ClassMode::FixCountScan {
            h_action: &heptad_action,
            k_action: &pair_action,
        },
        limits,
    )?;
    debug_assert_eq!(report.s_h, s_of_perm_group(&h));
    Ok(M23Demo {
        order: g.order_u64().unwrap_or(0),
        four_transitive: true,
        heptads: heptads.len(),
        pair_action_transitive: action_transitive(&g, &pair_action)?,
        heptad_action_transitive: action_transitive(&g, &heptad_action)?,
        heptad_stabilizer_order: h.order_u64().unwrap_or(0),
        pair_stabilizer_order: k.order_u64().unwrap_or(0),
        equivalent,
        report,
    })
}
