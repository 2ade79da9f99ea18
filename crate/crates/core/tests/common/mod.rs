#![allow(dead_code)]

use gassmann_core::obstruction::{catalog, NamedGroup};
use gassmann_core::perm::{PermGroup, Permutation};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 0x6a55_6d61;

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut images: Vec<u32> = (0..n as u32).collect();
    images.shuffle(rng);
    Permutation::from_images(images).unwrap()
}

/// Subgroups of small symmetric groups generated by random elements, with
/// order in `2..=max_order`.
pub fn random_groups(seed: u64, count: usize, max_order: u64) -> Vec<NamedGroup> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut attempt = 0;
    while out.len() < count {
        attempt += 1;
        let n = 4 + attempt % 5;
        let k = 1 + attempt % 2;
        let gens: Vec<Permutation> = (0..k).map(|_| random_permutation(&mut rng, n)).collect();
        let g = PermGroup::new(n, gens).unwrap();
        let order = g.order_u64().unwrap();
        if (2..=max_order).contains(&order) {
            out.push(NamedGroup::new(format!("random #{attempt} (order {order}, degree {n})"), g));
        }
    }
    out
}

/// Catalog groups of order at most `max_order`, then seeded random groups.
pub fn corpus(max_order: u64, random: usize) -> Vec<NamedGroup> {
    let mut out: Vec<NamedGroup> = catalog()
        .into_iter()
        .filter(|e| e.group.order_u64().is_some_and(|n| n <= max_order))
        .map(|e| NamedGroup::new(e.name, e.group))
        .collect();
    out.extend(random_groups(CORPUS_SEED, random, max_order));
    out
}
