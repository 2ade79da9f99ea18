use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::chain::StabChain;
use super::group::PermGroup;
use super::permutation::Permutation;
use crate::snf::AbelianInvariants;

/// Smallest normal subgroup of `g` containing `seeds`.
pub fn normal_closure(g: &PermGroup, seeds: Vec<Permutation>) -> PermGroup {
    let n = g.degree();
    let mut chain = StabChain::new(n, &[]);
    let mut gens = Vec::new();
    let mut queue = seeds;
    while let Some(x) = queue.pop() {
        if x.is_identity() || chain.contains(&x) {
            continue;
        }
        chain.add_generator(x.clone());
        for s in g.generators() {
            queue.push(x.conjugate_by(s));
        }
        gens.push(x);
    }
    PermGroup::from_chain(gens, chain)
}

fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
    &(&(&a.inverse() * &b.inverse()) * a) * b
}

/// `G′`, the normal closure of the commutators of generator pairs.
pub fn derived_subgroup(g: &PermGroup) -> PermGroup {
    let gens = g.generators();
    let mut seeds = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            seeds.push(commutator(a, b));
        }
    }
    normal_closure(g, seeds)
}

fn primes_up_to(n: usize) -> Vec<u64> {
    (2..=n as u64)
        .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .collect()
}

/// Invariant factors of `G/G′` (free rank 0).
///
/// No quotient group is formed. For each prime `p` dividing `[G : G′]`, the
/// subgroups `U_j = ⟨G′, x^{pʲ} : x a generator⟩` are the preimages of
/// `A^{pʲ}` for `A = G/G′`, and `|U_{j-1} : U_j| = p^{r_j}` where `r_j`
/// counts the cyclic `p`-parts of order at least `pʲ`.
pub fn abelian_invariants_of_perm_group(g: &PermGroup) -> AbelianInvariants {
    let derived = derived_subgroup(g);
    let index = g.order() / derived.order();
    if index.is_one() {
        return AbelianInvariants::new(Vec::new(), 0);
    }
    let derived_gens = derived.strong_generators();

    // prime → exponents of its cyclic factors, largest first
    let mut parts: Vec<(u64, Vec<u32>)> = Vec::new();
    for p in primes_up_to(g.degree()) {
        if !(&index % p).is_zero() {
            continue;
        }
        let mut layer_ranks: Vec<u32> = Vec::new();
        let mut prev = g.order().clone();
        let mut power = p;
        loop {
            let mut chain = StabChain::from_generators(g.degree(), &[], derived_gens.iter());
            for x in g.generators() {
                chain.add_generator(x.pow(power));
            }
            let order = chain.order();
            let ratio = &prev / &order;
            let rank = log_exact(&ratio, p);
            if rank == 0 {
                break;
            }
            layer_ranks.push(rank);
            prev = order;
            power = power.checked_mul(p).expect("exponent overflow");
        }
        let mut exps = Vec::new();
        for (j, &r) in layer_ranks.iter().enumerate() {
            let next = layer_ranks.get(j + 1).copied().unwrap_or(0);
            for _ in 0..(r - next) {
                exps.push(j as u32 + 1);
            }
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        parts.push((p, exps));
    }

    let count = parts.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors: Vec<BigUint> = (0..count)
        .map(|i| {
            parts.iter().fold(BigUint::one(), |acc, (p, exps)| match exps.get(i) {
                Some(&e) => acc * BigUint::from(*p).pow(e),
                None => acc,
            })
        })
        .collect();
    factors.reverse();
    debug_assert_eq!(factors.iter().product::<BigUint>(), index);
    AbelianInvariants::new(factors, 0)
}

fn log_exact(x: &BigUint, p: u64) -> u32 {
    let mut x = x.clone();
    let mut k = 0;
    while !x.is_one() {
        let (q, r) = x.div_rem(&BigUint::from(p));
        assert!(r.is_zero(), "layer index is not a power of {p}");
        x = q;
        k += 1;
    }
    k
}

/// Convenience: `[G : G′]` as a `u64`, when it fits.
pub fn abelianization_order(g: &PermGroup) -> Option<u64> {
    (g.order() / derived_subgroup(g).order()).to_u64()
}
