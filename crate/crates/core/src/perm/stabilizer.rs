use super::chain::StabChain;
use super::group::PermGroup;
use super::permutation::Permutation;
use super::PermError;

/// `{g ∈ G : g(S) = S}` by backtracking over a chain whose base begins with `S`.
///
/// With base `b_0, …, b_{k-1}` equal to the points of `S`, the image of `b_i`
/// under `u_{k-1} ⋯ u_0` only depends on `u_i ⋯ u_0`, so a branch is cut as
/// soon as some `b_i` leaves `S`. Surviving leaves together with the pointwise
/// stabiliser of `S` generate the setwise stabiliser.
pub fn setwise_stabilizer(g: &PermGroup, set: &[usize]) -> Result<PermGroup, PermError> {
    let n = g.degree();
    let mut points = set.to_vec();
    points.sort_unstable();
    points.dedup();
    if let Some(&p) = points.iter().find(|&&p| p >= n) {
        return Err(PermError::PointOutOfRange { point: p, degree: n });
    }
    if points.is_empty() || points.len() == n {
        return Ok(g.clone());
    }

    let chain = g.chain_with_base_prefix(&points);
    let mut in_set = vec![false; n];
    for &p in &points {
        in_set[p] = true;
    }

    let mut gens = chain.stabilizer_generators(points.len());
    let mut result = StabChain::from_generators(n, &[], gens.iter());
    let mut partial = vec![Permutation::identity(n); points.len()];
    backtrack(&chain, &in_set, 0, &mut partial, &mut result, &mut gens);

    Ok(PermGroup::from_chain(gens, result))
}

fn backtrack(
    chain: &StabChain,
    in_set: &[bool],
    depth: usize,
    partial: &mut [Permutation],
    result: &mut StabChain,
    gens: &mut Vec<Permutation>,
) {
    let k = partial.len();
    if depth == k {
        let leaf = &partial[k - 1];
        if !result.contains(leaf) {
            result.add_generator(leaf.clone());
            gens.push(leaf.clone());
        }
        return;
    }
    let lvl = &chain.levels[depth];
    for &beta in &lvl.orbit {
        let image = if depth == 0 {
            beta
        } else {
            partial[depth - 1].apply(beta)
        };
        if !in_set[image] {
            continue;
        }
        let u = lvl.rep(beta).unwrap();
        let (lower, upper) = partial.split_at_mut(depth);
        if depth == 0 {
            upper[0].clone_from(u);
        } else {
            u.compose_into(&lower[depth - 1], &mut upper[0]);
        }
        backtrack(chain, in_set, depth + 1, partial, result, gens);
    }
}
