use rayon::prelude::*;

use crate::fp::{hom_search, Presentation};
use crate::gassmann::{coset_action_of_subgroup, search_gassmann_pairs, ClassMode, GroupAction, GroupTable};
use crate::perm::PermGroup;

use super::csinv::{csinv, NamedGroup, Phi, Pi, PiInput};
use super::report::{CsReport, CsVerification, Verdict};
use super::{Limits, ObstructionError};

fn unknown(pi: &str, note: String) -> CsVerification {
    CsVerification {
        pi: pi.to_string(),
        verdict: Verdict::Unknown.as_str().to_string(),
        quotients_examined: 0,
        pairs_examined: 0,
        reports: Vec::new(),
        budget_notes: note,
    }
}

fn too_large(g: &PermGroup, limits: &Limits) -> bool {
    g.order_u64().is_none_or(|n| n > limits.max_subgroup_enum_order)
}

/// Reports for every Gassmann pair of `π/N`, pulled back along the quotient map.
fn reports_for_quotient(
    pi: &NamedGroup,
    n_group: &PermGroup,
    limits: &Limits,
) -> Result<(usize, Vec<CsReport>), ObstructionError> {
    let images = match coset_action_of_subgroup(&pi.group, n_group)? {
        GroupAction::Images { images } => images,
        GroupAction::OnBlocks { .. } => unreachable!("coset actions are given by images"),
    };
    let degree = images.first().map_or(1, |x| x.degree());
    let quotient = PermGroup::new(degree, images.clone())?;
    let pairs = search_gassmann_pairs(&quotient)?;
    let input = PiInput {
        name: pi.name.clone(),
        group: Pi::Perm(pi.group.clone()),
    };
    let g = NamedGroup::new(format!("{}/N (|N| = {})", pi.name, n_group.order()), quotient);
    let phi = Phi::Images(images);
    let mut reports = Vec::with_capacity(pairs.len());
    for pair in &pairs {
        let h = NamedGroup::new("H", pair.h.clone());
        let k = NamedGroup::new("K", pair.k.clone());
        reports.push(csinv(&input, &phi, &g, &h, &k, ClassMode::Auto, limits)?);
    }
    Ok((pairs.len(), reports))
}

/// Exhaustive CS check for a finite group: every quotient `π/N`, every
/// nonconjugate Gassmann pair of it, and `S` of both preimages.
pub fn verify_cs_finite(pi: &NamedGroup, limits: &Limits) -> Result<CsVerification, ObstructionError> {
    if too_large(&pi.group, limits) {
        return Ok(unknown(
            &pi.name,
            format!(
                "|pi| = {} exceeds the subgroup enumeration limit {}",
                pi.group.order(),
                limits.max_subgroup_enum_order
            ),
        ));
    }
    let table = GroupTable::new(&pi.group, limits.max_subgroup_enum_order)?;
    let normals: Vec<PermGroup> = table
        .normal_subgroups()
        .iter()
        .map(|c| table.to_perm_group(c))
        .collect();
    let per_quotient = normals
        .par_iter()
        .map(|n| reports_for_quotient(pi, n, limits))
        .collect::<Result<Vec<_>, _>>()?;
    let pairs_examined = per_quotient.iter().map(|(n, _)| n).sum();
    let reports: Vec<CsReport> = per_quotient.into_iter().flat_map(|(_, r)| r).collect();
    let verdict = if reports.iter().any(|r| r.verdict == Verdict::Obstructed) {
        "obstructed"
    } else {
        "satisfies CS (exhaustive)"
    };
    Ok(CsVerification {
        pi: pi.name.clone(),
        verdict: verdict.to_string(),
        quotients_examined: normals.len(),
        pairs_examined,
        reports,
        budget_notes: format!("all {} normal subgroups examined", normals.len()),
    })
}

/// CS check of a presented group against one target `G`: every surjection
/// `π → G` and every Gassmann pair of `G`.
pub fn check_cs_fp(
    p: &Presentation,
    name: &str,
    g: &NamedGroup,
    limits: &Limits,
) -> Result<CsVerification, ObstructionError> {
    let pairs = if g.group.is_abelian() {
        Vec::new()
    } else if too_large(&g.group, limits) {
        return Ok(unknown(
            name,
            format!(
                "|G| = {} exceeds the subgroup enumeration limit {}",
                g.group.order(),
                limits.max_subgroup_enum_order
            ),
        ));
    } else {
        search_gassmann_pairs(&g.group)?
    };
    if pairs.is_empty() {
        return Ok(CsVerification {
            pi: name.to_string(),
            verdict: Verdict::Consistent.as_str().to_string(),
            quotients_examined: 0,
            pairs_examined: 0,
            reports: Vec::new(),
            budget_notes: format!("{} has no nonconjugate Gassmann pairs", g.name),
        });
    }
    let search = hom_search(p, &g.group, true, limits.hom_node_budget)?;
    let input = PiInput {
        name: name.to_string(),
        group: Pi::Fp(p.clone()),
    };
    let work: Vec<(usize, usize)> = (0..search.homs.len())
        .flat_map(|i| (0..pairs.len()).map(move |j| (i, j)))
        .collect();
    let reports = work
        .par_iter()
        .map(|&(i, j)| {
            let phi = Phi::Images(search.homs[i].images().to_vec());
            let h = NamedGroup::new("H", pairs[j].h.clone());
            let k = NamedGroup::new("K", pairs[j].k.clone());
            csinv(&input, &phi, g, &h, &k, ClassMode::Auto, limits)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let verdict = if reports.iter().any(|r| r.verdict == Verdict::Obstructed) {
        Verdict::Obstructed
    } else if !search.exhaustive {
        Verdict::Unknown
    } else {
        Verdict::Consistent
    };
    let mut notes = format!(
        "{} surjections, {} pairs, {} search nodes",
        search.homs.len(),
        pairs.len(),
        search.nodes
    );
    if !search.exhaustive {
        notes.push_str("; homomorphism search budget exhausted");
    }
    Ok(CsVerification {
        pi: name.to_string(),
        verdict: verdict.as_str().to_string(),
        quotients_examined: search.homs.len(),
        pairs_examined: reports.len(),
        reports,
        budget_notes: notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::parse_presentation;
    use crate::perm::Permutation;

    fn p(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, &cycles.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn abelian_group_satisfies_cs() {
        let g = PermGroup::new(6, vec![p(6, &[&[0, 1], &[2, 3, 4, 5]])]).unwrap();
        let v = verify_cs_finite(&NamedGroup::new("Z4", g), &Limits::default()).unwrap();
        assert_eq!(v.verdict, "satisfies CS (exhaustive)");
        assert_eq!(v.pairs_examined, 0);
    }

    #[test]
    fn s4_quotients() {
        let g = PermGroup::new(4, vec![p(4, &[&[0, 1]]), p(4, &[&[0, 1, 2, 3]])]).unwrap();
        let v = verify_cs_finite(&NamedGroup::new("S4", g), &Limits::default()).unwrap();
        // normal subgroups 1, V4, A4, S4
        assert_eq!(v.quotients_examined, 4);
        assert_eq!(v.pairs_examined, 0);
        assert_eq!(v.verdict, "satisfies CS (exhaustive)");
    }

    #[test]
    fn cyclic_presentation_onto_s3_is_vacuous() {
        let pres = parse_presentation("< a | a^6 >").unwrap();
        let s3 = PermGroup::new(3, vec![p(3, &[&[0, 1]]), p(3, &[&[0, 1, 2]])]).unwrap();
        let v = check_cs_fp(&pres, "Z6", &NamedGroup::new("S3", s3), &Limits::default()).unwrap();
        assert_eq!(v.verdict, "consistent");
        assert!(v.reports.is_empty());
    }

    #[test]
    fn oversized_group_is_unknown() {
        let g = PermGroup::new(6, vec![p(6, &[&[0, 1]]), p(6, &[&[0, 1, 2, 3, 4, 5]])]).unwrap();
        let v = verify_cs_finite(&NamedGroup::new("S6", g), &Limits::default()).unwrap();
        assert!(v.is_unknown());
    }
}
