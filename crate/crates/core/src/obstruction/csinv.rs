use crate::fp::{
    abelianized_relation_matrix, coset_table_from_hom, reidemeister_schreier, todd_coxeter, CosetTable,
    HomomorphismSpec, Presentation,
};
use crate::gassmann::{almost_conjugate, ClassMode, GassmannCertificate};
use crate::perm::{abelian_invariants_of_perm_group, PermGroup, Permutation};
use crate::snf::{abelian_invariants, s_invariant};

use super::catalog::{certify_symmetric_coxeter, symmetric_coxeter_presentation};
use super::report::{CsReport, GroupDescription, PhiDescription, Verdict};
use super::{Limits, ObstructionError};

/// A group whose `S` invariant is wanted: a permutation group, or a
/// finite-index subgroup of a finitely presented group given by its coset table.
#[derive(Clone, Debug)]
pub enum GroupHandle {
    Perm(PermGroup),
    Fp {
        presentation: Presentation,
        table: CosetTable,
    },
}

pub fn s_of_perm_group(g: &PermGroup) -> u8 {
    s_invariant(&abelian_invariants_of_perm_group(g))
}

/// `S = (number of even invariant factors of the abelianisation) mod 2`.
pub fn s_of_group(g: &GroupHandle) -> Result<u8, ObstructionError> {
    match g {
        GroupHandle::Perm(p) => Ok(s_of_perm_group(p)),
        GroupHandle::Fp { presentation, table } => {
            let sub = reidemeister_schreier(presentation, table)?;
            let m = abelianized_relation_matrix(&sub);
            let inv = abelian_invariants(&m, sub.num_generators()).expect("matrix width matches");
            Ok(s_invariant(&inv))
        }
    }
}

#[derive(Clone, Debug)]
pub struct NamedGroup {
    pub name: String,
    pub group: PermGroup,
}

impl NamedGroup {
    pub fn new(name: impl Into<String>, group: PermGroup) -> Self {
        NamedGroup {
            name: name.into(),
            group,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Pi {
    Perm(PermGroup),
    Fp(Presentation),
}

#[derive(Clone, Debug)]
pub struct PiInput {
    pub name: String,
    pub group: Pi,
}

/// The surjection `φ: π → G`: the identity (`π = G`), or the images of the
/// generators of `π` in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Phi {
    Identity,
    Images(Vec<Permutation>),
}

impl Phi {
    fn describe(&self) -> PhiDescription {
        match self {
            Phi::Identity => PhiDescription::identity(),
            Phi::Images(v) => PhiDescription::images(v),
        }
    }
}

fn check_images_onto(images: &[Permutation], g: &PermGroup) -> Result<(), ObstructionError> {
    if images.iter().any(|x| x.degree() != g.degree() || !g.contains(x)) {
        return Err(ObstructionError::NotSurjective("an image lies outside G".into()));
    }
    let image = PermGroup::new(g.degree(), images.to_vec())?;
    if image.order() != g.order() {
        return Err(ObstructionError::NotSurjective(format!(
            "image has order {}, G has order {}",
            image.order(),
            g.order()
        )));
    }
    Ok(())
}

/// `φ⁻¹(H)` for a homomorphism between permutation groups, through the
/// graph `{(x, φ(x))}`: the kernel is the pointwise stabiliser of the `G`
/// points, and each generator of `H` lifts through the stabiliser chain.
fn perm_preimage(pi: &PermGroup, images: &[Permutation], h: &PermGroup) -> Result<PermGroup, ObstructionError> {
    let n = pi.degree();
    let m = h.degree();
    if images.len() != pi.generators().len() {
        return Err(ObstructionError::NotSurjective("wrong number of generator images".into()));
    }
    let gens = pi
        .generators()
        .iter()
        .zip(images)
        .map(|(x, y)| {
            let mut im = x.images().to_vec();
            im.extend(y.images().iter().map(|&v| v + n as u32));
            Permutation::from_images(im)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let graph = PermGroup::new(n + m, gens)?;
    if graph.order() != pi.order() {
        return Err(ObstructionError::NotSurjective("images do not define a homomorphism".into()));
    }
    let g_points: Vec<usize> = (n..n + m).collect();
    let chain = graph.chain_with_base_prefix(&g_points);
    let mut pre = chain.stabilizer_generators(m);
    for x in h.generators() {
        let mut im: Vec<u32> = (0..n as u32).collect();
        im.extend(x.images().iter().map(|&v| v + n as u32));
        let target = Permutation::from_images(im)?;
        let lift = chain
            .factor_prefix(&target, m)
            .ok_or_else(|| ObstructionError::NotSurjective("H is not inside the image".into()))?;
        pre.push(lift);
    }
    let projected = pre
        .iter()
        .map(|x| Permutation::from_images(x.images()[..n].to_vec()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PermGroup::new(n, projected)?)
}

/// Evidence that `φ: P → G` is injective (so `φ⁻¹(H) ≅ H`), or `None`.
fn injectivity_certificate(
    p: &Presentation,
    g: &PermGroup,
    limits: &Limits,
) -> Result<Option<String>, ObstructionError> {
    if let Some(order) = g.order_u64().filter(|&o| o <= limits.max_cosets as u64) {
        if let Ok(t) = todd_coxeter(p, &[], limits.max_cosets) {
            if t.num_cosets() as u64 == order {
                return Ok(Some(format!(
                    "phi injective: coset enumeration gives |pi| = {order} = |G|"
                )));
            }
        }
        return Ok(None);
    }
    // Any presentation containing the Coxeter relators of S_n is a quotient
    // of the Coxeter group, so has order at most n!.
    let n = p.num_generators() + 1;
    let has_coxeter_relators = (2..=24).contains(&n)
        && symmetric_coxeter_presentation(n)
            .relators
            .iter()
            .all(|r| p.relators.contains(r));
    if has_coxeter_relators && certify_symmetric_coxeter(n, limits.max_cosets)? {
        return Ok(Some(format!(
            "phi injective: coset enumeration of the Coxeter chain gives |pi| <= {n}! = |G|"
        )));
    }
    Ok(None)
}

/// S of `φ⁻¹(H)` and `φ⁻¹(K)`, with notes on how they were obtained.
fn preimage_s_values(
    pi: &PiInput,
    phi: &Phi,
    g: &PermGroup,
    h: &PermGroup,
    k: &PermGroup,
    limits: &Limits,
) -> Result<(u8, u8, String), ObstructionError> {
    match (&pi.group, phi) {
        (Pi::Perm(p), Phi::Identity) => {
            if p.degree() != g.degree() || p.order() != g.order() || !p.is_subgroup_of(g) {
                return Err(ObstructionError::NotSurjective("identity requires pi = G".into()));
            }
            Ok((s_of_perm_group(h), s_of_perm_group(k), "phi = identity; S computed on H and K directly".into()))
        }
        (Pi::Perm(p), Phi::Images(images)) => {
            check_images_onto(images, g)?;
            let ph = perm_preimage(p, images, h)?;
            let pk = perm_preimage(p, images, k)?;
            Ok((
                s_of_perm_group(&ph),
                s_of_perm_group(&pk),
                format!(
                    "preimages realized as permutation subgroups of orders {} and {}",
                    ph.order(),
                    pk.order()
                ),
            ))
        }
        (Pi::Fp(_), Phi::Identity) => Err(ObstructionError::NotSurjective(
            "a presented group needs explicit generator images".into(),
        )),
        (Pi::Fp(p), Phi::Images(images)) => {
            check_images_onto(images, g)?;
            let spec = HomomorphismSpec::new(p, g.degree(), images.clone())?;
            let go = g.order();
            let too_big = |x: &PermGroup| (go / x.order()) > num_bigint::BigUint::from(limits.max_hom_index);
            if !too_big(h) && !too_big(k) {
                let th = coset_table_from_hom(p, &spec, h, limits.max_hom_index)?;
                let tk = coset_table_from_hom(p, &spec, k, limits.max_hom_index)?;
                let notes = format!(
                    "preimages via coset tables of index {} and {}, Reidemeister-Schreier and Smith form",
                    th.num_cosets(),
                    tk.num_cosets()
                );
                let sh = s_of_group(&GroupHandle::Fp {
                    presentation: p.clone(),
                    table: th,
                })?;
                let sk = s_of_group(&GroupHandle::Fp {
                    presentation: p.clone(),
                    table: tk,
                })?;
                return Ok((sh, sk, notes));
            }
            match injectivity_certificate(p, g, limits)? {
                Some(note) => Ok((
                    s_of_perm_group(h),
                    s_of_perm_group(k),
                    format!("index above {}; {note}; S computed on H and K directly", limits.max_hom_index),
                )),
                None => Err(ObstructionError::Infeasible(format!(
                    "index [G:H] = {} exceeds {} and phi is not certified injective",
                    go / h.order(),
                    limits.max_hom_index
                ))),
            }
        }
    }
}

pub(crate) fn report_from_parts(
    pi: &PiInput,
    phi: &Phi,
    g: &NamedGroup,
    h: &NamedGroup,
    k: &NamedGroup,
    certificate: GassmannCertificate,
    s_h: u8,
    s_k: u8,
    budget_notes: String,
) -> CsReport {
    let csinv = s_h ^ s_k;
    let verdict = if csinv == 1 && certificate.verdict {
        Verdict::Obstructed
    } else {
        Verdict::Consistent
    };
    CsReport {
        pi: pi.name.clone(),
        phi: phi.describe(),
        g: GroupDescription::of(&g.name, &g.group),
        h: GroupDescription::of(&h.name, &h.group),
        k: GroupDescription::of(&k.name, &k.group),
        certificate,
        s_h,
        s_k,
        csinv,
        verdict,
        budget_notes,
    }
}

/// `csinv(π; φ) = S(φ⁻¹(H)) − S(φ⁻¹(K))` mod 2 for an almost-conjugate pair
/// `(H, K)` of `G`.
pub fn csinv(
    pi: &PiInput,
    phi: &Phi,
    g: &NamedGroup,
    h: &NamedGroup,
    k: &NamedGroup,
    mode: ClassMode<'_>,
    limits: &Limits,
) -> Result<CsReport, ObstructionError> {
    for x in [h, k] {
        if x.group.order_u64().is_none_or(|n| n > limits.max_group_order) {
            return Err(ObstructionError::Infeasible(format!(
                "{} has order {}, above the enumeration limit {}",
                x.name,
                x.group.order(),
                limits.max_group_order
            )));
        }
    }
    let (ok, cert) = almost_conjugate(&g.group, &h.group, &k.group, mode)?;
    if !ok {
        return Err(ObstructionError::NotGassmann(Box::new(cert)));
    }
    let (s_h, s_k, notes) = preimage_s_values(pi, phi, &g.group, &h.group, &k.group, limits)?;
    Ok(report_from_parts(pi, phi, g, h, k, cert, s_h, s_k, notes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::{parse_presentation, Presentation};
    use crate::gassmann::ClassMode;

    fn p(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, &cycles.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn s_of_small_groups() {
        let a5 = PermGroup::new(5, vec![p(5, &[&[0, 1, 2]]), p(5, &[&[0, 1, 2, 3, 4]])]).unwrap();
        assert_eq!(s_of_perm_group(&a5), 0);
        let z422 = PermGroup::new(
            8,
            vec![p(8, &[&[0, 1, 2, 3]]), p(8, &[&[4, 5]]), p(8, &[&[6, 7]])],
        )
        .unwrap();
        assert_eq!(s_of_perm_group(&z422), 1);
    }

    #[test]
    fn free_group_has_s_zero() {
        let f = Presentation::free(&["a", "b", "c"]);
        let t = todd_coxeter(&f, &[crate::fp::Word::generator(0), crate::fp::Word::generator(1), crate::fp::Word::generator(2)], 10).unwrap();
        assert_eq!(
            s_of_group(&GroupHandle::Fp {
                presentation: f,
                table: t
            })
            .unwrap(),
            0
        );
    }

    #[test]
    fn equal_subgroups_give_zero() {
        let s4 = PermGroup::new(4, vec![p(4, &[&[0, 1]]), p(4, &[&[0, 1, 2, 3]])]).unwrap();
        let h = PermGroup::new(4, vec![p(4, &[&[0, 1]])]).unwrap();
        let pi = PiInput {
            name: "S4".into(),
            group: Pi::Perm(s4.clone()),
        };
        let g = NamedGroup::new("S4", s4);
        let hn = NamedGroup::new("H", h);
        let r = csinv(&pi, &Phi::Identity, &g, &hn, &hn, ClassMode::Auto, &Limits::default()).unwrap();
        assert_eq!(r.csinv, 0);
        assert_eq!(r.verdict, Verdict::Consistent);
    }

    #[test]
    fn rejects_non_gassmann_pair() {
        let s4 = PermGroup::new(4, vec![p(4, &[&[0, 1]]), p(4, &[&[0, 1, 2, 3]])]).unwrap();
        let pi = PiInput {
            name: "S4".into(),
            group: Pi::Perm(s4.clone()),
        };
        let g = NamedGroup::new("S4", s4);
        let h = NamedGroup::new("H", PermGroup::new(4, vec![p(4, &[&[0, 1]])]).unwrap());
        let k = NamedGroup::new("K", PermGroup::new(4, vec![p(4, &[&[0, 1], &[2, 3]])]).unwrap());
        assert!(matches!(
            csinv(&pi, &Phi::Identity, &g, &h, &k, ClassMode::Auto, &Limits::default()),
            Err(ObstructionError::NotGassmann(_))
        ));
    }

    #[test]
    fn free_group_onto_s3_gives_zero() {
        let f = parse_presentation("< a, b >").unwrap();
        let s3 = PermGroup::new(3, vec![p(3, &[&[0, 1]]), p(3, &[&[0, 1, 2]])]).unwrap();
        let pi = PiInput {
            name: "F2".into(),
            group: Pi::Fp(f),
        };
        let g = NamedGroup::new("S3", s3.clone());
        let h = NamedGroup::new("H", PermGroup::new(3, vec![p(3, &[&[0, 1]])]).unwrap());
        let k = NamedGroup::new("K", PermGroup::new(3, vec![p(3, &[&[1, 2]])]).unwrap());
        let phi = Phi::Images(s3.generators().to_vec());
        let r = csinv(&pi, &phi, &g, &h, &k, ClassMode::Auto, &Limits::default()).unwrap();
        assert_eq!((r.s_h, r.s_k, r.csinv), (0, 0, 0));
    }

    #[test]
    fn perm_preimage_of_quotient() {
        // S4 -> S3 via the action on the three pairings; preimage of a point
        // stabiliser is D4 (order 8), of the trivial group the Klein four.
        let s4 = PermGroup::new(4, vec![p(4, &[&[0, 1]]), p(4, &[&[0, 1, 2, 3]])]).unwrap();
        // pairings: 0 = {01|23}, 1 = {02|13}, 2 = {03|12}
        let images = vec![p(3, &[&[1, 2]]), p(3, &[&[0, 2]])];
        let h = PermGroup::new(3, vec![p(3, &[&[1, 2]])]).unwrap();
        let pre = perm_preimage(&s4, &images, &h).unwrap();
        assert_eq!(pre.order_u64(), Some(8));
        let pre1 = perm_preimage(&s4, &images, &PermGroup::trivial(3)).unwrap();
        assert_eq!(pre1.order_u64(), Some(4));
    }
}
