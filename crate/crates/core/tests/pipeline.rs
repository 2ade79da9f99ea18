use gassmann_core::fp::parse_presentation;
use gassmann_core::gassmann::{almost_conjugate, ClassMode, GroupTable};
use gassmann_core::obstruction::{
    catalog, check_cs_fp, csinv, s_of_perm_group, symmetric_coxeter_presentation, symmetric_group, Limits,
    NamedGroup, Phi, Pi, PiInput, Verdict,
};
use gassmann_core::perm::text::{format_perm_group, parse_perm_group};
use gassmann_core::perm::PermGroup;

fn entry(name: &str) -> gassmann_core::obstruction::CatalogEntry {
    catalog().into_iter().find(|e| e.name == name).expect(name)
}

fn gassmann_pair(g: &PermGroup) -> (PermGroup, PermGroup) {
    let table = GroupTable::new(g, 512).unwrap();
    let classes = table.subgroup_classes(table.order());
    let (i, j) = table.gassmann_pairs(&classes)[0];
    (table.to_perm_group(&classes[i]), table.to_perm_group(&classes[j]))
}

#[test]
fn order_32_pair_through_its_presentation() {
    let e = entry("Z8:(Z2xZ2)");
    let (h, k) = gassmann_pair(&e.group);
    let (ok, cert) = almost_conjugate(&e.group, &h, &k, ClassMode::Explicit).unwrap();
    assert!(ok && cert.verdict);
    let pi = PiInput {
        name: e.name.clone(),
        group: Pi::Fp(e.presentation.clone()),
    };
    let r = csinv(
        &pi,
        &Phi::Images(e.images().to_vec()),
        &NamedGroup::new("G", e.group.clone()),
        &NamedGroup::new("H", h.clone()),
        &NamedGroup::new("K", k.clone()),
        ClassMode::Explicit,
        &Limits::default(),
    )
    .unwrap();
    // phi is an isomorphism here, so the preimages are H and K themselves
    assert_eq!(r.s_h, s_of_perm_group(&h));
    assert_eq!(r.s_k, s_of_perm_group(&k));
    assert_eq!(r.csinv, 0);
    assert_eq!(r.verdict, Verdict::Consistent);
}

#[test]
fn fp_check_of_gl32_is_consistent() {
    let e = entry("GL(3,2)");
    let v = check_cs_fp(&e.presentation, &e.name, &NamedGroup::new(e.name.clone(), e.group.clone()), &Limits::default())
        .unwrap();
    assert_eq!(v.verdict, "consistent");
    assert!(v.pairs_examined > 0);
    assert!(!v.is_obstructed());
}

#[test]
fn coxeter_s6_surjects_onto_itself() {
    let p = symmetric_coxeter_presentation(6);
    let g = symmetric_group(6).unwrap();
    let v = check_cs_fp(&p, "S6", &NamedGroup::new("S6", g), &Limits::default()).unwrap();
    assert!(!v.is_obstructed());
}

#[test]
fn text_round_trip_keeps_the_group() {
    for e in catalog().into_iter().take(8) {
        let text = format_perm_group(&e.group);
        let back = parse_perm_group(&text).unwrap();
        assert_eq!(back.order(), e.group.order(), "{}", e.name);
        assert_eq!(s_of_perm_group(&back), s_of_perm_group(&e.group));
    }
}

#[test]
fn presentation_and_permutation_orders_agree() {
    let p = parse_presentation("< a, b | a^2, b^3, (a*b)^5 >").unwrap();
    let t = gassmann_core::fp::todd_coxeter(&p, &[], 1000).unwrap();
    assert_eq!(t.num_cosets(), 60);
    assert_eq!(entry("A5").group.order_u64(), Some(60));
}
