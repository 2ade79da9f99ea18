use std::collections::BTreeMap;

use crate::fp::{coset_action, hom_search, parse_presentation, todd_coxeter, HomomorphismSpec, Presentation, Word};
use crate::gassmann::{order_statistics, regular_embedding, ClassMode};
use crate::perm::text::parse_cycles;
use crate::perm::{abelian_invariants_of_perm_group, PermGroup, Permutation, DEFAULT_ENUMERATION_LIMIT};

use super::csinv::{csinv, NamedGroup, Phi, Pi, PiInput};
use super::report::CsReport;
use super::{Limits, ObstructionError};

/// `ℤ₂² ⋊ ℤ₄`, with the generator of `ℤ₄` swapping the two involutions.
pub const PRESENTATION_16GAMMA2C1: &str = "< u, v, c | u^2, v^2, c^4, [u, v], c*u*c^-1*v^-1, c*v*c^-1*u^-1 >";

pub const SYMMETRIC_GROUP_MAX_DEGREE: usize = 24;

pub fn symmetric_group(n: usize) -> Result<PermGroup, ObstructionError> {
    if n == 0 || n > SYMMETRIC_GROUP_MAX_DEGREE {
        return Err(ObstructionError::InvalidParameters(format!(
            "symmetric group degree must be in 1..={SYMMETRIC_GROUP_MAX_DEGREE}, got {n}"
        )));
    }
    if n == 1 {
        return Ok(PermGroup::trivial(1));
    }
    let t = Permutation::from_cycles(n, &[vec![0, 1]])?;
    let c = Permutation::from_cycles(n, &[(0..n).collect()])?;
    Ok(PermGroup::new(n, vec![t, c])?)
}

/// Coxeter presentation of `S_n` on `s1, …, s(n-1)`.
pub fn symmetric_coxeter_presentation(n: usize) -> Presentation {
    assert!(n >= 2, "Coxeter presentation needs n >= 2");
    let names: Vec<String> = (1..n).map(|i| format!("s{i}")).collect();
    let s = |i: usize| Word::generator(i);
    let mut rels = Vec::new();
    for i in 0..n - 1 {
        rels.push(s(i).pow(2));
        for j in i + 1..n - 1 {
            let e = if j == i + 1 { 3 } else { 2 };
            rels.push(s(i).concat(&s(j)).pow(e));
        }
    }
    Presentation::new(names, rels).expect("well-formed Coxeter presentation")
}

fn coxeter_images(n: usize) -> Vec<Permutation> {
    (0..n - 1)
        .map(|i| Permutation::from_cycles(n, &[vec![i, i + 1]]).unwrap())
        .collect()
}

/// Shows `|⟨Coxeter presentation of S_n⟩| ≤ n!` by enumerating, for each
/// `k = 2..=n`, the cosets of `⟨s1..s(k-2)⟩` in the rank-`(k-1)` presentation
/// and checking the index is `k`.
pub fn certify_symmetric_coxeter(n: usize, max_cosets: usize) -> Result<bool, ObstructionError> {
    for k in 2..=n {
        let p = symmetric_coxeter_presentation(k);
        let sub: Vec<Word> = (0..k - 2).map(Word::generator).collect();
        let t = todd_coxeter(&p, &sub, max_cosets)?;
        if t.num_cosets() != k {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Direct product of cyclic groups of the given orders, on disjoint cycles.
pub fn abelian_group(orders: &[usize]) -> Result<PermGroup, ObstructionError> {
    if orders.contains(&0) {
        return Err(ObstructionError::InvalidParameters("cyclic factor of order 0".into()));
    }
    let degree = orders.iter().sum::<usize>().max(1);
    let mut gens = Vec::new();
    let mut start = 0;
    for &m in orders {
        gens.push(Permutation::from_cycles(degree, &[(start..start + m).collect()])?);
        start += m;
    }
    Ok(PermGroup::new(degree, gens)?)
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every abelian group of order `n`, as a list of prime-power cyclic factors.
pub fn abelian_groups_of_order(n: usize) -> Vec<Vec<usize>> {
    let mut factors: BTreeMap<usize, u32> = BTreeMap::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        while m % p == 0 {
            *factors.entry(p).or_insert(0) += 1;
            m /= p;
        }
        p += 1;
    }
    let mut out = vec![Vec::new()];
    for (&p, &e) in &factors {
        let mut next = Vec::new();
        for prefix in &out {
            for part in partitions(e, e) {
                let mut v: Vec<usize> = prefix.clone();
                v.extend(part.iter().map(|&k| p.pow(k)));
                next.push(v);
            }
        }
        out = next;
    }
    out
}

pub fn presentation_16gamma2c1() -> Presentation {
    parse_presentation(PRESENTATION_16GAMMA2C1).expect("valid presentation")
}

fn regular_from_presentation(p: &Presentation, max_cosets: usize) -> Result<PermGroup, ObstructionError> {
    let t = todd_coxeter(p, &[], max_cosets)?;
    Ok(coset_action(&t)?)
}

/// Regular permutation realization of `16Γ₂c₁`, self-tested against its
/// order, order statistics and abelianization.
pub fn build_16gamma2c1() -> Result<PermGroup, ObstructionError> {
    let g = regular_from_presentation(&presentation_16gamma2c1(), 1000)?;
    if g.order_u64() != Some(16) || g.degree() != 16 {
        return Err(ObstructionError::SelfTest(format!("16Γ₂c₁ has order {}", g.order())));
    }
    let stats = order_statistics(&g, 16)?;
    let expected: BTreeMap<u64, u64> = [(1, 1), (2, 7), (4, 8)].into_iter().collect();
    if stats.counts != expected {
        return Err(ObstructionError::SelfTest(format!("16Γ₂c₁ order statistics {:?}", stats.counts)));
    }
    let inv = abelian_invariants_of_perm_group(&g);
    if inv.torsion_u64() != vec![2, 4] || inv.free_rank != 0 {
        return Err(ObstructionError::SelfTest(format!("16Γ₂c₁ abelianization {inv:?}")));
    }
    Ok(g)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The unique `x` in `1..=b*c` with `x ≡ rb (mod b)` and `x ≡ rc (mod c)`.
fn crt(rb: i64, b: u64, rc: i64, c: u64) -> u64 {
    let m = b * c;
    (1..=m)
        .find(|&x| (x as i64 - rb).rem_euclid(b as i64) == 0 && (x as i64 - rc).rem_euclid(c as i64) == 0)
        .expect("coprime moduli")
}

/// `⟨x, y, z | x^(2a) = y², yxy⁻¹ = x⁻¹, z^(bc), xzx⁻¹ = z^s, yzy⁻¹ = z^t⟩`,
/// where `x` inverts `ℤ_c` and `y` inverts `ℤ_b`.
pub fn presentation_q8abc(a: u64, b: u64, c: u64) -> Result<Presentation, ObstructionError> {
    if a == 0 || b == 0 || c == 0 {
        return Err(ObstructionError::InvalidParameters("a, b, c must be positive".into()));
    }
    if b % 2 == 0 || c % 2 == 0 {
        return Err(ObstructionError::InvalidParameters("b and c must be odd".into()));
    }
    if gcd(a, b) != 1 || gcd(a, c) != 1 || gcd(b, c) != 1 {
        return Err(ObstructionError::InvalidParameters("a, b, c must be pairwise coprime".into()));
    }
    let s = crt(1, b, -1, c);
    let t = crt(-1, b, 1, c);
    let text = format!(
        "< x, y, z | x^{} = y^2, y*x*y^-1 = x^-1, z^{}, x*z*x^-1 = z^{s}, y*z*y^-1 = z^{t} >",
        2 * a,
        b * c
    );
    Ok(parse_presentation(&text)?)
}

/// `Q(8a, b, c)` as a regular permutation group of degree `8abc`.
pub fn build_q8abc(a: u64, b: u64, c: u64) -> Result<PermGroup, ObstructionError> {
    let p = presentation_q8abc(a, b, c)?;
    let order = 8 * a * b * c;
    if order > DEFAULT_ENUMERATION_LIMIT {
        return Err(ObstructionError::InvalidParameters(format!("order {order} exceeds the enumeration limit")));
    }
    let g = regular_from_presentation(&p, (4 * order as usize).max(1000))?;
    if g.order_u64() != Some(order) {
        return Err(ObstructionError::SelfTest(format!(
            "Q({}, {b}, {c}) has order {}, expected {order}",
            8 * a,
            g.order()
        )));
    }
    Ok(g)
}

/// A finite group given both by a presentation and by a faithful permutation
/// representation; `group` is generated by the images of the presentation's
/// generators, in order.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub presentation: Presentation,
    pub group: PermGroup,
}

impl CatalogEntry {
    pub fn images(&self) -> &[Permutation] {
        self.group.generators()
    }

    pub fn hom(&self) -> Result<HomomorphismSpec, ObstructionError> {
        Ok(HomomorphismSpec::new(&self.presentation, self.group.degree(), self.images().to_vec())?)
    }
}

fn entry(name: &str, pres: &str, degree: usize, images: &[&str]) -> CatalogEntry {
    let gens = images.iter().map(|s| parse_cycles(degree, s).unwrap()).collect();
    CatalogEntry {
        name: name.to_string(),
        presentation: parse_presentation(pres).unwrap(),
        group: PermGroup::new(degree, gens).unwrap(),
    }
}

fn regular_entry(name: &str, p: Presentation, g: PermGroup) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        presentation: p,
        group: g,
    }
}

/// Right action of a 2×2 matrix over 𝔽₃ on the eight nonzero row vectors.
fn f3_matrix(m: [[i64; 2]; 2]) -> Permutation {
    let vecs: Vec<(i64, i64)> = (0..9).map(|i| (i / 3, i % 3)).filter(|&v| v != (0, 0)).collect();
    let images = vecs
        .iter()
        .map(|&(a, b)| {
            let w = ((a * m[0][0] + b * m[1][0]).rem_euclid(3), (a * m[0][1] + b * m[1][1]).rem_euclid(3));
            vecs.iter().position(|&v| v == w).unwrap() as u32
        })
        .collect();
    Permutation::from_images(images).unwrap()
}

/// Right action of a 3×3 matrix over 𝔽₂ on the seven nonzero row vectors.
fn f2_matrix(m: [[u32; 3]; 3]) -> Permutation {
    let images = (1u32..8)
        .map(|v| {
            let mut w = 0;
            for (i, row) in m.iter().enumerate() {
                if v >> i & 1 == 1 {
                    for (j, &e) in row.iter().enumerate() {
                        w ^= e << j;
                    }
                }
            }
            w - 1
        })
        .collect();
    Permutation::from_images(images).unwrap()
}

fn first_surjection(p: &Presentation, target: &PermGroup) -> Vec<Permutation> {
    let search = hom_search(p, target, true, 10_000_000).expect("small target");
    search.homs[0].images().to_vec()
}

/// The finite groups used throughout the test corpus.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = vec![
        entry("Z6", "< a | a^6 >", 6, &["(1,2,3,4,5,6)"]),
        entry("D4", "< r, s | r^4, s^2, (s*r)^2 >", 4, &["(1,2,3,4)", "(1,3)"]),
        entry("D5", "< r, s | r^5, s^2, (s*r)^2 >", 5, &["(1,2,3,4,5)", "(2,5)(3,4)"]),
        entry("S3", "< a, b | a^2, b^3, (a*b)^2 >", 3, &["(1,2)", "(1,2,3)"]),
        entry("A4", "< a, b | a^2, b^3, (a*b)^3 >", 4, &["(1,2)(3,4)", "(1,2,3)"]),
        entry("A5", "< a, b | a^2, b^3, (a*b)^5 >", 5, &["(1,2)(3,4)", "(1,3,5)"]),
        entry(
            "Z4xZ2xZ2",
            "< a, b, c | a^4, b^2, c^2, [a, b], [a, c], [b, c] >",
            8,
            &["(1,2,3,4)", "(5,6)", "(7,8)"],
        ),
        entry(
            "Z8:(Z2xZ2)",
            "< t, u, v | t^8, u^2, v^2, [u, v], u*t*u^-1 = t^3, v*t*v^-1 = t^5 >",
            8,
            // x -> x+1, x -> 3x, x -> 5x on ℤ₈ (point i+1 is residue i)
            &["(1,2,3,4,5,6,7,8)", "(2,4)(3,7)(6,8)", "(2,6)(4,8)"],
        ),
    ];
    for n in [4, 5] {
        let p = symmetric_coxeter_presentation(n);
        let g = PermGroup::new(n, coxeter_images(n)).unwrap();
        out.push(regular_entry(&format!("S{n}"), p, g));
    }
    let q8 = PermGroup::new(8, vec![f3_matrix([[0, 1], [2, 0]]), f3_matrix([[1, 1], [1, 2]])]).unwrap();
    out.push(regular_entry(
        "Q8",
        parse_presentation("< x, y | x^4, x^2 = y^2, y*x*y^-1 = x^-1 >").unwrap(),
        q8,
    ));
    let sl23 = PermGroup::new(8, vec![f3_matrix([[2, 2], [0, 2]]), f3_matrix([[2, 0], [2, 2]])]).unwrap();
    out.push(regular_entry(
        "SL(2,3)",
        parse_presentation("< s, t | (s*t)^2 = s^3, s^3 = t^3 >").unwrap(),
        sl23,
    ));
    let gl32 = PermGroup::new(
        7,
        vec![
            f2_matrix([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
            f2_matrix([[0, 1, 0], [0, 0, 1], [1, 0, 0]]),
        ],
    )
    .unwrap();
    let p = parse_presentation("< a, b | a^2, b^3, (a*b)^7, [a, b]^4 >").unwrap();
    let images = first_surjection(&p, &gl32);
    out.push(regular_entry("GL(3,2)", p, PermGroup::new(7, images).unwrap()));
    out.push(regular_entry(
        "16Γ₂c₁ (realization)",
        presentation_16gamma2c1(),
        build_16gamma2c1().unwrap(),
    ));
    for (a, b, c) in [(1, 1, 1), (1, 3, 1), (1, 5, 1), (2, 3, 1), (1, 5, 3)] {
        out.push(regular_entry(
            &format!("Q({},{b},{c})", 8 * a),
            presentation_q8abc(a, b, c).unwrap(),
            build_q8abc(a, b, c).unwrap(),
        ));
    }
    out
}

/// The `S_n` obstruction: `H = reg(ℤ₄⊕ℤ₂⊕ℤ₂)` and `K = reg(16Γ₂c₁)` as
/// subgroups of `S_n` (fixing the points beyond 16), `π = S_n`, `φ = id`.
pub fn demo_s16(n: usize, limits: &Limits) -> Result<CsReport, ObstructionError> {
    if n < 16 {
        return Err(ObstructionError::InvalidParameters(format!("the pair needs n >= 16, got {n}")));
    }
    let g = symmetric_group(n)?;
    let h = regular_embedding(&abelian_group(&[4, 2, 2])?, 16)?.extend_degree(n);
    let k = regular_embedding(&build_16gamma2c1()?, 16)?.extend_degree(n);
    let pi = PiInput {
        name: format!("S{n}"),
        group: Pi::Perm(g.clone()),
    };
    csinv(
        &pi,
        &Phi::Identity,
        &NamedGroup::new(format!("S{n}"), g),
        &NamedGroup::new("reg(Z4+Z2+Z2)", h),
        &NamedGroup::new("reg(16Γ₂c₁ (realization))", k),
        ClassMode::CycleType,
        limits,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_orders() {
        assert_eq!(symmetric_group(3).unwrap().order_u64(), Some(6));
        assert_eq!(symmetric_group(16).unwrap().order().to_string(), "20922789888000");
        assert!(symmetric_group(25).is_err());
    }

    #[test]
    fn coxeter_certificate() {
        assert!(certify_symmetric_coxeter(6, 1000).unwrap());
        let t = todd_coxeter(&symmetric_coxeter_presentation(5), &[], 1000).unwrap();
        assert_eq!(t.num_cosets(), 120);
    }

    #[test]
    fn abelian_group_counts() {
        let counts: Vec<usize> = (1..=16).map(|n| abelian_groups_of_order(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]);
        assert_eq!(abelian_groups_of_order(64).len(), 11);
        assert_eq!(abelian_group(&[4, 2, 2]).unwrap().order_u64(), Some(16));
    }

    #[test]
    fn gamma_group_self_tests() {
        build_16gamma2c1().unwrap();
    }

    #[test]
    fn q8abc_orders() {
        for (a, b, c, n) in [(1, 1, 1, 8), (1, 3, 1, 24), (1, 5, 3, 120), (2, 3, 1, 48)] {
            assert_eq!(build_q8abc(a, b, c).unwrap().order_u64(), Some(n));
        }
        assert!(presentation_q8abc(1, 3, 3).is_err());
        assert!(presentation_q8abc(1, 2, 1).is_err());
    }

    #[test]
    fn catalog_is_consistent() {
        for e in catalog() {
            let spec = e.hom().unwrap_or_else(|err| panic!("{}: {err}", e.name));
            assert!(spec.is_surjective_onto(&e.group), "{}", e.name);
            let t = todd_coxeter(&e.presentation, &[], 100_000).unwrap();
            assert_eq!(Some(t.num_cosets() as u64), e.group.order_u64(), "{}", e.name);
        }
    }

    #[test]
    fn s16_demo() {
        let r = demo_s16(16, &Limits::default()).unwrap();
        assert_eq!((r.s_h, r.s_k, r.csinv), (1, 0, 1));
        let keys: Vec<(&str, u64, u64)> = r
            .certificate
            .classes
            .iter()
            .map(|c| (c.key.as_str(), c.in_h, c.in_k))
            .collect();
        assert_eq!(keys, vec![("1^16", 1, 1), ("2^8", 7, 7), ("4^4", 8, 8)]);
    }
}
