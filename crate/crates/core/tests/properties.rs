use gassmann_core::fp::{parse_presentation, parse_words, todd_coxeter, Letter, Presentation, Word};
use gassmann_core::perm::text::parse_cycles;
use gassmann_core::perm::{PermGroup, Permutation};
use gassmann_core::snf::{rank_f2, rank_rational, s_from_ranks, smith_normal_form, IntMatrix};
use proptest::prelude::*;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn perms3() -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1usize..12).prop_flat_map(|n| (perm(n), perm(n), perm(n)))
}

fn word(gens: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..gens, any::<bool>()), 0..12)
        .prop_map(|v| Word::new(v.into_iter().map(|(g, inv)| Letter::new(g, inv))))
}

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-9i64..=9, c), r)
            .prop_map(move |rows| IntMatrix::from_rows(c, &rows))
    })
}

proptest! {
    #[test]
    fn product_is_associative((p, q, r) in perms3()) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
    }

    #[test]
    fn inverse_and_order((p, q, _) in perms3()) {
        let id = Permutation::identity(p.degree());
        prop_assert_eq!(&p * &p.inverse(), id.clone());
        prop_assert_eq!(p.pow(p.order()), id);
        prop_assert_eq!((&p * &q).inverse(), &q.inverse() * &p.inverse());
    }

    #[test]
    fn product_applies_left_factor_first((p, q, _) in perms3()) {
        let pq = &p * &q;
        for x in 0..p.degree() {
            prop_assert_eq!(pq.apply(x), q.apply(p.apply(x)));
        }
    }

    #[test]
    fn conjugation_preserves_cycle_type((p, q, _) in perms3()) {
        prop_assert_eq!(p.conjugate_by(&q).cycle_type(), p.cycle_type());
        let sum: usize = p.cycle_type().parts.iter().sum();
        prop_assert_eq!(sum, p.degree());
    }

    #[test]
    fn cycle_text_round_trips((p, _, _) in perms3()) {
        prop_assert_eq!(parse_cycles(p.degree(), &p.to_cycle_string()).unwrap(), p);
    }

    #[test]
    fn group_order_divides_factorial((p, q, _) in perms3()) {
        let g = PermGroup::new(p.degree(), vec![p.clone(), q.clone()]).unwrap();
        let fact: u64 = (1..=p.degree() as u64).product();
        let order = g.order_u64().unwrap();
        prop_assert_eq!(fact % order, 0);
        prop_assert!(g.contains(&(&p * &q)));
    }

    #[test]
    fn words_reduce_freely(w in word(3), v in word(3)) {
        prop_assert!(w.concat(&w.inverse()).is_empty());
        prop_assert_eq!(w.inverse().inverse(), w.clone());
        prop_assert_eq!(w.concat(&v).inverse(), v.inverse().concat(&w.inverse()));
        for pair in w.letters().windows(2) {
            prop_assert_ne!(pair[0], pair[1].inv());
        }
    }

    #[test]
    fn word_text_round_trips(w in word(3)) {
        let p = Presentation::free(&["a", "b", "c"]);
        let text = p.format_word(&w);
        let parsed = parse_words(&p, &text).unwrap();
        let back = if w.is_empty() && parsed.is_empty() { Word::identity() } else { parsed[0].clone() };
        prop_assert_eq!(back, w);
    }

    #[test]
    fn snf_rank_and_s(m in matrix()) {
        let snf = smith_normal_form(&m, false);
        prop_assert_eq!(snf.rank, rank_rational(&m));
        prop_assert_eq!(snf.invariant_factors.len(), snf.rank);
        let even = snf.invariant_factors.iter().filter(|d| (*d % 2u32) == 0u32.into()).count();
        prop_assert_eq!(rank_rational(&m) - rank_f2(&m), even);
        prop_assert_eq!(s_from_ranks(&m) as usize, even % 2);
        prop_assert_eq!(smith_normal_form(&m.transpose(), false).invariant_factors, snf.invariant_factors);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dihedral_index_of_rotations(n in 2u32..40) {
        let p = parse_presentation(&format!("< r, s | r^{n}, s^2, (r*s)^2 >")).unwrap();
        let whole = todd_coxeter(&p, &[], 10_000).unwrap();
        prop_assert_eq!(whole.num_cosets(), 2 * n as usize);
        let rotations = todd_coxeter(&p, &[Word::generator(0)], 10_000).unwrap();
        prop_assert_eq!(rotations.num_cosets(), 2);
        prop_assert!(rotations.verify(&p));
    }
}
