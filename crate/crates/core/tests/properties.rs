use cactus::conjugacy::{
    are_conjugate, cyclically_reduce_with_conjugator, find_conjugator, is_cyclically_irreducible, minimal_conjugate, mock_neighbors, order,
    ClosureMove, Order, WordClassClosure, DEFAULT_BUDGET,
};
use cactus::geodesic::{distance, is_irreducible, length, make_irreducible};
use cactus::racg::{omega, racg_equal, racg_reduce, GammaGraph};
use cactus::rewrite::{applicable_moves, chi, exposed_sites, normalize_with, rewrite_trace, MoveKind};
use cactus::{equal, label, normalize, reflect, GroupContext, Interval, Permutation, Word};
use proptest::prelude::*;

fn word_in(n: usize, max_len: usize) -> impl Strategy<Value = Word> {
    let ctx = GroupContext::new(n).unwrap();
    let gens = ctx.generators();
    prop::collection::vec(prop::sample::select(gens), 0..=max_len).prop_map(move |l| ctx.word(l).unwrap())
}

fn word(max_n: usize, max_len: usize) -> impl Strategy<Value = Word> {
    (2..=max_n).prop_flat_map(move |n| word_in(n, max_len))
}

fn word_pair(max_n: usize, max_len: usize) -> impl Strategy<Value = (Word, Word)> {
    (2..=max_n).prop_flat_map(move |n| (word_in(n, max_len), word_in(n, max_len)))
}

fn word_triple(max_n: usize, max_len: usize) -> impl Strategy<Value = (Word, Word, Word)> {
    (2..=max_n).prop_flat_map(move |n| (word_in(n, max_len), word_in(n, max_len), word_in(n, max_len)))
}

/// Image of each strand, following it through the letters from the last
/// one to the first.
fn strand_images(w: &Word) -> Vec<usize> {
    (1..=w.ctx().n())
        .map(|i| {
            w.letters().iter().rev().fold(i, |pos, l| if l.p() <= pos && pos <= l.q() { l.p() + l.q() - pos } else { pos })
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn sigma_is_a_homomorphism((u, v) in word_pair(7, 10)) {
        let uv = u.concat(&v).unwrap();
        prop_assert_eq!(uv.sigma(), u.sigma().compose(&v.sigma()));
    }

    #[test]
    fn sigma_matches_strand_tracking(w in word(7, 10)) {
        prop_assert_eq!(w.sigma().images(), strand_images(&w));
    }

    #[test]
    fn labels_have_interval_size(w in word(7, 10)) {
        for (i, l) in w.letters().iter().enumerate() {
            let prefix = w.ctx().word(w.letters()[..i].to_vec()).unwrap();
            prop_assert_eq!(label(&prefix, *l).len(), l.size());
            prop_assert_eq!(label(&prefix, *l), w.node_labels()[i]);
        }
    }

    #[test]
    fn reflection_is_an_involution(n in 2usize..=9, a in 0usize..100, b in 0usize..100) {
        let gens = GroupContext::new(n).unwrap().generators();
        let outer = gens[a % gens.len()];
        let inner = gens[b % gens.len()];
        match reflect(outer, inner) {
            Ok(r) => {
                prop_assert!(inner.is_within(outer));
                prop_assert_eq!(r.size(), inner.size());
                prop_assert_eq!(reflect(outer, r).unwrap(), inner);
            }
            Err(_) => prop_assert!(!inner.is_within(outer)),
        }
    }

    #[test]
    fn generators_square_to_identity(n in 2usize..=9) {
        for g in GroupContext::new(n).unwrap().generators() {
            let p = Permutation::inversion(n, g);
            prop_assert!(p.compose(&p).is_identity());
        }
    }

    #[test]
    fn rewriting_terminates_and_is_confluent(w in word(6, 12), seed_a in any::<u64>(), seed_b in any::<u64>()) {
        let mut a = seed_a;
        let mut b = seed_b;
        let step = |s: &mut u64, len: usize| {
            *s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (*s >> 33) as usize % len
        };
        let first = normalize_with(&w, |sites| step(&mut a, sites.len()));
        let second = normalize_with(&w, |sites| sites.len() - 1 - step(&mut b, sites.len()));
        prop_assert_eq!(&first, &second);
        prop_assert_eq!(&first, &normalize(&w));
        let trace = rewrite_trace(&w, |_| 0);
        for pair in trace.windows(2) {
            prop_assert!(chi(&pair[1]) < chi(&pair[0]));
            prop_assert_eq!(pair[1].sigma(), pair[0].sigma());
        }
        prop_assert!(exposed_sites(trace.last().unwrap()).is_empty());
    }

    #[test]
    fn literal_moves_preserve_the_element(w in word(6, 10)) {
        for m in applicable_moves(&w) {
            let next = m.apply(&w).unwrap();
            prop_assert!(equal(&w, &next).unwrap());
            match m.kind {
                MoveKind::DisjointSwap => prop_assert_eq!(chi(&next), chi(&w)),
                _ => prop_assert!(chi(&next) < chi(&w)),
            }
        }
    }

    #[test]
    fn normal_form_is_sound_and_idempotent(w in word(6, 12)) {
        let nf = normalize(&w);
        prop_assert_eq!(nf.word().sigma(), w.sigma());
        prop_assert_eq!(&normalize(nf.word()), &nf);
        prop_assert!(normalize(&w.concat(&w.inverse()).unwrap()).is_empty());
        prop_assert!(nf.len() <= w.len());
    }

    #[test]
    fn normal_form_is_invariant_under_relations(w in word(6, 8)) {
        let nf = normalize(&w);
        for n in mock_neighbors(&w) {
            prop_assert_eq!(&normalize(&n), &nf);
        }
        let mut doubled = w.letters().to_vec();
        if let Some(&l) = doubled.first() {
            doubled.insert(0, l);
            doubled.insert(0, l);
            prop_assert_eq!(&normalize(&w.ctx().word(doubled).unwrap()), &nf);
        }
    }

    #[test]
    fn irreducible_words_are_sound(w in word(6, 12)) {
        let g = make_irreducible(&w);
        prop_assert!(equal(&g, &w).unwrap());
        prop_assert!(is_irreducible(&g));
        prop_assert!(g.len() <= normalize(&w).len());
        prop_assert_eq!(length(&normalize(&w).into_word()), g.len());
    }

    #[test]
    fn distance_is_a_metric((x, y, z) in word_triple(5, 8)) {
        let dxy = distance(&x, &y).unwrap();
        prop_assert_eq!(dxy, distance(&y, &x).unwrap());
        prop_assert!(dxy <= distance(&x, &z).unwrap() + distance(&z, &y).unwrap());
        prop_assert_eq!(dxy == 0, equal(&x, &y).unwrap());
        prop_assert_eq!(dxy % 2, (x.len() + y.len()) % 2);
    }

    #[test]
    fn omega_is_well_defined(w in word(6, 8)) {
        let gamma = GammaGraph::new(w.ctx());
        let image = omega(&w);
        prop_assert_eq!(image.len(), w.len());
        prop_assert!(racg_reduce(&image, &gamma).len() <= image.len());
        prop_assert!(racg_equal(&image, &omega(&normalize(&w).into_word()), &gamma));
        for n in mock_neighbors(&w) {
            prop_assert!(racg_equal(&image, &omega(&n), &gamma));
        }
    }

    #[test]
    fn omega_is_multiplicative_on_pure_elements(n in 3usize..=6, len in 0usize..6, seed in any::<u64>()) {
        use rand::SeedableRng;
        let ctx = GroupContext::new(n).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let g = ctx.random_pure_word(len, &mut rng);
        let h = ctx.random_pure_word(len, &mut rng);
        prop_assert!(g.is_pure() && h.is_pure());
        let gamma = GammaGraph::new(ctx);
        prop_assert!(racg_equal(&omega(&g).concat(&omega(&h)), &omega(&g.concat(&h).unwrap()), &gamma));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn conjugation_is_detected_with_a_witness((u, g) in word_pair(5, 5)) {
        let v = u.conjugate_by(&g).unwrap();
        let c = find_conjugator(&u, &v, DEFAULT_BUDGET).unwrap();
        prop_assert!(c.is_some());
        prop_assert!(equal(&u.conjugate_by(&c.unwrap()).unwrap(), &v).unwrap());
        prop_assert!(are_conjugate(&v, &u, DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn conjugates_reduce_to_equal_length((u, g) in word_pair(6, 8)) {
        let v = u.conjugate_by(&g).unwrap();
        let (ru, cu, _) = minimal_conjugate(&u, DEFAULT_BUDGET).unwrap();
        let (rv, _, _) = minimal_conjugate(&v, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(ru.len(), rv.len());
        prop_assert!(ru.len() <= cyclically_reduce_with_conjugator(&u).0.len());
        prop_assert!(equal(&u.conjugate_by(&cu).unwrap(), &ru).unwrap());
    }

    #[test]
    fn cyclic_reduction_gives_a_conjugate(w in word(5, 8)) {
        let (r, c) = cyclically_reduce_with_conjugator(&w);
        prop_assert!(is_cyclically_irreducible(&r));
        prop_assert!(r.len() <= w.len());
        prop_assert!(equal(&w.conjugate_by(&c).unwrap(), &r).unwrap());
    }

    #[test]
    fn closures_stay_in_the_class(w in word(5, 5)) {
        let w = make_irreducible(&w);
        let mock = WordClassClosure::build(&w, &[ClosureMove::Mock], DEFAULT_BUDGET).unwrap();
        let nf = normalize(&w);
        for m in mock.members() {
            prop_assert_eq!(&normalize(&m), &nf);
        }
        let both = WordClassClosure::build(&w, &[ClosureMove::Mock, ClosureMove::SimpleConj], DEFAULT_BUDGET).unwrap();
        for (m, c) in both.iter() {
            prop_assert_eq!(m.len(), w.len());
            prop_assert!(equal(&w.conjugate_by(c).unwrap(), &m).unwrap());
        }
    }

    #[test]
    fn finite_orders_are_powers_of_two(w in word(6, 8)) {
        let n = w.ctx().n();
        match order(&w) {
            Order::Finite(k) => {
                prop_assert!(k.is_power_of_two());
                prop_assert_eq!((1u64 << (n - 1)) % k, 0);
                prop_assert!(normalize(&w.pow(k as usize)).is_empty());
                if k > 1 {
                    prop_assert!(!normalize(&w.pow(k as usize / 2)).is_empty());
                }
            }
            Order::Infinite => {
                prop_assert!(!normalize(&w.pow(1 << (n - 1))).is_empty());
            }
        }
    }
}

#[test]
fn permutation_words_realise_permutations() {
    let ctx = GroupContext::new(5).unwrap();
    let p = Permutation::from_images(vec![3, 5, 1, 4, 2]).unwrap();
    let w = ctx.permutation_word(&p).unwrap();
    assert_eq!(w.sigma(), p);
    assert!(w.letters().iter().all(|l: &Interval| l.size() == 2));
}
