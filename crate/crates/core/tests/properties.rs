//! Property tests for the algebraic invariants of each module.

mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use relift::covers::{build_cover_complex, homology, lift_cycle, FiniteQuotient, Graph, LiftOutcome};
use relift::foxcalc::{fox_derivative, fox_derivative_word, FreeRingElement};
use relift::groupring::{CoefficientDomain, FreeAbelian, FreeGroup, GroupRing, Scalar};
use relift::hierarchy::{find_epimorphism, prefix_sequence};
use relift::par::Exec;
use relift::presentation::{free_reduce, syllable_decompose, Letter, Partition, Presentation, Word};
use relift::trapezoid::{find_staircase, is_lower_trapezoidal, SearchOptions, StaircaseSearch};
use relift::verify::{bs_representation, ExactMatrix2};

use common::names;

fn letters(rank: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0..rank, any::<bool>()).prop_map(|(g, i)| Letter::new(g, i)), 0..=max_len)
}

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    letters(rank, max_len).prop_map(Word::from_letters)
}

fn nonempty_word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    word(rank, max_len).prop_filter("nonempty", |w| !w.is_empty())
}

fn ring_element(max_terms: usize) -> impl Strategy<Value = FreeRingElement> {
    prop::collection::vec((word(2, 4), -3i64..=3), 0..=max_terms).prop_map(|terms| {
        terms.into_iter().fold(FreeRingElement::zero(), |acc, (w, c)| acc.add(&FreeRingElement::term(w, c.into())))
    })
}

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from_integer(x.into())).collect()
}

fn is_freely_reduced(w: &Word) -> bool {
    w.letters().windows(2).all(|p| p[0] != p[1].inv())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn free_reduction_is_idempotent(raw in letters(3, 24)) {
        let w = free_reduce(&raw, 3).unwrap();
        prop_assert!(is_freely_reduced(&w));
        prop_assert_eq!(free_reduce(w.letters(), 3).unwrap(), w.clone());
        // Reduction respects the group law: w * w^-1 is trivial.
        prop_assert!(w.mul(&w.inverse()).is_empty());
    }

    #[test]
    fn cyclic_reduction_conjugates_back(w in word(3, 20)) {
        let (core, conj) = w.cyclic_reduce();
        prop_assert!(core.is_cyclically_reduced());
        prop_assert_eq!(conj.mul(&core).mul(&conj.inverse()), w);
    }

    #[test]
    fn proper_power_recovers_root(u in nonempty_word(2, 6), k in 1usize..5) {
        let (core, _) = u.cyclic_reduce();
        prop_assume!(!core.is_empty());
        let (root, m) = core.proper_power().unwrap();
        let w = core.pow(k as i64);
        let (root_k, mk) = w.proper_power().unwrap();
        prop_assert_eq!(root_k, root);
        prop_assert_eq!(mk, m * k);
    }

    #[test]
    fn syllables_concatenate_to_the_word(w in word(4, 20), split in prop::collection::vec(0usize..2, 4)) {
        let part = Partition::new(vec!["A".into(), "B".into()], split.clone()).unwrap();
        let d = syllable_decompose(&w, &part).unwrap();
        prop_assert_eq!(d.concat(), w);
        for pair in d.syllables.windows(2) {
            prop_assert_ne!(pair[0].factor, pair[1].factor);
        }
        for s in &d.syllables {
            prop_assert!(s.word.letters().iter().all(|l| split[l.gen] == s.factor));
        }
    }

    #[test]
    fn cyclic_subword_count(w in nonempty_word(2, 12)) {
        let core = w.cyclic_reduce().0;
        prop_assume!(!core.is_empty());
        let len = core.len();
        prop_assert_eq!(core.proper_subword_occurrences(false).len(), len * (len + 1) / 2 - 1);
        // Cyclically, every start position carries a subword of each length below L.
        prop_assert_eq!(core.proper_subword_occurrences(true).len(), len * (len - 1));
    }

    #[test]
    fn free_ring_axioms(x in ring_element(4), y in ring_element(4), z in ring_element(4)) {
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.add(&y).mul(&z), x.mul(&z).add(&y.mul(&z)));
        prop_assert_eq!(x.mul(&FreeRingElement::one()), x.clone());
        prop_assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn support_of_product(x in ring_element(4), y in ring_element(4)) {
        let products: BTreeSet<Word> =
            x.terms().keys().flat_map(|a| y.terms().keys().map(move |b| a.mul(b))).collect();
        prop_assert!(x.mul(&y).terms().keys().all(|w| products.contains(w)));
    }

    #[test]
    fn group_ring_axioms_over_z2(
        a in prop::collection::vec((-2i64..=2, -2i64..=2, -3i64..=3), 0..4),
        b in prop::collection::vec((-2i64..=2, -2i64..=2, -3i64..=3), 0..4),
        c in prop::collection::vec((-2i64..=2, -2i64..=2, -3i64..=3), 0..4),
    ) {
        let ring = GroupRing::new(FreeAbelian::new(2), CoefficientDomain::Integers);
        let mk = |t: &[(i64, i64, i64)]| {
            let terms: Vec<_> = t.iter().map(|&(p, q, k)| ring.monomial(vec![p, q], Scalar::from_integer(k.into()))).collect();
            ring.sum(&terms).unwrap()
        };
        let (x, y, z) = (mk(&a), mk(&b), mk(&c));
        prop_assert_eq!(ring.mul(&x, &y).unwrap(), ring.mul(&y, &x).unwrap());
        prop_assert_eq!(ring.mul(&ring.mul(&x, &y).unwrap(), &z).unwrap(), ring.mul(&x, &ring.mul(&y, &z).unwrap()).unwrap());
        prop_assert_eq!(
            ring.mul(&x, &ring.add(&y, &z).unwrap()).unwrap(),
            ring.add(&ring.mul(&x, &y).unwrap(), &ring.mul(&x, &z).unwrap()).unwrap()
        );
        let xy = ring.mul(&x, &y).unwrap();
        prop_assert_eq!(ring.augmentation(&xy), ring.augmentation(&x) * ring.augmentation(&y));
        let supp: BTreeSet<Vec<i64>> =
            x.support().iter().flat_map(|g| y.support().into_iter().map(move |h| vec![g[0] + h[0], g[1] + h[1]])).collect();
        prop_assert!(ring.mul(&x, &y).unwrap().support().iter().all(|g| supp.contains(g)));
    }

    #[test]
    fn free_group_ring_support(u in prop::collection::vec(word(2, 3), 1..4), v in prop::collection::vec(word(2, 3), 1..4)) {
        let ring = GroupRing::new(FreeGroup::new(names(2)), CoefficientDomain::Integers);
        let mk = |ws: &[Word]| ring.sum(&ws.iter().map(|w| ring.basis(w.clone())).collect::<Vec<_>>()).unwrap();
        let (x, y) = (mk(&u), mk(&v));
        let supp: BTreeSet<Word> = x.support().iter().flat_map(|g| y.support().into_iter().map(move |h| g.mul(&h))).collect();
        prop_assert!(ring.mul(&x, &y).unwrap().support().iter().all(|g| supp.contains(g)));
    }

    #[test]
    fn fox_product_and_inverse_rules(u in word(3, 10), v in word(3, 10), s in 0usize..3) {
        let du = fox_derivative_word(&u, s);
        let dv = fox_derivative_word(&v, s);
        prop_assert_eq!(fox_derivative_word(&u.mul(&v), s), du.add(&dv.left_mul(&u)));
        prop_assert_eq!(fox_derivative_word(&u.inverse(), s), du.left_mul(&u.inverse()).neg());
        // Linear extension agrees with the word derivative.
        let x = FreeRingElement::word(u.clone()).add(&FreeRingElement::term(v.clone(), BigInt::from(2)));
        prop_assert_eq!(fox_derivative(&x, s), du.add(&dv.add(&dv)));
    }

    #[test]
    fn staircase_certificates_revalidate(pattern in (1usize..=5).prop_flat_map(|cols| {
        prop::collection::vec(prop::collection::vec(any::<bool>(), cols), 1..=5)
    })) {
        let cols = pattern[0].len();
        if let StaircaseSearch::Found { certificate } = find_staircase(&pattern, cols, SearchOptions::default()).unwrap() {
            let again = is_lower_trapezoidal(&pattern, cols, &certificate.rows, &certificate.cols).unwrap();
            prop_assert_eq!(again, Ok(certificate));
        }
    }

    #[test]
    fn staircase_ignores_unit_row_scaling(
        entries in prop::collection::vec(prop::collection::vec((any::<bool>(), -2i64..=2), 3), 1..4),
        shifts in prop::collection::vec((-2i64..=2, prop_oneof![Just(1i64), Just(-1i64)]), 4),
    ) {
        use relift::groupring::GroupRingMatrix;
        let ring = GroupRing::new(FreeAbelian::new(1), CoefficientDomain::Integers);
        let cell = |(nz, g): (bool, i64)| if nz { ring.monomial(vec![g], Scalar::from_integer(1.into())) } else { ring.zero() };
        let rows: Vec<Vec<_>> = entries.iter().map(|r| r.iter().map(|&e| cell(e)).collect()).collect();
        let m = GroupRingMatrix::new(ring.clone(), rows.len(), 3, rows).unwrap();
        let scaled = m.map_rows(|i, e| {
            let (g, c) = shifts[i];
            ring.mul(&ring.monomial(vec![g], Scalar::from_integer(c.into())), e)
        }).unwrap();
        prop_assert_eq!(scaled.pattern(), m.pattern());
        let found = |p: &[Vec<bool>]| matches!(find_staircase(p, 3, SearchOptions::default()).unwrap(), StaircaseSearch::Found { .. });
        prop_assert_eq!(found(&scaled.pattern()), found(&m.pattern()));
    }

    #[test]
    fn prefix_sequences_are_admissible(w in nonempty_word(2, 16)) {
        let p = Presentation::new(&names(2), vec![w]).unwrap();
        prop_assume!(!p.relators()[0].is_empty());
        let phi = find_epimorphism(&p).unwrap();
        let part = Partition::new(vec!["A".into(), "B".into()], vec![0, 1]).unwrap();
        let s = prefix_sequence(&p.relators()[0], &phi, &part).unwrap();
        prop_assert!(s.values.len() % 2 == 1);
        prop_assert_eq!(s.values[0], 0);
        prop_assert_eq!(*s.values.last().unwrap(), 0);
        prop_assert_eq!(s.normalized[0], 0);
        prop_assert_eq!(*s.normalized.last().unwrap(), 0);
        prop_assert!(s.normalized.iter().all(|&v| v >= 0));
        prop_assert_eq!(s.span(), *s.normalized.iter().max().unwrap());
        let (a, b) = s.lemma_parameters();
        for (k, pair) in s.normalized.windows(2).enumerate() {
            let m = if k % 2 == 0 { b } else { a };
            let diff = pair[0] - pair[1];
            prop_assert!(if m == 0 { diff == 0 } else { diff % m == 0 }, "step {} of {:?} not divisible by {}", k, s.normalized, m);
        }
        if let Some(holds) = s.span_bound_holds() {
            prop_assert!(holds, "{:?}", s);
        }
    }

    #[test]
    fn homology_is_invariant_under_relabelling(
        rels in prop::collection::vec(word(3, 8), 1..3),
        perm in Just(vec![0usize, 1, 2]).prop_shuffle(),
    ) {
        let z = CoefficientDomain::Integers;
        let p = Presentation::new(&names(3), rels.clone()).unwrap();
        let mut relabelled: Vec<Word> = rels.iter().map(|w| w.relabel(&perm)).collect();
        relabelled.reverse();
        let q = Presentation::new(&names(3), relabelled).unwrap();
        let h = |p: &Presentation| homology(&build_cover_complex(p, &FiniteQuotient::trivial(p), Exec::Sequential).unwrap(), &z);
        let (hp, hq) = (h(&p), h(&q));
        prop_assert_eq!(hp.h1.rank, hq.h1.rank);
        prop_assert_eq!(hp.h1.torsion, hq.h1.torsion);
    }

    #[test]
    fn lifted_cycles_verify(extra in prop::collection::vec((0usize..6, 0usize..6), 1..5), coeffs in prop::collection::vec(-2i64..=2, 5)) {
        // A path 0-1-..-5 plus chords; the first chord is designated.
        let mut edges: Vec<(usize, usize)> = (0..5).map(|v| (v, v + 1)).collect();
        edges.extend(extra.iter().copied());
        let g = Graph::from_edges(6, &edges).unwrap();
        let chord_cycle = |e: usize| {
            let (s, t) = edges[e];
            let mut c = vec![0i64; edges.len()];
            c[e] = 1;
            let (lo, hi) = (s.min(t), s.max(t));
            let sign = if t > s { -1 } else { 1 };
            for x in &mut c[lo..hi] {
                *x += sign;
            }
            c
        };
        let h = 5;
        let mut r = chord_cycle(h);
        for (f, k) in (6..edges.len()).zip(&coeffs) {
            for (ri, ci) in r.iter_mut().zip(chord_cycle(f)) {
                *ri += k * ci;
            }
        }
        let z = CoefficientDomain::Integers;
        let r = ints(&r);
        prop_assert!(g.boundary(&r, &z).iter().all(Zero::is_zero));
        match lift_cycle(&g, &[h], &r, &z).unwrap() {
            LiftOutcome::Lifted(l) => {
                prop_assert!(l.verify(&g, &[h], &r, &z));
                prop_assert!(l.unit.abs().is_one());
            }
            LiftOutcome::NotApplicable { reason } => prop_assert!(false, "{}", reason),
        }
    }

    #[test]
    fn bs_matrix_conjugation_powers(n in 1i64..6, k in 0u32..5) {
        let (a, b) = bs_representation(n + 1).unwrap();
        let bk = b.pow(&BigInt::from(k)).unwrap();
        let lhs = &(&bk * &a) * &bk.inverse().unwrap();
        let rhs = a.pow(&BigInt::from(n + 1).pow(k)).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(ExactMatrix2::identity().det(), Scalar::one());
    }
}
