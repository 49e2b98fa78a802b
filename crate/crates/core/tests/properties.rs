//! Randomised invariants over the whole library.

mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use presforge::constructions::{
    conjugacy_gadget, fibre_membership, gadget_conjugate, kill_finite_quotients, rips_wise,
    s_generators, super_perfectify, Attachment,
};
use presforge::freewords::{free_conjugator, parse_word, Alphabet, Letter, Word};
use presforge::homology::{h1, h2_aspherical, smith_normal_form, IntegerMatrix};
use presforge::oracle::AutoOracle;
use presforge::presentations::{
    direct_product_presentation, free_product, parse_presentation, tietze_eliminate_generator,
    FinitePresentation, PresentationMorphism,
};
use presforge::quotients::{
    finite_quotient_certificate, hom_search, todd_coxeter, SearchMode, SearchOptions,
};
use presforge::smallcancel::{metric_certificate, DehnSolver, Ratio, Verdict};
use presforge::uce::{find_commutator_witnesses, miller_uce, WitnessStrategy};

fn alphabet(n: usize) -> Alphabet {
    Alphabet::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap()
}

fn word(gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..gens, any::<bool>()), 0..=max_len)
        .prop_map(|ls| Word::from_letters(ls.into_iter().map(|(g, i)| Letter::new(g, i)).collect()))
}

fn nonempty_reduced(gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
    word(gens, max_len)
        .prop_map(|w| w.reduced())
        .prop_filter("nontrivial", |w| !w.is_empty())
}

/// Presentations on `gens` generators with up to `rels` relators.
fn presentation(gens: usize, rels: usize, len: usize) -> impl Strategy<Value = FinitePresentation> {
    prop::collection::vec(nonempty_reduced(gens, len), 0..=rels)
        .prop_map(move |rs| FinitePresentation::new(alphabet(gens), rs).unwrap())
}

/// Perfect by construction: relator `i` is `x_i` times a product of commutators.
fn perfect_presentation(gens: usize) -> impl Strategy<Value = FinitePresentation> {
    prop::collection::vec(
        prop::collection::vec((word(gens, 3), word(gens, 3)), 1..=2),
        gens,
    )
    .prop_map(move |tails| {
        let rels = tails
            .iter()
            .enumerate()
            .map(|(i, cs)| {
                let tail = cs.iter().fold(Word::empty(), |acc, (u, v)| {
                    acc.mul(&Word::commutator(u, v))
                });
                Word::generator(i).mul(&tail)
            })
            .collect();
        FinitePresentation::new_dropping_trivial(alphabet(gens), rels)
            .unwrap()
            .0
    })
}

fn matrix() -> impl Strategy<Value = IntegerMatrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-30i64..30, c), r)
            .prop_map(move |rows| IntegerMatrix::from_rows(c, &rows))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn free_reduction_is_idempotent(w in word(3, 40)) {
        let r = w.reduced();
        prop_assert_eq!(r.reduced(), r.clone());
        prop_assert!(r.letters().windows(2).all(|p| p[0] != p[1].inv()));
        prop_assert_eq!(r.exponent_vector(3), w.exponent_vector(3));
    }

    #[test]
    fn apply_map_respects_inverses(w in word(3, 20), imgs in prop::collection::vec(word(2, 6), 3)) {
        let a = w.inverse().apply_map(&imgs).unwrap();
        let b = w.apply_map(&imgs).unwrap().inverse();
        prop_assert_eq!(a.reduced(), b.reduced());
    }

    #[test]
    fn conjugator_witness_is_exact(v in word(3, 20), c in word(3, 10)) {
        let u = v.conjugate_by(&c).reduced();
        let g = free_conjugator(&u, &v);
        prop_assert!(g.is_some());
        let g = g.unwrap();
        prop_assert_eq!(Word::product([&g, &v, &g.inverse()]).reduced(), u);
    }

    #[test]
    fn word_render_parse_roundtrip(w in word(4, 30)) {
        let a = alphabet(4);
        let text = w.display(&a).to_string();
        prop_assert_eq!(parse_word(&text, &a).unwrap(), w);
    }

    #[test]
    fn presentation_render_parse_roundtrip(p in presentation(3, 4, 12)) {
        prop_assert_eq!(parse_presentation(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn builders_emit_reduced_nonempty_relators(
        p in presentation(2, 3, 8),
        q in presentation(2, 3, 8),
    ) {
        let fp = free_product(&p, &q, true).unwrap().presentation;
        let dp = direct_product_presentation(&p, &q).unwrap().presentation;
        prop_assert_eq!(fp.num_relators(), p.num_relators() + q.num_relators());
        prop_assert_eq!(dp.num_relators(), p.num_relators() + q.num_relators() + 4);
        for r in fp.relators().iter().chain(dp.relators()) {
            prop_assert!(!r.is_empty() && r.is_reduced());
        }
        prop_assert_eq!(h1(&fp).group, h1(&p).group.direct_sum(&h1(&q).group));
        prop_assert_eq!(h1(&dp).group, h1(&p).group.direct_sum(&h1(&q).group));
    }

    #[test]
    fn tietze_elimination_preserves_h1(
        tail in word(2, 10),
        rest in prop::collection::vec(nonempty_reduced(3, 10), 0..3),
        inverse in any::<bool>(),
    ) {
        // Generator c (index 2) occurs exactly once in the first relator.
        let first = Word::from_letters(vec![Letter::new(2, inverse)]).mul(&tail);
        let mut rels = vec![first];
        rels.extend(rest);
        let p = FinitePresentation::new_dropping_trivial(alphabet(3), rels).unwrap().0;
        let t = tietze_eliminate_generator(&p, 2, 0).unwrap();
        prop_assert_eq!(t.presentation.num_generators(), 2);
        prop_assert_eq!(h1(&t.presentation).group, h1(&p).group);
    }

    #[test]
    fn h1_ignores_relator_order_and_rotation(p in presentation(3, 4, 10), k in 0usize..10) {
        let mut rels: Vec<Word> = p.relators().iter().rev().cloned().collect();
        if let Some(r) = rels.first_mut() {
            *r = r.cyclic_normal_form().rotate(k % r.len().max(1)).inverse();
        }
        let q = FinitePresentation::new_dropping_trivial(alphabet(3), rels).unwrap().0;
        prop_assert_eq!(h1(&q).group, h1(&p).group);
    }

    #[test]
    fn smith_form_verifies(m in matrix()) {
        let s = smith_normal_form(&m);
        prop_assert!(s.verify(&m));
        prop_assert!(s.diagonal.windows(2).all(|w| (&w[1] % &w[0]) == BigInt::from(0)));
    }

    #[test]
    fn aspherical_h2_is_free(p in presentation(3, 4, 10)) {
        let h = h2_aspherical(&p.with_asphericity("test")).unwrap();
        prop_assert!(h.group.torsion.is_empty());
    }

    #[test]
    fn metric_certificate_is_monotone(p in presentation(2, 3, 14), a in 1u64..12, b in 1u64..12) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let small = Ratio::new(lo, 12).unwrap();
        let large = Ratio::new(hi, 12).unwrap();
        if metric_certificate(&p, small).passed {
            prop_assert!(metric_certificate(&p, large).passed);
        }
    }

    #[test]
    fn gadget_identity(w in word(3, 15), a in 0usize..3) {
        let (conj, _) = conjugacy_gadget(&w, a);
        let g = gadget_conjugate(&w, a);
        prop_assert_eq!(conj.left.reduced(), g.left.clone());
        prop_assert_eq!(conj.right.reduced(), g.right.clone());
    }

    #[test]
    fn s_elements_lie_in_fibre(p in presentation(3, 3, 10)) {
        let s = s_generators(&p).unwrap();
        let f = FinitePresentation::free(p.alphabet().clone());
        let id = PresentationMorphism::new(f, p.clone(), (0..3).map(Word::generator).collect(), "identity").unwrap();
        let oracle = AutoOracle::select(&p, 1000);
        for pw in &s.pairs {
            prop_assert_eq!(fibre_membership(pw, &id, &oracle), Ok(true));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dehn_reduction_is_certified(seed in any::<u64>(), trivial in any::<bool>()) {
        let q = common::standard_q();
        let solver = DehnSolver::new(&q).unwrap();
        let mut rng = common::rng(seed);
        let w = if trivial {
            // Product of random conjugates of relators.
            let mut acc = Word::empty();
            for i in 0..3 {
                let c = common::random_word(&mut rng, 2, 6);
                let r = &q.relators()[(seed as usize + i) % 2];
                acc = acc.mul(&r.conjugate_by(&c));
            }
            acc.reduced()
        } else {
            common::random_word(&mut rng, 2, 30).reduced()
        };
        let out = solver.reduce(&w);
        prop_assert!(out.certificate.verify(&q));
        prop_assert_eq!(out.certificate.expanded.mul(&out.residue), w.clone());
        prop_assert!(out.steps.len() <= w.len());
        prop_assert!(out.steps.iter().all(|s| s.inserted < s.removed));
        prop_assert_eq!(out.verdict == Verdict::Trivial, out.residue.is_empty());
        if trivial {
            prop_assert_eq!(out.verdict, Verdict::Trivial);
        }
    }

    #[test]
    fn uce_witnesses_verify_and_kill_h1(p in perfect_presentation(2)) {
        prop_assume!(h1(&p).group.is_trivial());
        for w in find_commutator_witnesses(&p, WitnessStrategy::Constructive).unwrap() {
            prop_assert!(w.verify(&p));
        }
        let u = miller_uce(&p, WitnessStrategy::Constructive).unwrap();
        prop_assert!(h1(&u.result).group.is_trivial());
    }

    #[test]
    fn homomorphisms_verify_and_pruning_agrees(p in presentation(2, 3, 8), k in 2usize..=3) {
        let pruned = hom_search(&p, k, SearchMode::All, SearchOptions::default());
        let full = hom_search(&p, k, SearchMode::All, SearchOptions { prune: false, shard: None });
        for h in pruned.homs.iter().chain(&full.homs) {
            prop_assert!(h.verify(&p));
        }
        prop_assert_eq!(pruned.total, full.total);
        prop_assert_eq!(full.total, full.homs.len() as u128);
    }

    #[test]
    fn certificate_implies_trivial_searches(p in presentation(2, 3, 10)) {
        let report = finite_quotient_certificate(&p, 4, true, 1);
        if report.is_certified() {
            for k in 2..=4 {
                prop_assert!(hom_search(&p, k, SearchMode::All, SearchOptions::default()).only_trivial());
            }
        }
    }

    #[test]
    fn complete_coset_tables_are_transitive_actions(extra in nonempty_reduced(2, 10), sub in word(2, 4)) {
        let a = Word::generator(0);
        let b = Word::generator(1);
        let rels = vec![a.pow(2), b.pow(3), extra];
        let p = FinitePresentation::new(alphabet(2), rels).unwrap();
        let t = todd_coxeter(&p, std::slice::from_ref(&sub), 5000);
        if let Some(n) = t.index() {
            let perms = t.permutations().unwrap();
            prop_assert!(perms.iter().all(|q| q.degree() == n));
            for r in p.relators() {
                prop_assert!((0..n).all(|c| t.trace(c, r) == c));
            }
            prop_assert_eq!(t.trace(0, &sub), 0);
            let mut seen = vec![false; n];
            let mut stack = vec![0usize];
            seen[0] = true;
            while let Some(c) = stack.pop() {
                for q in &perms {
                    let d = q.apply(c);
                    if !seen[d] {
                        seen[d] = true;
                        stack.push(d);
                    }
                }
            }
            prop_assert!(seen.into_iter().all(|s| s));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn rips_transform_invariants(p in presentation(2, 2, 6)) {
        let out = rips_wise(&p);
        let n = p.num_generators();
        prop_assert!(out.certificate.passed);
        prop_assert!(metric_certificate(&out.gamma, Ratio::SIXTH).passed);
        prop_assert_eq!(out.gamma.num_generators(), n + 3);
        prop_assert_eq!(out.gamma.num_relators(), p.num_relators() + 6 * n);
        let kernel = out.kernel_generators;
        let killed: Vec<Word> = out
            .gamma
            .relators()
            .iter()
            .map(|r| r.delete_gens(|g| kernel.contains(&g)).reduced())
            .filter(|r| !r.is_empty())
            .collect();
        for r in p.relators() {
            prop_assert!(killed.contains(r));
        }
    }

    #[test]
    fn killing_finite_quotients_keeps_h1(p in presentation(2, 2, 6)) {
        let out = kill_finite_quotients(&p, &Attachment::default()).unwrap();
        prop_assert_eq!(h1(&out.full).group, h1(&out.simplified).group);
        prop_assert_eq!(out.simplified.num_generators(), 4 * p.num_generators());
        prop_assert!(h1(&out.full).group.is_trivial());
    }

    #[test]
    fn super_perfect_output_is_perfect(p in presentation(2, 2, 5)) {
        let sp = super_perfectify(&p, &Attachment::default(), WitnessStrategy::Constructive).unwrap();
        prop_assert!(h1(sp.presentation()).group.is_trivial());
    }
}
