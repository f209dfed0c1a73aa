use fixedbitset::FixedBitSet;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lcdk::checker::semantic_term_leq;
use lcdk::events::Gamma;
use lcdk::closure::{fl_closure, neg_fl_closure, pseudo_atoms, FormulaSet};
use lcdk::files::{model_from_json, model_to_json};
use lcdk::gen::{random_event_model, random_reading_map, FormulaGen};
use lcdk::kripke::{random_model, rtc};
use lcdk::syntax::{parse_formula, Definitions};
use lcdk::{eval, term_equiv, term_leq, update_model, AtomicTerm, Error, Formula, Mode, Model, ReadingMap, Signature, Term};

fn abc() -> Vec<AtomicTerm> {
    ["a", "b", "c"].into_iter().map(AtomicTerm::from).collect()
}

fn sig() -> Signature {
    abc().into_iter().collect()
}

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![Just("a"), Just("b"), Just("c")].prop_map(Term::atom);
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| l.meet(r)),
            (inner.clone(), inner).prop_map(|(l, r)| l.join(r)),
        ]
    })
}

fn mode() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::S5), Just(Mode::S4)]
}

fn model(seed: u64, n: usize, mode: Mode) -> Model {
    random_model(seed, n, &sig(), mode)
}

fn formula(seed: u64, depth: usize) -> Formula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    FormulaGen::new(&["p", "q"], &abc()).formula(&mut rng, depth)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn leq_is_a_preorder(s in term(), t in term(), u in term()) {
        prop_assert!(term_leq(&s, &s).unwrap());
        if term_leq(&s, &t).unwrap() && term_leq(&t, &u).unwrap() {
            prop_assert!(term_leq(&s, &u).unwrap());
        }
    }

    #[test]
    fn meet_is_greatest_and_join_least(s in term(), t in term(), u in term()) {
        let m = s.clone().meet(t.clone());
        let j = s.clone().join(t.clone());
        prop_assert!(term_leq(&m, &s).unwrap() && term_leq(&m, &t).unwrap());
        prop_assert!(term_leq(&s, &j).unwrap() && term_leq(&t, &j).unwrap());
        prop_assert_eq!(
            term_leq(&u, &m).unwrap(),
            term_leq(&u, &s).unwrap() && term_leq(&u, &t).unwrap()
        );
        prop_assert_eq!(
            term_leq(&j, &u).unwrap(),
            term_leq(&s, &u).unwrap() && term_leq(&t, &u).unwrap()
        );
    }

    #[test]
    fn flattening_preserves_equivalence(t in term()) {
        prop_assert!(term_equiv(&t, &t.flatten().to_term()).unwrap());
    }

    #[test]
    fn formula_round_trip(seed in any::<u64>(), depth in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = FormulaGen::new(&["p", "q", "r"], &abc()).with_sugar().formula(&mut rng, depth);
        let printed = f.to_string();
        let back: Formula = printed.parse().unwrap();
        prop_assert_eq!(&back, &f, "{}", printed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn derivable_order_is_sound_for_partitions(s in term(), t in term()) {
        if term_leq(&s, &t).unwrap() {
            prop_assert!(semantic_term_leq(&s, &t, 3).unwrap());
        }
    }

    #[test]
    fn order_is_monotone_on_relations(s in term(), t in term(), seed in any::<u64>(), n in 1usize..6, mode in mode()) {
        if term_leq(&s, &t).unwrap() {
            let m = model(seed, n, mode);
            prop_assert!(m.relation_of(&s).unwrap().is_subset(&m.relation_of(&t).unwrap()));
        }
    }

    #[test]
    fn diamond_and_box_are_dual(t in term(), seed in any::<u64>(), n in 1usize..6, mode in mode()) {
        let m = model(seed, n, mode);
        let phi = formula(seed, 2);
        let dia = eval(&m, &Formula::diamond(t.clone(), phi.clone())).unwrap();
        let bx = eval(&m, &Formula::boxed(t, phi.not()).not()).unwrap();
        prop_assert_eq!(dia, bx);
    }

    #[test]
    fn join_diamond_is_the_least_fixpoint(s in term(), t in term(), seed in any::<u64>(), n in 1usize..7, mode in mode()) {
        let m = model(seed, n, mode);
        let target = eval(&m, &Formula::prop("p")).unwrap();
        let (rs, rt) = (m.relation_of(&s).unwrap(), m.relation_of(&t).unwrap());
        let mut x = FixedBitSet::with_capacity(n);
        loop {
            let mut next = target.clone();
            next.union_with(&rs.preimage(&x));
            next.union_with(&rt.preimage(&x));
            if next == x {
                break;
            }
            x = next;
        }
        let f = Formula::diamond(s.join(t), Formula::prop("p"));
        prop_assert_eq!(eval(&m, &f).unwrap(), x);
    }

    #[test]
    fn join_relation_is_closure_of_union(s in term(), t in term(), seed in any::<u64>(), n in 1usize..7, mode in mode()) {
        let m = model(seed, n, mode);
        let (rs, rt) = (m.relation_of(&s).unwrap(), m.relation_of(&t).unwrap());
        prop_assert_eq!(m.relation_of(&s.clone().join(t.clone())).unwrap(), rtc(&rs.union(&rt)));
        prop_assert_eq!(m.relation_of(&s.meet(t)).unwrap(), rs.intersection(&rt));
    }

    #[test]
    fn gamma_is_stable_on_classes(t in term(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let em = random_event_model(&mut rng, "E", &abc(), 3, 2);
        let mut gamma = Gamma::new(&em);
        for e in 0..em.len() {
            let reads = gamma.term(e, &t).unwrap();
            for e2 in gamma.class(e, &t).unwrap().ones() {
                prop_assert!(term_equiv(&reads, &gamma.term(e2, &t).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn closure_is_monotone_and_idempotent(s1 in any::<u64>(), s2 in any::<u64>()) {
        let small: FormulaSet = [formula(s1, 3)].into_iter().collect();
        let mut large = small.clone();
        large.insert(formula(s2, 3));
        let cs = fl_closure(&small).unwrap();
        let cl = fl_closure(&large).unwrap();
        prop_assert!(cs.is_subset(&cl));
        prop_assert_eq!(fl_closure(&cs).unwrap(), cs.clone());
        let neg = neg_fl_closure(&small).unwrap();
        prop_assert!(cs.is_subset(&neg));
        prop_assert_eq!(neg_fl_closure(&neg).unwrap(), neg);
    }

    #[test]
    fn true_sets_are_pseudo_atoms(seed in any::<u64>(), n in 1usize..6, mode in mode()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = FormulaGen::new(&["p", "q"], &abc()).term_depth(1).formula(&mut rng, 2);
        let input: FormulaSet = [f].into_iter().collect();
        let atoms = match pseudo_atoms(&input) {
            Err(Error::ResourceLimit(_)) => return Ok(()),
            other => other.unwrap(),
        };
        let closure = neg_fl_closure(&input).unwrap();
        let m = model(seed, n, mode);
        let extensions: Vec<(Formula, FixedBitSet)> = closure
            .iter()
            .map(|g| (g.clone(), eval(&m, g).unwrap()))
            .collect();
        for w in 0..n {
            let truth: FormulaSet = extensions
                .iter()
                .filter(|(_, ext)| ext.contains(w))
                .map(|(g, _)| g.clone())
                .collect();
            prop_assert!(atoms.contains(&truth), "state {} of {:?}", w, m);
        }
    }

    #[test]
    fn update_output_round_trips(seed in any::<u64>(), n in 1usize..6, mode in mode()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = model(seed, n, mode);
        let beta = random_reading_map(&mut rng, "beta", &abc(), 2);
        let updated = update_model(&m, &beta).unwrap();
        let reloaded = model_from_json(&model_to_json(&updated)).unwrap();
        prop_assert_eq!(&reloaded, &updated);
        prop_assert_eq!(update_model(&reloaded, &ReadingMap::new("id")).unwrap(), updated);
    }

    #[test]
    fn dynamic_round_trip(seed in any::<u64>(), depth in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let beta = random_reading_map(&mut rng, "beta", &abc(), 2);
        let em = random_event_model(&mut rng, "E", &abc(), 3, 1);
        let gen = FormulaGen::new(&["p", "q"], &abc())
            .with_sugar()
            .with_reading_map("beta")
            .with_event_model(&em);
        let env = Definitions::new().with_reading_map(beta).with_event_model(em);
        let f = gen.formula(&mut rng, depth);
        prop_assert_eq!(parse_formula(&f.to_string(), &env).unwrap(), f);
    }
}
