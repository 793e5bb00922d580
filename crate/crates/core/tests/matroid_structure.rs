//! Structural matroid facts checked exhaustively on small random instances.

use proptest::prelude::*;
use tropmat::instances::{graphic, uniform, GraphDescription, UniformParams};
use tropmat::oracle::{reference, BruteForce, EnumerationCap};
use tropmat::{ElementSet, MinorSpec};
use tropmat_testkit::{corpus_instance, Source};

fn cap() -> EnumerationCap {
    EnumerationCap::default()
}

fn subsets(ground: &ElementSet) -> Vec<ElementSet> {
    let elems: Vec<_> = ground.iter().collect();
    (0u32..1 << elems.len())
        .map(|mask| {
            elems
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn axioms_hold(seed: u64, index in 0usize..3000) {
        let inst = corpus_instance(seed, index);
        let brute = BruteForce::new(&inst.matroid, cap()).unwrap();
        prop_assert!(brute.check_axioms().is_ok(), "{}", inst.name);
        prop_assert_eq!(brute.rank(), inst.matroid.rank());
    }

    #[test]
    fn instance_predicates_match_reference(seed: u64, index in 0usize..3000) {
        let inst = corpus_instance(seed, index);
        let m = &inst.matroid;
        for s in subsets(m.ground()) {
            let fast = m.is_independent(&s).unwrap();
            let slow = match &inst.source {
                Source::Graphic(g) => {
                    let edges: Vec<_> = s.iter().map(|e| (g.edges[e.index()].u, g.edges[e.index()].v)).collect();
                    reference::is_forest(g.vertices, &edges)
                }
                Source::Uniform(p) => s.len() <= p.k,
                Source::Linear(a) => {
                    let cols: Vec<_> = s.iter().map(|e| e.index()).collect();
                    reference::columns_independent(&a.rows, &cols)
                }
            };
            prop_assert_eq!(fast, slow, "{} on {:?}", inst.name, s);
        }
    }

    #[test]
    fn fundamental_structures(seed: u64, index in 0usize..3000) {
        let inst = corpus_instance(seed, index);
        let m = &inst.matroid;
        let brute = BruteForce::new(m, cap()).unwrap();
        let circuits = brute.circuits().unwrap();
        for b in brute.bases() {
            for e in m.ground().difference(b.elements()).iter() {
                let fc = m.fundamental_circuit(&b, e).unwrap();
                // unique circuit inside B + e
                let inside: Vec<_> = circuits.iter()
                    .filter(|c| c.elements().is_subset(&b.elements().with(e)))
                    .collect();
                prop_assert_eq!(inside.len(), 1);
                prop_assert_eq!(inside[0], &fc);
                let path = m.fundamental_path(&b, e).unwrap();
                prop_assert!(!path.is_empty());
                prop_assert_eq!(path, fc.elements().without(e));
            }
            for f in b.iter() {
                let cut = m.fundamental_cut(&b, f).unwrap();
                prop_assert!(!cut.is_empty());
                // duality between cuts and paths
                for e in m.ground().difference(b.elements()).iter() {
                    let path = m.fundamental_path(&b, e).unwrap();
                    prop_assert_eq!(cut.contains(e), path.contains(f));
                }
                // every f-circuit meets the cut outside f
                for c in circuits.iter().filter(|c| c.elements().contains(f)) {
                    prop_assert!(!c.elements().without(f).is_disjoint(&cut));
                }
            }
        }
    }

    #[test]
    fn bijective_exchange_exists(seed: u64, index in 0usize..3000) {
        let inst = corpus_instance(seed, index);
        let m = &inst.matroid;
        let brute = BruteForce::new(m, cap()).unwrap();
        let bases = brute.bases();
        for a in bases.iter().take(12) {
            for b in bases.iter().rev().take(12) {
                let phi = brute.exchange_bijection(a, b).unwrap();
                prop_assert_eq!(phi.len(), a.len());
                let image: ElementSet = phi.values().copied().collect();
                prop_assert_eq!(&image, b.elements());
                for (&from, &to) in &phi {
                    prop_assert!(m.check_basis(&a.elements().exchange(from, to)).is_ok());
                }
            }
        }
    }

    #[test]
    fn minors_compose(seed: u64, index in 0usize..3000, picks in proptest::collection::vec(0u8..3, 10)) {
        let inst = corpus_instance(seed, index);
        let m = &inst.matroid;
        // split elements into contract/delete/keep for two stages; contract
        // only what stays independent so every step is legal
        let mut first = MinorSpec::default();
        let mut second = MinorSpec::default();
        let mut contracted = ElementSet::new();
        for (i, e) in m.ground().iter().enumerate() {
            let stage = if i % 2 == 0 { &mut first } else { &mut second };
            match picks[i % picks.len()] {
                0 if m.is_independent(&contracted.with(e)).unwrap() => {
                    contracted.insert(e);
                    stage.contracted.insert(e);
                }
                1 => { stage.deleted.insert(e); }
                _ => {}
            }
        }
        let stepwise = m.minor(&first).unwrap().minor(&second).unwrap();
        let direct = m.minor(&first.then(&second)).unwrap();
        prop_assert_eq!(stepwise.ground(), direct.ground());
        prop_assert_eq!(stepwise.rank(), direct.rank());
        for s in subsets(direct.ground()) {
            prop_assert_eq!(stepwise.is_independent(&s).unwrap(), direct.is_independent(&s).unwrap());
        }
        // contraction semantics: I independent in M/C iff I + C independent in M
        for s in subsets(direct.ground()) {
            prop_assert_eq!(
                direct.is_independent(&s).unwrap(),
                m.is_independent(&s.union(&contracted)).unwrap()
            );
        }
    }

    #[test]
    fn circuits_and_cocircuits_never_meet_once(seed: u64, index in 0usize..3000) {
        let inst = corpus_instance(seed, index);
        let brute = BruteForce::new(&inst.matroid, cap()).unwrap();
        let cocircuits = brute.cocircuits();
        for c in brute.circuits().unwrap() {
            prop_assert!(c.elements().len() >= 2);
            for s in c.elements().iter() {
                prop_assert!(inst.matroid.is_independent(&c.elements().without(s)).unwrap());
            }
            for d in &cocircuits {
                prop_assert_ne!(c.elements().intersection(d).len(), 1);
            }
        }
    }
}

#[test]
fn complete_graph_counts() {
    let k = |n: usize| {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((format!("{u}{v}"), u, v));
            }
        }
        graphic(&GraphDescription::new(n, edges.iter().map(|(l, u, v)| (l.as_str(), *u, *v)))).unwrap()
    };
    for n in 2..=5 {
        assert_eq!(k(n).rank(), n - 1);
    }
    let k4 = k(4);
    let circuits = BruteForce::new(&k4, cap()).unwrap().circuits().unwrap();
    // four triangles and three 4-cycles
    assert_eq!(circuits.len(), 7);
    assert_eq!(circuits.iter().filter(|c| c.elements().len() == 3).count(), 4);
    // Cayley: 4^2 spanning trees
    assert_eq!(BruteForce::new(&k4, cap()).unwrap().bases().len(), 16);
}

#[test]
fn uniform_basis_counts() {
    let binomial = |n: usize, k: usize| (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
    for n in 1..=8 {
        for k in 0..=n {
            let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
            let m = uniform(&UniformParams { k, ground: labels }).unwrap();
            let bases = BruteForce::new(&m, cap()).unwrap().bases();
            assert_eq!(bases.len(), binomial(n, k), "U({k},{n})");
        }
    }
}
