//! Postoptimality formulas against re-solving and enumeration.

use proptest::prelude::*;
use tropmat::oracle::{BruteForce, EnumerationCap};
use tropmat::postopt::{maxmin_cocircuit, telescoping_value};
use tropmat::rational::{integer, rational};
use tropmat::tropical::{greedy_basis, Optimum};
use tropmat::{Basis, Matroid, Rational, Weighting};
use tropmat_testkit::{corpus_instance, random_rational, random_weights, rng, WeightStyle};

fn is_optimal(m: &Matroid, x: &Weighting, b: &Basis) -> bool {
    x.total(b.elements()) == greedy_basis(m, x).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn kirchhoff_matches_minor_solves(seed: u64, index in 0usize..3000) {
        let inst = corpus_instance(seed, index);
        let (m, x) = (&inst.matroid, &inst.weights);
        let opt = Optimum::new(m, x).unwrap();
        for e in m.ground() {
            let k = opt.kirchhoff(e).unwrap();
            let contracted = greedy_basis(&m.contract(e).unwrap(), x).unwrap().value;
            let deleted = greedy_basis(&m.delete(e).unwrap(), x).unwrap().value;
            prop_assert_eq!(&k.contract_value, &contracted, "{} contract {}", inst.name, m.label(e));
            prop_assert_eq!(&k.delete_value, &deleted, "{} delete {}", inst.name, m.label(e));
            prop_assert_eq!(&k.delete_value - &k.contract_value, opt.minmax(e).unwrap());
        }
    }

    #[test]
    fn postopt_matches_resolve(seed: u64, index in 0usize..3000, probe: u64) {
        let inst = corpus_instance(seed, index);
        let (m, x) = (&inst.matroid, &inst.weights);
        let opt = Optimum::new(m, x).unwrap();
        let mut r = rng(probe);
        for e in m.ground() {
            let mu = opt.minmax(e).unwrap();
            let mut probes = vec![mu.clone(), &mu - integer(1), &mu + rational(1, 3), integer(-20)];
            probes.push(random_rational(&mut r));
            for theta in probes {
                let fresh = greedy_basis(m, &x.with(e, theta.clone())).unwrap().value;
                prop_assert_eq!(opt.postopt_value(e, &theta).unwrap(), fresh);
            }
        }
    }

    /// f(θ) rises with slope one up to μ and is flat after it.
    #[test]
    fn postopt_has_single_breakpoint(seed: u64, index in 0usize..3000) {
        let inst = corpus_instance(seed, index);
        let opt = Optimum::new(&inst.matroid, &inst.weights).unwrap();
        for e in inst.matroid.ground() {
            let mu = opt.minmax(e).unwrap();
            let f = |t: Rational| opt.postopt_value(e, &t).unwrap();
            let (below, at, above) = (f(&mu - integer(1)), f(mu.clone()), f(&mu + integer(1)));
            prop_assert_eq!(&at - &below, integer(1));
            prop_assert_eq!(&above, &at);
        }
    }

    #[test]
    fn telescoping_recovers_optimum(seed: u64, index in 0usize..3000, pick: prop::sample::Index) {
        let inst = corpus_instance(seed, index);
        let m = &inst.matroid;
        let x = random_weights(&mut rng(seed), m, WeightStyle::TiedSmall);
        let bases = BruteForce::new(m, EnumerationCap::default()).unwrap().bases();
        let b = pick.get(&bases);
        prop_assert_eq!(telescoping_value(m, &x, b).unwrap(), greedy_basis(m, &x).unwrap().value);
    }

    #[test]
    fn persistency_matches_all_optimal_bases(seed: u64, index in 0usize..3000) {
        let inst = corpus_instance(seed, index);
        let (m, x) = (&inst.matroid, &inst.weights);
        let part = Optimum::new(m, x).unwrap().persistency().unwrap();
        let [all, none, some] = BruteForce::new(m, EnumerationCap::default()).unwrap()
            .persistency_classes(x).unwrap();
        prop_assert_eq!(&part.all, &all);
        prop_assert_eq!(&part.none, &none);
        prop_assert_eq!(&part.some, &some);
    }

    #[test]
    fn local_sensitivity_is_exact(seed: u64, index in 0usize..3000) {
        let inst = corpus_instance(seed, index);
        let (m, x) = (&inst.matroid, &inst.weights);
        let opt = Optimum::new(m, x).unwrap();
        let b = opt.basis().clone();
        for e in m.ground() {
            let mu = opt.minmax(e).unwrap();
            for step in -4..=4 {
                let theta = &mu + rational(step, 2);
                let verdict = opt.local_sensitivity(&b, e, &theta).unwrap();
                prop_assert_eq!(verdict.preserves_optimality, is_optimal(m, &x.with(e, theta.clone()), &b));
                if verdict.within_tolerance {
                    prop_assert!(verdict.preserves_optimality);
                }
            }
        }
    }

    #[test]
    fn half_tolerance_box_is_safe(seed: u64, index in 0usize..3000, probe: u64) {
        let inst = corpus_instance(seed, index);
        let (m, x) = (&inst.matroid, &inst.weights);
        let opt = Optimum::new(m, x).unwrap();
        let b = opt.basis().clone();
        let mut r = rng(probe);
        let mut moved = x.clone();
        for e in m.ground() {
            let half = opt.analysis(e).unwrap().tolerance / integer(2);
            // uniform point of [-half, half] on a grid of eighths
            let t = rational(rand::Rng::gen_range(&mut r, -8..=8), 8);
            moved.set(e, x.get(e).unwrap() + half * t);
        }
        let report = opt.global_sensitivity(&b, &moved).unwrap();
        prop_assert!(report.safe);
        prop_assert!(is_optimal(m, &moved, &b));
    }

    #[test]
    fn adversarial_perturbation_defeats_basis(seed: u64, index in 0usize..3000) {
        let inst = corpus_instance(seed, index);
        let (m, x) = (&inst.matroid, &inst.weights);
        let opt = Optimum::new(m, x).unwrap();
        let b = opt.basis().clone();
        for eps in [integer(1), rational(1, 2), rational(1, 8)] {
            let adv = opt.adversarial_perturbation(&b, &eps).unwrap();
            prop_assert!(!is_optimal(m, &adv.weights, &b));
            for e in m.ground() {
                let bound = opt.analysis(e).unwrap().tolerance / integer(2) + &eps;
                let delta = adv.weights.get(e).unwrap() - x.get(e).unwrap();
                prop_assert!(delta.clone() <= bound && -delta <= bound);
            }
            let report = opt.global_sensitivity(&b, &adv.weights).unwrap();
            prop_assert!(!report.safe);
            let w = report.witness.unwrap();
            prop_assert!(w.value < adv.weights.total(b.elements()));
        }
    }

    #[test]
    fn maxmin_over_cocircuits_equals_minmax(seed: u64, index in 0usize..3000) {
        let inst = corpus_instance(seed, index);
        let (m, x) = (&inst.matroid, &inst.weights);
        let opt = Optimum::new(m, x).unwrap();
        for e in m.ground() {
            prop_assert_eq!(maxmin_cocircuit(m, x, e, EnumerationCap::default()).unwrap(), opt.minmax(e).unwrap());
        }
    }
}
