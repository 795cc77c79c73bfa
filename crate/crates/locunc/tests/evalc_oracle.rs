mod common;

use common::*;
use locunc::evalc::{decomposition_for, eval_c, eval_c_bruteforce, eval_c_tree, eval_c_treewidth, evaluators};
use locunc::families::family_stats;
use locunc::{Caps, EdgeSubset, Error, FamilyDescriptor};
use proptest::prelude::*;
use rand::Rng;

#[test]
fn dps_agree_with_brute_force_on_random_instances() {
    let caps = Caps::default();
    let mut forests = 0;
    for seed in 0..150u64 {
        let mut r = rng(seed);
        let variant = VARIANTS[seed as usize % 3];
        let n = r.gen_range(2..=8);
        let g = random_connected_graph(&mut r, n, if seed % 2 == 0 { 0.0 } else { 0.35 });
        let sigma = r.gen_range(1..=3);
        let inst = random_instance(&mut r, g, variant, sigma, FamilyDescriptor::SpanningTree);
        let f = EdgeSubset::new((0..inst.graph().m()).filter(|_| r.gen_bool(0.8)).collect());
        let want = brute_c(&inst, &f);
        let brute = eval_c_bruteforce(&inst, &f, &caps).unwrap();
        assert!(close(brute.value, want, 1e-9), "seed {seed}");
        assert_eq!(inst.cost(&brute.witness, &f), brute.value);
        let td = decomposition_for(&inst, &f);
        let tw = eval_c_treewidth(&inst, &f, &td, &caps).unwrap();
        assert!(close(tw.value, want, 1e-9), "seed {seed}: treewidth {} vs {want}", tw.value);
        if family_stats(inst.graph(), &f).is_forest {
            forests += 1;
            assert!(close(eval_c_tree(&inst, &f).unwrap().value, want, 1e-9), "seed {seed}");
        } else {
            assert!(matches!(eval_c_tree(&inst, &f), Err(Error::NotATree)));
        }
        assert!(close(eval_c(&inst, &f, &caps).unwrap().value, want, 1e-9));
    }
    assert!(forests > 50);
}

#[test]
fn every_registered_evaluator_matches_on_a_tree() {
    let caps = Caps::default();
    let mut r = rng(99);
    let g = random_tree(&mut r, 7);
    let inst = random_instance(&mut r, g, MetricVariant::Euclidean, 3, FamilyDescriptor::SpanningTree);
    let f = EdgeSubset::all(inst.graph());
    let want = brute_c(&inst, &f);
    let reg = evaluators();
    for name in reg.names() {
        let v = reg.get(name).unwrap().evaluate(&inst, &f, &caps).unwrap().value;
        assert!(close(v, want, 1e-9), "{name}: {v} vs {want}");
    }
}

#[test]
fn brute_force_respects_scenario_cap() {
    let mut r = rng(5);
    let g = random_connected_graph(&mut r, 8, 0.5);
    let inst = random_instance(&mut r, g, MetricVariant::Euclidean, 3, FamilyDescriptor::SpanningTree);
    let caps = Caps { scenarios: 1, ..Caps::default() };
    let f = EdgeSubset::all(inst.graph());
    if inst.scenario_count() > 1.0 {
        assert!(matches!(eval_c_bruteforce(&inst, &f, &caps), Err(Error::CapExceeded { .. })));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn value_is_between_any_scenario_and_cmax(seed in 0u64..10_000, n in 2usize..7, sigma in 1usize..4) {
        let mut r = rng(seed);
        let g = random_connected_graph(&mut r, n, 0.3);
        let inst = random_instance(&mut r, g, VARIANTS[(seed % 3) as usize], sigma, FamilyDescriptor::SpanningTree);
        let f = EdgeSubset::all(inst.graph());
        let c = eval_c(&inst, &f, &Caps::default()).unwrap().value;
        prop_assert!(c <= inst.cmax(&f) + 1e-9);
        prop_assert!(c + 1e-9 >= inst.cost(&inst.barycenter_scenario(), &f));
    }

    #[test]
    fn monotone_under_edge_addition(seed in 0u64..10_000, n in 3usize..7) {
        let mut r = rng(seed);
        let g = random_connected_graph(&mut r, n, 0.4);
        let inst = random_instance(&mut r, g, MetricVariant::Explicit, 2, FamilyDescriptor::SpanningTree);
        let all = EdgeSubset::all(inst.graph());
        let part = EdgeSubset::new(all.edges()[..all.len() - 1].to_vec());
        let caps = Caps::default();
        prop_assert!(eval_c(&inst, &part, &caps).unwrap().value <= eval_c(&inst, &all, &caps).unwrap().value + 1e-9);
    }
}
