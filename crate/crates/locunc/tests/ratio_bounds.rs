mod common;

use common::*;
use locunc::approx::tight::*;
use locunc::approx::{certify_ratio, split_into_star_forests, union_bound_check, Hypothesis, Structure};
use locunc::{Caps, EdgeSubset, FamilyDescriptor};
use proptest::prelude::*;
use rand::Rng;

#[test]
fn certified_on_every_shape_and_metric() {
    let caps = Caps::default();
    let mut seen_non_ptolemaic = false;
    for seed in 0..140u64 {
        let mut r = rng(seed);
        let shape = SHAPES[seed as usize % SHAPES.len()];
        let n = r.gen_range(3..=6);
        let g = shaped_graph(&mut r, shape, n);
        let variant = VARIANTS[(seed / 7) as usize % 3];
        let inst = random_instance(&mut r, g, variant, 3, FamilyDescriptor::SpanningTree);
        let f = EdgeSubset::all(inst.graph());
        let cert = certify_ratio(&inst, &f, &caps).unwrap();
        seen_non_ptolemaic |= cert.bound.hypothesis == Hypothesis::AnyMetric;
        assert!(cert.ok, "seed {seed} {shape} {variant:?}: {cert:?}");
        assert!(close(cert.c, brute_c(&inst, &f), 1e-9));
    }
    assert!(seen_non_ptolemaic);
}

#[test]
fn tight_instances_reach_their_values() {
    let caps = Caps::default();
    for n in 3..=8 {
        let (inst, f) = gen_tight_path(n).unwrap();
        let c = certify_ratio(&inst, &f, &caps).unwrap();
        assert_eq!((c.cmax, c.c), (2.0, 1.0));
        assert_eq!(c.bound.structure, Structure::Path);
    }
    for n in 4..=8 {
        let (inst, f) = gen_tight_cycle(n).unwrap();
        let c = certify_ratio(&inst, &f, &caps).unwrap();
        assert_eq!((c.cmax, c.c), (4.0, 2.0));
    }
    let (inst, f) = gen_tight_triangle().unwrap();
    let c = certify_ratio(&inst, &f, &caps).unwrap();
    assert_eq!((c.cmax, c.c), (3.0, 2.0));
    assert!(c.ok);
    for n in 3..=10 {
        let (inst, f) = gen_tight_star(n).unwrap();
        let c = certify_ratio(&inst, &f, &caps).unwrap();
        let want = 3.0 * (n - 1) as f64 / (n + 1) as f64;
        assert!(close(c.observed, want, 1e-9), "star {n}: {}", c.observed);
        assert!(c.ok);
    }
}

#[test]
fn clique_ratio_is_max_cut_ratio() {
    // c^max = k(k−1)/2 and c = ⌊k/2⌋⌈k/2⌉
    for k in 3..=7 {
        let (inst, f) = gen_tight_clique(k).unwrap();
        let c = certify_ratio(&inst, &f, &Caps::default()).unwrap();
        assert_eq!(c.cmax, (k * (k - 1) / 2) as f64);
        assert_eq!(c.c, ((k / 2) * k.div_ceil(2)) as f64);
        assert!(c.ok);
    }
}

#[test]
fn star_forest_split_and_union_bound() {
    let caps = Caps::default();
    for seed in 0..20u64 {
        let mut r = rng(seed);
        let n = r.gen_range(3..=8);
        let g = random_tree(&mut r, n);
        let inst = random_instance(&mut r, g, MetricVariant::Explicit, 2, FamilyDescriptor::SpanningTree);
        let f = EdgeSubset::all(inst.graph());
        let (a, b) = split_into_star_forests(inst.graph(), &f).unwrap();
        assert_eq!(a.union(&b), f);
        assert!(union_bound_check(&inst, &[a, b], &caps).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn observed_ratio_at_least_one(seed in 0u64..100_000, shape in 0usize..7) {
        let mut r = rng(seed);
        let g = shaped_graph(&mut r, SHAPES[shape], 5);
        let inst = random_instance(&mut r, g, MetricVariant::Euclidean, 2, FamilyDescriptor::SpanningTree);
        let cert = certify_ratio(&inst, &EdgeSubset::all(inst.graph()), &Caps::default()).unwrap();
        prop_assert!(cert.observed >= 1.0 - 1e-9);
        prop_assert!(cert.ok);
        prop_assert_eq!(cert.bound.hypothesis, Hypothesis::Ptolemaic);
    }
}
