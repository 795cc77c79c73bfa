mod common;

use common::*;
use locunc::evalc::{eval_c, Auto};
use locunc::reductions::{
    gen_listcol_evalc, gen_maxcut_evalc, gen_partition_mst, gen_partition_sp, partition_mst_cost_scaled,
    partition_mst_cost_single_layer, partition_sp_cost, PartitionInput,
};
use locunc::robust_cut::cutting_plane;
use locunc::{Caps, EdgeSubset, Error, Graph};
use rand::Rng;

fn masks(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u32..1 << n).map(move |m| (0..n).map(|i| m >> i & 1 == 1).collect())
}

#[test]
fn maxcut_matches_enumeration() {
    let caps = Caps::default();
    for seed in 0..30u64 {
        let mut r = rng(seed);
        let n = r.gen_range(2..=10);
        let g = random_connected_graph(&mut r, n, 0.4);
        let inst = gen_maxcut_evalc(&g).unwrap();
        let c = eval_c(&inst, &EdgeSubset::all(&g), &caps).unwrap().value;
        assert_eq!(c, brute_maxcut(&g) as f64, "seed {seed}");
    }
}

#[test]
fn maxcut_small_cases() {
    let caps = Caps::default();
    let tri = Graph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
    let c4 = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
    for (g, want) in [(tri, 2.0), (c4, 4.0)] {
        let inst = gen_maxcut_evalc(&g).unwrap();
        assert_eq!(eval_c(&inst, &EdgeSubset::all(&g), &caps).unwrap().value, want);
    }
}

fn colourable(g: &Graph, lists: &[Vec<usize>]) -> bool {
    fn go(g: &Graph, lists: &[Vec<usize>], v: usize, col: &mut Vec<usize>) -> bool {
        if v == g.n() {
            return g.edges().iter().all(|&(a, b)| col[a] != col[b]);
        }
        for &c in &lists[v] {
            col[v] = c;
            if go(g, lists, v + 1, col) {
                return true;
            }
        }
        false
    }
    go(g, lists, 0, &mut vec![0; g.n()])
}

#[test]
fn list_colouring_matches_enumeration() {
    let caps = Caps::default();
    for seed in 0..40u64 {
        let mut r = rng(seed);
        let n = r.gen_range(2..=7);
        let g = random_connected_graph(&mut r, n, 0.3);
        let lists: Vec<Vec<usize>> = (0..n)
            .map(|_| {
                let mut l: Vec<usize> = (0..4).filter(|_| r.gen_bool(0.5)).collect();
                if l.is_empty() {
                    l.push(r.gen_range(0..4));
                }
                l
            })
            .collect();
        let inst = gen_listcol_evalc(&g, &lists).unwrap();
        let c = eval_c(&inst, &EdgeSubset::all(&g), &caps).unwrap().value;
        assert_eq!(c == g.m() as f64, colourable(&g, &lists), "seed {seed}");
    }
}

#[test]
fn forced_conflict_on_triangle() {
    let g = Graph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
    let inst = gen_listcol_evalc(&g, &[vec![0], vec![0], vec![0]]).unwrap();
    assert_eq!(eval_c(&inst, &EdgeSubset::all(&g), &Caps::default()).unwrap().value, 0.0);
}

#[test]
fn partition_sp_subset_costs_and_optimum() {
    let caps = Caps::default();
    for seed in 0..8u64 {
        let mut r = rng(seed);
        let n = r.gen_range(2..=5);
        let a: Vec<i64> = (0..n).map(|_| r.gen_range(1..=6)).collect();
        let input = PartitionInput::new(a.clone(), PartitionInput::min_k_sp(&a)).unwrap();
        let pi = gen_partition_sp(&input).unwrap();
        for m in masks(n) {
            let f = pi.path_for(&m);
            assert_eq!(brute_c(&pi.instance, &f) as i64, pi.scale * partition_sp_cost(&input, &m));
        }
        let opt = cutting_plane(&pi.instance, None, &Auto, &caps).unwrap().value as i64;
        let want = 2 * input.n() * input.k + 2 * input.best_split();
        assert_eq!(opt, pi.scale * want);
        assert_eq!(want == 2 * input.n() * input.k + input.total(), input.has_perfect_partition());
    }
}

#[test]
fn partition_mst_run_formula_and_lower_bound() {
    for seed in 0..6u64 {
        let mut r = rng(seed);
        let n = r.gen_range(2..=4);
        let a: Vec<i64> = (0..n).map(|_| r.gen_range(1..=6)).collect();
        let input = PartitionInput::new(a.clone(), PartitionInput::min_k_mst(&a)).unwrap();
        let pi = gen_partition_mst(&input).unwrap();
        for m in masks(n) {
            let c = brute_c(&pi.instance, &pi.path_for(&m)) as i64;
            assert_eq!(c, partition_mst_cost_scaled(&input, &m), "seed {seed} mask {m:?}");
            assert!(c >= pi.scale * partition_mst_cost_single_layer(&input, &m));
        }
    }
}

#[test]
fn small_k_is_rejected() {
    let input = PartitionInput::new(vec![1, 1], 3).unwrap();
    assert!(matches!(gen_partition_sp(&input), Err(Error::InvalidScale { .. })));
    assert!(matches!(gen_partition_mst(&input), Err(Error::InvalidScale { .. })));
}
