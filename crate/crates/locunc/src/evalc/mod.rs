//! The adversarial evaluation c(F) = max_{u ∈ U} c(u, F).

mod brute;
pub mod decomposition;
mod tree;
mod treewidth;

pub use brute::eval_c_bruteforce;
pub use decomposition::{build_nice_decomposition, NodeKind, TreeDecomposition};
pub use tree::eval_c_tree;
pub use treewidth::eval_c_treewidth;

use crate::caps::Caps;
use crate::error::Result;
use crate::families::family_stats;
use crate::instance::{EdgeSubset, LocUncInstance, Scenario};
use crate::registry::{Named, Registry};

#[derive(Clone, Debug, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub witness: Scenario,
}

impl EvalResult {
    /// The value is recomputed from the witness so the two always agree exactly.
    pub(crate) fn new(inst: &LocUncInstance, f: &EdgeSubset, witness: Scenario) -> Self {
        EvalResult { value: inst.cost(&witness, f), witness }
    }
}

/// Decomposition of the subgraph spanned by F.
pub fn decomposition_for(inst: &LocUncInstance, f: &EdgeSubset) -> TreeDecomposition {
    let g = inst.graph();
    let edges: Vec<(usize, usize)> = f.edges().iter().map(|&e| g.edge(e)).collect();
    decomposition::nice_decomposition(inst.n(), &edges, &f.vertices(g))
}

/// Forest → tree DP; small width → treewidth DP; otherwise brute force.
pub fn eval_c(inst: &LocUncInstance, f: &EdgeSubset, caps: &Caps) -> Result<EvalResult> {
    if family_stats(inst.graph(), f).is_forest {
        return eval_c_tree(inst, f);
    }
    let td = decomposition_for(inst, f);
    if td.width() <= caps.treewidth && treewidth::check_tables(inst, &td, caps).is_ok() {
        return eval_c_treewidth(inst, f, &td, caps);
    }
    eval_c_bruteforce(inst, f, caps)
}

pub trait CostEvaluator: Named + Send + Sync {
    fn evaluate(&self, inst: &LocUncInstance, f: &EdgeSubset, caps: &Caps) -> Result<EvalResult>;
}

pub struct BruteForce;
pub struct TreeDp;
pub struct TreewidthDp;
pub struct Auto;

impl Named for BruteForce {
    fn name(&self) -> &'static str {
        "brute"
    }
}
impl CostEvaluator for BruteForce {
    fn evaluate(&self, inst: &LocUncInstance, f: &EdgeSubset, caps: &Caps) -> Result<EvalResult> {
        eval_c_bruteforce(inst, f, caps)
    }
}

impl Named for TreeDp {
    fn name(&self) -> &'static str {
        "tree"
    }
}
impl CostEvaluator for TreeDp {
    fn evaluate(&self, inst: &LocUncInstance, f: &EdgeSubset, _caps: &Caps) -> Result<EvalResult> {
        eval_c_tree(inst, f)
    }
}

impl Named for TreewidthDp {
    fn name(&self) -> &'static str {
        "treewidth"
    }
}
impl CostEvaluator for TreewidthDp {
    fn evaluate(&self, inst: &LocUncInstance, f: &EdgeSubset, caps: &Caps) -> Result<EvalResult> {
        let td = decomposition_for(inst, f);
        eval_c_treewidth(inst, f, &td, caps)
    }
}

impl Named for Auto {
    fn name(&self) -> &'static str {
        "auto"
    }
}
impl CostEvaluator for Auto {
    fn evaluate(&self, inst: &LocUncInstance, f: &EdgeSubset, caps: &Caps) -> Result<EvalResult> {
        eval_c(inst, f, caps)
    }
}

pub fn evaluators() -> Registry<dyn CostEvaluator> {
    let mut r: Registry<dyn CostEvaluator> = Registry::new("evaluator");
    r.register(Box::new(Auto))
        .register(Box::new(BruteForce))
        .register(Box::new(TreeDp))
        .register(Box::new(TreewidthDp));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::instance::{FamilyDescriptor, Graph};
    use crate::metric::{MetricSpace, PointId};

    fn line_instance(n: usize, edges: Vec<(usize, usize)>, sets: Vec<Vec<usize>>, coords: &[f64]) -> LocUncInstance {
        let g = Graph::new(n, edges).unwrap();
        let s = MetricSpace::euclidean(coords.iter().map(|&x| vec![x]).collect()).unwrap();
        let u = sets.into_iter().map(|v| v.into_iter().map(PointId).collect()).collect();
        LocUncInstance::new(g, s, u, FamilyDescriptor::SpanningTree).unwrap()
    }

    #[test]
    fn path_sets_value_one() {
        let inst = line_instance(3, vec![(0, 1), (1, 2)], vec![vec![0], vec![0, 1], vec![1]], &[0.0, 1.0]);
        let f = EdgeSubset::all(inst.graph());
        let caps = Caps::default();
        for ev in ["brute", "tree", "treewidth", "auto"] {
            assert_eq!(evaluators().get(ev).unwrap().evaluate(&inst, &f, &caps).unwrap().value, 1.0);
        }
    }

    #[test]
    fn three_cycle_remark() {
        let inst = line_instance(3, vec![(0, 1), (1, 2), (0, 2)], vec![vec![0], vec![0, 1], vec![1]], &[0.0, 1.0]);
        let f = EdgeSubset::all(inst.graph());
        let caps = Caps::default();
        assert_eq!(eval_c_bruteforce(&inst, &f, &caps).unwrap().value, 2.0);
        assert_eq!(eval_c(&inst, &f, &caps).unwrap().value, 2.0);
        assert_eq!(inst.cmax(&f), 3.0);
        assert_eq!(eval_c_tree(&inst, &f), Err(Error::NotATree));
    }

    #[test]
    fn empty_subset() {
        let inst = line_instance(2, vec![(0, 1)], vec![vec![0, 1], vec![1]], &[0.0, 1.0]);
        let r = eval_c(&inst, &EdgeSubset::default(), &Caps::default()).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn brute_force_cap() {
        let inst = line_instance(2, vec![(0, 1)], vec![vec![0, 1], vec![0, 1]], &[0.0, 1.0]);
        let caps = Caps { scenarios: 3, ..Caps::default() };
        let f = EdgeSubset::all(inst.graph());
        assert!(matches!(eval_c_bruteforce(&inst, &f, &caps), Err(Error::CapExceeded { .. })));
    }
}
