//! Instances from the hardness constructions: PARTITION → robust shortest
//! path, PARTITION → robust spanning tree, MAX-CUT and list colouring →
//! adversarial evaluation.
//!
//! The PARTITION instances use the offsets A/n; all coordinates and weights
//! are multiplied by n so that every distance is an integer and the costs are
//! exact in floating point. [`PartitionInstance::scale`] reports the factor.

use crate::error::{Error, Result};
use crate::instance::{EdgeSubset, FamilyDescriptor, Graph, LocUncInstance};
use crate::metric::{MetricSpace, PointId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionInput {
    pub a: Vec<i64>,
    pub k: i64,
}

impl PartitionInput {
    pub fn new(a: Vec<i64>, k: i64) -> Result<Self> {
        if a.is_empty() || a.iter().any(|&x| x < 1) {
            return Err(Error::InvalidSize("partition integers must be >= 1".into()));
        }
        Ok(PartitionInput { a, k })
    }

    pub fn n(&self) -> i64 {
        self.a.len() as i64
    }

    pub fn total(&self) -> i64 {
        self.a.iter().sum()
    }

    /// Smallest K accepted by [`gen_partition_sp`]: 2nA + 1.
    pub fn min_k_sp(a: &[i64]) -> i64 {
        2 * a.len() as i64 * a.iter().sum::<i64>() + 1
    }

    /// Smallest K accepted by [`gen_partition_mst`]: (4n − 1)A + 1.
    pub fn min_k_mst(a: &[i64]) -> i64 {
        (4 * a.len() as i64 - 1) * a.iter().sum::<i64>() + 1
    }

    /// Brute force: is there S with Σ_S a = Σ_S̄ a?
    pub fn has_perfect_partition(&self) -> bool {
        self.best_split() * 2 == self.total()
    }

    /// min over S of max(Σ_S a, Σ_S̄ a), by subset-sum reachability.
    pub fn best_split(&self) -> i64 {
        let total = self.total() as usize;
        let mut reach = vec![false; total + 1];
        reach[0] = true;
        for &x in &self.a {
            for s in (x as usize..=total).rev() {
                reach[s] |= reach[s - x as usize];
            }
        }
        (0..=total).filter(|&s| reach[s]).map(|s| s.max(total - s) as i64).min().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartitionInstance {
    pub instance: LocUncInstance,
    /// Every distance is multiplied by this factor (= n).
    pub scale: i64,
    pub input: PartitionInput,
}

impl PartitionInstance {
    /// Edge set chosen by the subset S (a membership mask over the a_i).
    pub fn path_for(&self, in_s: &[bool]) -> EdgeSubset {
        let g = self.instance.graph();
        let n = self.input.a.len();
        match self.instance.family() {
            FamilyDescriptor::StPath { s, t } => {
                let pick = |i: usize| if in_s[i] { 1 + i } else { 1 + n + i };
                let mut vs = vec![*s];
                vs.extend((0..n).map(pick));
                vs.push(*t);
                EdgeSubset::new(vs.windows(2).map(|w| g.edge_index(w[0], w[1]).expect("layer edge")).collect())
            }
            _ => {
                // all verticals, plus v_{i−1}v_i for i ∈ S and w_{i−1}w_i otherwise
                let mut es: Vec<usize> = (0..=n).map(|i| g.edge_index(i, n + 1 + i).expect("vertical")).collect();
                for i in 1..=n {
                    let (a, b) = if in_s[i - 1] { (i - 1, i) } else { (n + i, n + 1 + i) };
                    es.push(g.edge_index(a, b).expect("horizontal"));
                }
                EdgeSubset::new(es)
            }
        }
    }
}

/// PARTITION → robust s–t path. Vertices: s = 0, v_i = i, w_i = n + i
/// (i = 1..n), t = 2n + 1. Consecutive layers are completely joined.
/// s and t sit at 0; every other vertex may sit at either end of its interval
/// [−u⁻, u⁺] on the line. Only the endpoints are kept: the worst case of a sum
/// of absolute differences is attained at extreme points.
///
/// c(F_S) = 2nK + 2·max(Σ_S a, Σ_S̄ a) before scaling.
pub fn gen_partition_sp(input: &PartitionInput) -> Result<PartitionInstance> {
    let n = input.a.len();
    let (ni, total) = (input.n(), input.total());
    let threshold = 2 * ni * total;
    if input.k <= threshold {
        return Err(Error::InvalidScale { k: input.k, threshold });
    }
    let (s, t) = (0, 2 * n + 1);
    let v = |i: usize| i;
    let w = |i: usize| n + i;
    let mut edges = vec![(s, v(1)), (s, w(1))];
    for i in 1..n {
        edges.extend([(v(i), v(i + 1)), (v(i), w(i + 1)), (w(i), v(i + 1)), (w(i), w(i + 1))]);
    }
    edges.extend([(v(n), t), (w(n), t)]);
    let g = Graph::new(2 * n + 2, edges)?;

    // scaled by n: K → nK, a_i → n a_i, A/n → A
    let k = ni * input.k;
    let mut coords: Vec<i64> = vec![0];
    let mut usets = vec![Vec::new(); 2 * n + 2];
    usets[s] = vec![PointId(0)];
    usets[t] = vec![PointId(0)];
    let mut push = |vertex: usize, plus: i64, minus: i64, coords: &mut Vec<i64>| {
        usets[vertex] = vec![PointId(coords.len()), PointId(coords.len() + 1)];
        coords.push(-minus);
        coords.push(plus);
    };
    for i in 1..=n {
        let ai = ni * input.a[i - 1];
        let (vp, vm, wp, wm) = if i % 2 == 1 {
            (k + ai, k + total - ai, k, k + total)
        } else {
            (k + total - ai, k + ai, k + total, k)
        };
        push(v(i), vp, vm, &mut coords);
        push(w(i), wp, wm, &mut coords);
    }
    let space = MetricSpace::euclidean(coords.iter().map(|&x| vec![x as f64]).collect())?;
    let instance = LocUncInstance::new(g, space, usets, FamilyDescriptor::StPath { s, t })?;
    Ok(PartitionInstance { instance, scale: ni, input: input.clone() })
}

/// Cost of F_S in unscaled units: 2nK + 2·max(Σ_S, Σ_S̄).
pub fn partition_sp_cost(input: &PartitionInput, in_s: &[bool]) -> i64 {
    let sum_s: i64 = input.a.iter().zip(in_s).filter(|(_, &b)| b).map(|(a, _)| a).sum();
    2 * input.n() * input.k + 2 * sum_s.max(input.total() - sum_s)
}

/// PARTITION → robust spanning tree. G is the ladder v_0..v_n (vertices
/// 0..=n), w_0..w_n (n+1..=2n+1) with all n + 1 rungs and both rails.
///
/// The locations are the nodes of a two-layer weighted graph: v_i may sit at
/// v_i^1 or v_i^2, w_i at w_i^1 or w_i^2. Within a column all four v–w links
/// weigh K; the crossing links v^1_{i−1}v^2_i, v^2_{i−1}v^1_i (and the same
/// for w) weigh 2K; the rails weigh 3K + a_i, 3K + A/n − a_i (v, layers 1
/// and 2) and 3K, 3K + A/n (w). The metric is the shortest-path closure of
/// these weights, frozen into a matrix.
///
/// Every rung costs K in every scenario; see [`partition_mst_cost_scaled`]
/// for the resulting cost of the tree chosen by S.
pub fn gen_partition_mst(input: &PartitionInput) -> Result<PartitionInstance> {
    let n = input.a.len();
    let (ni, total) = (input.n(), input.total());
    let threshold = (4 * ni - 1) * total;
    if input.k <= threshold {
        return Err(Error::InvalidScale { k: input.k, threshold });
    }
    let v = |i: usize| i;
    let w = |i: usize| n + 1 + i;
    let mut edges: Vec<(usize, usize)> = (0..=n).map(|i| (v(i), w(i))).collect();
    for i in 1..=n {
        edges.push((v(i - 1), v(i)));
        edges.push((w(i - 1), w(i)));
    }
    let g = Graph::new(2 * n + 2, edges)?;

    let c = n + 1;
    let (v1, w1, v2, w2) = (|i: usize| i, |i: usize| c + i, |i: usize| 2 * c + i, |i: usize| 3 * c + i);
    let k = ni * input.k;
    let mut wedges: Vec<(usize, usize, f64)> = Vec::new();
    let mut link = |a: usize, b: usize, x: i64| wedges.push((a, b, x as f64));
    for i in 0..=n {
        link(v1(i), w1(i), k);
        link(v2(i), w2(i), k);
        link(w1(i), v2(i), k);
        link(v1(i), w2(i), k);
    }
    for i in 1..=n {
        let ai = ni * input.a[i - 1];
        link(v1(i - 1), v2(i), 2 * k);
        link(v2(i - 1), v1(i), 2 * k);
        link(w1(i - 1), w2(i), 2 * k);
        link(w2(i - 1), w1(i), 2 * k);
        link(v1(i - 1), v1(i), 3 * k + ai);
        link(v2(i - 1), v2(i), 3 * k + total - ai);
        link(w1(i - 1), w1(i), 3 * k);
        link(w2(i - 1), w2(i), 3 * k + total);
    }
    let space = MetricSpace::graph_induced(4 * c, wedges)?.freeze();
    let mut usets = vec![Vec::new(); 2 * c];
    for i in 0..=n {
        usets[v(i)] = vec![PointId(v1(i)), PointId(v2(i))];
        usets[w(i)] = vec![PointId(w1(i)), PointId(w2(i))];
    }
    let instance = LocUncInstance::new(g, space, usets, FamilyDescriptor::SpanningTree)?;
    Ok(PartitionInstance { instance, scale: ni, input: input.clone() })
}

/// Worst-case cost of the rung-complete tree F_S in units of 1/n (i.e. the
/// scaled instance's cost). Every rung costs K in every scenario, so the
/// maximal runs of consecutive rails pick their layer independently of one
/// another: a v-run T contributes max(Σ_T (3K + a_i), Σ_T (3K + A/n − a_i)),
/// a w-run 3K|T| + |T|A/n.
pub fn partition_mst_cost_scaled(input: &PartitionInput, in_s: &[bool]) -> i64 {
    let n = input.n();
    let (k, total) = (n * input.k, input.total());
    let mut cost = (n + 1) * k;
    let mut i = 0;
    while i < in_s.len() {
        let side = in_s[i];
        let (mut bottom, mut top) = (0, 0);
        while i < in_s.len() && in_s[i] == side {
            let ai = n * input.a[i];
            if side {
                bottom += 3 * k + ai;
                top += 3 * k + total - ai;
            } else {
                bottom += 3 * k;
                top += 3 * k + total;
            }
            i += 1;
        }
        cost += bottom.max(top);
    }
    cost
}

/// The cost F_S would have if all vertices had to share one layer:
/// (n + 1)K + 3nK + max(Σ_S, Σ_S̄), unscaled. Only a lower bound on the true
/// worst case (see [`partition_mst_cost_scaled`]).
pub fn partition_mst_cost_single_layer(input: &PartitionInput, in_s: &[bool]) -> i64 {
    let sum_s: i64 = input.a.iter().zip(in_s).filter(|(_, &b)| b).map(|(a, _)| a).sum();
    (input.n() + 1) * input.k + 3 * input.n() * input.k + sum_s.max(input.total() - sum_s)
}

/// Every vertex may sit at 0 or 1 on the line, so c(E(G)) is the maximum cut
/// of the graph. The family is the single set E(G).
pub fn gen_maxcut_evalc(graph: &Graph) -> Result<LocUncInstance> {
    let space = MetricSpace::euclidean(vec![vec![0.0], vec![1.0]])?;
    let usets = vec![vec![PointId(0), PointId(1)]; graph.n()];
    let family = FamilyDescriptor::ExplicitList(vec![EdgeSubset::all(graph)]);
    LocUncInstance::new(graph.clone(), space, usets, family)
}

/// Colours are points of the discrete (0/1) metric and vertex i may take any
/// colour of its list; c(E(G)) = m iff the lists admit a proper colouring.
pub fn gen_listcol_evalc(graph: &Graph, lists: &[Vec<usize>]) -> Result<LocUncInstance> {
    if lists.len() != graph.n() || lists.iter().any(|l| l.is_empty()) {
        return Err(Error::InvalidInstance("one nonempty colour list per vertex required".into()));
    }
    let mut colours: Vec<usize> = lists.iter().flatten().copied().collect();
    colours.sort_unstable();
    colours.dedup();
    let q = colours.len();
    let m = (0..q).map(|a| (0..q).map(|b| if a == b { 0.0 } else { 1.0 }).collect()).collect();
    let space = MetricSpace::explicit(m)?;
    let usets = lists
        .iter()
        .map(|l| {
            let mut ids: Vec<PointId> = l.iter().map(|c| PointId(colours.binary_search(c).expect("listed"))).collect();
            ids.dedup();
            ids
        })
        .collect();
    let family = FamilyDescriptor::ExplicitList(vec![EdgeSubset::all(graph)]);
    LocUncInstance::new(graph.clone(), space, usets, family)
}
