//! Deterministic-surrogate heuristics, proven ratio bounds between c^max and c,
//! and their empirical certification.

pub mod tight;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::evalc::eval_c;
use crate::families::{family_stats, solve_deterministic, Dsu, FamilyStats};
use crate::instance::{EdgeSubset, Graph, LocUncInstance};
use crate::metric::TOL;

/// Solve the deterministic problem with every vertex at its barycenter.
pub fn heuristic_center(inst: &LocUncInstance, caps: &Caps) -> Result<EdgeSubset> {
    let bary: Vec<_> = (0..inst.n()).map(|i| inst.barycenter(i)).collect();
    let w: Vec<f64> =
        inst.graph().edges().iter().map(|&(i, j)| inst.space().d(bary[i], bary[j])).collect();
    solve_deterministic(inst.family(), inst.graph(), &w, caps)
}

/// Solve the deterministic problem under the worst-case pairwise distances.
pub fn heuristic_dmax(inst: &LocUncInstance, caps: &Caps) -> Result<EdgeSubset> {
    solve_deterministic(inst.family(), inst.graph(), &inst.dmax_weights(), caps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hypothesis {
    AnyMetric,
    Ptolemaic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structure {
    General,
    Path,
    Cycle,
    TriangleCycle,
    Clique,
    Star,
    Tree,
    MaxDegree(usize),
    Matching,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RatioBound {
    pub value: f64,
    pub hypothesis: Hypothesis,
    pub structure: Structure,
}

/// Tightest bound on c^max(F) / c(F) implied by the structure of F.
/// Forests use the tree (or star) bound: the components are vertex-disjoint,
/// so the worst component ratio bounds the whole.
pub fn applicable_bound(stats: &FamilyStats, ptolemaic: bool) -> RatioBound {
    let hypothesis = if ptolemaic { Hypothesis::Ptolemaic } else { Hypothesis::AnyMetric };
    let pick = |any: f64, pt: f64| if ptolemaic { pt } else { any };
    let mut cands: Vec<(f64, Structure)> = Vec::new();
    if stats.is_matching {
        cands.push((1.0, Structure::Matching));
    }
    if stats.is_cycle && stats.vertex_count == 3 {
        cands.push((1.5, Structure::TriangleCycle));
    }
    if stats.is_path {
        cands.push((2.0, Structure::Path));
    }
    if stats.is_cycle {
        cands.push((2.0, Structure::Cycle));
    }
    if stats.is_clique {
        cands.push((2.0, Structure::Clique));
    }
    if stats.is_star_forest {
        cands.push((pick(3.0, 2.0), Structure::Star));
    }
    if stats.is_forest {
        cands.push((pick(6.0, 4.0), Structure::Tree));
    }
    if stats.max_degree >= 1 {
        cands.push((stats.max_degree as f64, Structure::MaxDegree(stats.max_degree)));
    }
    cands.push((pick(9.0, 4.0), Structure::General));
    let (value, structure) = cands
        .into_iter()
        .fold((f64::INFINITY, Structure::General), |b, c| if c.0 < b.0 { c } else { b });
    RatioBound { value, hypothesis, structure }
}

/// Split F into its connected components.
pub fn components(graph: &Graph, f: &EdgeSubset) -> Vec<EdgeSubset> {
    let mut dsu = Dsu::new(graph.n());
    for &e in f.edges() {
        let (a, b) = graph.edge(e);
        dsu.union(a, b);
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for &e in f.edges() {
        let r = dsu.find(graph.edge(e).0);
        groups.entry(r).or_default().push(e);
    }
    groups.into_values().map(EdgeSubset::new).collect()
}

/// Bound for F: the largest component bound, each component classified on its own.
pub fn bound_for(graph: &Graph, f: &EdgeSubset, ptolemaic: bool) -> RatioBound {
    let comps = components(graph, f);
    if comps.is_empty() {
        return applicable_bound(&family_stats(graph, f), ptolemaic);
    }
    let whole = applicable_bound(&family_stats(graph, f), ptolemaic);
    let worst = comps
        .iter()
        .map(|c| applicable_bound(&family_stats(graph, c), ptolemaic))
        .fold(None::<RatioBound>, |acc, b| match acc {
            Some(a) if a.value >= b.value => Some(a),
            _ => Some(b),
        })
        .expect("nonempty");
    if whole.value <= worst.value {
        whole
    } else {
        worst
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub observed: f64,
    pub bound: RatioBound,
    pub ok: bool,
    pub cmax: f64,
    pub c: f64,
}

/// observed = c^max(F) / c(F), checked against the applicable bound. A zero
/// worst-case cost yields observed = 1.
pub fn certify_ratio(inst: &LocUncInstance, f: &EdgeSubset, caps: &Caps) -> Result<Certificate> {
    let c = eval_c(inst, f, caps)?.value;
    let cmax = inst.cmax(f);
    let observed = if c > TOL { cmax / c } else { 1.0 };
    let bound = bound_for(inst.graph(), f, inst.is_ptolemaic());
    Ok(Certificate { observed, bound, ok: observed <= bound.value + TOL, cmax, c })
}

/// Checks c^max(∪F_t) ≤ T · max_t ρ_t · c(∪F_t), where ρ_t is the observed
/// ratio of part t. The factor T is needed even for edge-disjoint parts:
/// c(∪F_t) is only bounded below by max_t c(F_t), not by the sum.
pub fn union_bound_check(inst: &LocUncInstance, parts: &[EdgeSubset], caps: &Caps) -> Result<bool> {
    if parts.is_empty() {
        return Err(Error::InvalidInstance("no parts".into()));
    }
    let mut rho: f64 = 1.0;
    for p in parts {
        let c = eval_c(inst, p, caps)?.value;
        if c > TOL {
            rho = rho.max(inst.cmax(p) / c);
        }
    }
    let union = parts.iter().skip(1).fold(parts[0].clone(), |a, b| a.union(b));
    let cu = eval_c(inst, &union, caps)?.value;
    let cmax_u = inst.cmax(&union);
    let t = parts.len() as f64;
    Ok(cmax_u <= t * rho * cu + TOL)
}

/// Split a forest into two star forests: each edge goes to the class given by
/// the depth parity of its upper endpoint.
pub fn split_into_star_forests(graph: &Graph, f: &EdgeSubset) -> Result<(EdgeSubset, EdgeSubset)> {
    let stats = family_stats(graph, f);
    if !stats.is_forest {
        return Err(Error::NotATree);
    }
    let n = graph.n();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for &e in f.edges() {
        let (a, b) = graph.edge(e);
        adj[a].push((b, e));
        adj[b].push((a, e));
    }
    let mut depth = vec![usize::MAX; n];
    let (mut even, mut odd) = (Vec::new(), Vec::new());
    for r in 0..n {
        if depth[r] != usize::MAX || adj[r].is_empty() {
            continue;
        }
        depth[r] = 0;
        let mut stack = vec![r];
        while let Some(v) = stack.pop() {
            for &(w, e) in &adj[v] {
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    if depth[v] % 2 == 0 {
                        even.push(e);
                    } else {
                        odd.push(e);
                    }
                    stack.push(w);
                }
            }
        }
    }
    Ok((EdgeSubset::new(even), EdgeSubset::new(odd)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stats(edges: Vec<(usize, usize)>, n: usize) -> FamilyStats {
        let g = Graph::with_isolated(n, edges).unwrap();
        family_stats(&g, &EdgeSubset::all(&g))
    }

    #[test]
    fn table_values() {
        assert_eq!(applicable_bound(&stats(vec![(0, 1), (2, 3)], 4), false).value, 1.0);
        assert_eq!(applicable_bound(&stats(vec![(0, 1), (1, 2), (2, 3)], 4), false).value, 2.0);
        assert_eq!(applicable_bound(&stats(vec![(0, 1), (1, 2), (0, 2)], 3), false).value, 1.5);
        let star = stats(vec![(0, 1), (0, 2), (0, 3), (0, 4)], 5);
        assert_eq!(applicable_bound(&star, false).value, 3.0);
        assert_eq!(applicable_bound(&star, true).value, 2.0);
        let k5: Vec<_> = (0..5).flat_map(|i| ((i + 1)..5).map(move |j| (i, j))).collect();
        assert_eq!(applicable_bound(&stats(k5, 5), false).value, 2.0);
        // spider: tree with Δ = 5 that is not a star
        let spider = stats((1..6).map(|i| (0, i)).chain((1..6).map(|i| (i, i + 5))).collect(), 11);
        assert_eq!(applicable_bound(&spider, false).value, 5.0);
        assert_eq!(applicable_bound(&spider, true).value, 4.0);
        // K5 plus a pendant path: general, Δ = 5
        let mut g: Vec<_> = (0..5).flat_map(|i| ((i + 1)..5).map(move |j| (i, j))).collect();
        g.push((4, 5));
        g.push((5, 6));
        let b = applicable_bound(&stats(g.clone(), 7), true);
        assert_eq!((b.value, b.structure), (4.0, Structure::General));
        assert_eq!(applicable_bound(&stats(g, 7), false).value, 5.0);
    }

    #[test]
    fn star_forest_split() {
        let g = Graph::new(7, vec![(0, 1), (1, 2), (2, 3), (1, 4), (4, 5), (5, 6)]).unwrap();
        let (a, b) = split_into_star_forests(&g, &EdgeSubset::all(&g)).unwrap();
        assert_eq!(a.len() + b.len(), 6);
        assert!(family_stats(&g, &a).is_star_forest);
        assert!(family_stats(&g, &b).is_star_forest);
    }
}
