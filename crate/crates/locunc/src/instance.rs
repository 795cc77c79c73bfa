//! The robust instance: a graph whose vertices have finite lists of candidate
//! locations in a metric space, plus the feasible family of edge subsets.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::metric::{is_ptolemaic, MetricSpace, PointId};

#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Simple graph without loops, duplicate edges or isolated vertices.
    /// Edges are stored with the smaller endpoint first, in input order.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let g = Self::build(n, edges)?;
        if let Some(v) = (0..n).find(|&v| g.adj[v].is_empty()) {
            return Err(Error::InvalidGraph(format!("vertex {v} is isolated")));
        }
        Ok(g)
    }

    /// Same as [`Graph::new`] but isolated vertices are allowed; used for
    /// auxiliary graphs such as the subgraph spanned by an edge subset.
    pub fn with_isolated(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        Self::build(n, edges)
    }

    fn build(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut seen = std::collections::HashSet::new();
        let mut norm = Vec::with_capacity(edges.len());
        for (e, (a, b)) in edges.into_iter().enumerate() {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!("edge ({a},{b}) out of range")));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            let (i, j) = (a.min(b), a.max(b));
            if !seen.insert((i, j)) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({i},{j})")));
            }
            adj[i].push((j, e));
            adj[j].push((i, e));
            norm.push((i, j));
        }
        Ok(Graph { n, edges: norm, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// `(neighbour, edge id)` pairs.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.adj.get(a)?.iter().find(|&&(w, _)| w == b).map(|&(_, e)| e)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(w, _) in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }
}

/// Sorted, duplicate-free list of edge ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSubset(Vec<usize>);

impl EdgeSubset {
    pub fn new(mut edges: Vec<usize>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        EdgeSubset(edges)
    }

    pub fn all(graph: &Graph) -> Self {
        EdgeSubset((0..graph.m()).collect())
    }

    pub fn edges(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    pub fn union(&self, other: &EdgeSubset) -> EdgeSubset {
        EdgeSubset::new(self.0.iter().chain(&other.0).copied().collect())
    }

    /// Vertices touched by the subset, sorted.
    pub fn vertices(&self, graph: &Graph) -> Vec<usize> {
        let mut v: Vec<usize> = self.0.iter().flat_map(|&e| {
            let (a, b) = graph.edge(e);
            [a, b]
        }).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FamilyDescriptor {
    StPath { s: usize, t: usize },
    SpanningTree,
    SteinerTree { terminals: Vec<usize> },
    /// F is the set of assignment edges client–site, at most `p` sites used.
    PMedian { clients: Vec<usize>, sites: Vec<usize>, p: usize },
    /// Perfect matchings between `left` and `right`.
    Assignment { left: Vec<usize>, right: Vec<usize> },
    ExplicitList(Vec<EdgeSubset>),
}

impl FamilyDescriptor {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyDescriptor::StPath { .. } => "stpath",
            FamilyDescriptor::SpanningTree => "spanning",
            FamilyDescriptor::SteinerTree { .. } => "steiner",
            FamilyDescriptor::PMedian { .. } => "pmedian",
            FamilyDescriptor::Assignment { .. } => "assignment",
            FamilyDescriptor::ExplicitList(_) => "explicit",
        }
    }

    pub fn validate(&self, graph: &Graph) -> Result<()> {
        let n = graph.n();
        let in_range = |vs: &[usize], what: &str| -> Result<()> {
            if let Some(v) = vs.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidInstance(format!("{what} vertex {v} out of range")));
            }
            let mut s = vs.to_vec();
            s.sort_unstable();
            s.dedup();
            if s.len() != vs.len() {
                return Err(Error::InvalidInstance(format!("{what} list has duplicates")));
            }
            Ok(())
        };
        match self {
            FamilyDescriptor::StPath { s, t } => {
                in_range(&[*s, *t], "path endpoint")?;
            }
            FamilyDescriptor::SpanningTree => {}
            FamilyDescriptor::SteinerTree { terminals } => {
                if terminals.is_empty() {
                    return Err(Error::InvalidInstance("no terminals".into()));
                }
                in_range(terminals, "terminal")?;
            }
            FamilyDescriptor::PMedian { clients, sites, p } => {
                in_range(clients, "client")?;
                in_range(sites, "site")?;
                if *p == 0 || *p > sites.len() {
                    return Err(Error::InvalidInstance(format!("p = {p} with {} sites", sites.len())));
                }
                if clients.iter().any(|c| sites.contains(c)) {
                    return Err(Error::InvalidInstance("clients and sites overlap".into()));
                }
            }
            FamilyDescriptor::Assignment { left, right } => {
                if left.len() != right.len() {
                    return Err(Error::InvalidInstance("assignment sides differ in size".into()));
                }
                let both: Vec<usize> = left.iter().chain(right).copied().collect();
                in_range(&both, "assignment")?;
            }
            FamilyDescriptor::ExplicitList(list) => {
                if list.is_empty() {
                    return Err(Error::InvalidInstance("empty explicit family".into()));
                }
                for f in list {
                    if let Some(e) = f.edges().iter().find(|&&e| e >= graph.m()) {
                        return Err(Error::InvalidInstance(format!("edge id {e} out of range")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// One location index per vertex (index into that vertex's list).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scenario(pub Vec<usize>);

#[derive(Debug, Clone)]
pub struct LocUncInstance {
    graph: Graph,
    space: MetricSpace,
    usets: Vec<Vec<PointId>>,
    family: FamilyDescriptor,
    dmax: OnceLock<Vec<f64>>,
}

impl PartialEq for LocUncInstance {
    fn eq(&self, o: &Self) -> bool {
        self.graph == o.graph && self.space == o.space && self.usets == o.usets && self.family == o.family
    }
}

impl LocUncInstance {
    pub fn new(
        graph: Graph,
        space: MetricSpace,
        usets: Vec<Vec<PointId>>,
        family: FamilyDescriptor,
    ) -> Result<Self> {
        if usets.len() != graph.n() {
            return Err(Error::InvalidInstance(format!(
                "{} uncertainty sets for {} vertices",
                usets.len(),
                graph.n()
            )));
        }
        for (i, u) in usets.iter().enumerate() {
            if u.is_empty() {
                return Err(Error::InvalidInstance(format!("U_{i} is empty")));
            }
            if let Some(p) = u.iter().find(|p| p.0 >= space.len()) {
                return Err(Error::InvalidPoint { id: p.0, len: space.len() });
            }
        }
        family.validate(&graph)?;
        Ok(LocUncInstance { graph, space, usets, family, dmax: OnceLock::new() })
    }

    pub fn with_family(&self, family: FamilyDescriptor) -> Result<Self> {
        Self::new(self.graph.clone(), self.space.clone(), self.usets.clone(), family)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn space(&self) -> &MetricSpace {
        &self.space
    }

    pub fn usets(&self) -> &[Vec<PointId>] {
        &self.usets
    }

    pub fn uset(&self, i: usize) -> &[PointId] {
        &self.usets[i]
    }

    pub fn family(&self) -> &FamilyDescriptor {
        &self.family
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// σ = max_i |U_i|.
    pub fn sigma(&self) -> usize {
        self.usets.iter().map(|u| u.len()).max().unwrap_or(0)
    }

    /// |U| as a float (may be astronomically large).
    pub fn scenario_count(&self) -> f64 {
        self.usets.iter().map(|u| u.len() as f64).product()
    }

    pub fn loc(&self, s: &Scenario, i: usize) -> PointId {
        self.usets[i][s.0[i]]
    }

    pub fn validate_scenario(&self, s: &Scenario) -> Result<()> {
        if s.0.len() != self.n() || s.0.iter().zip(&self.usets).any(|(&k, u)| k >= u.len()) {
            return Err(Error::InvalidInstance("scenario out of bounds".into()));
        }
        Ok(())
    }

    /// c(u, F).
    pub fn cost(&self, s: &Scenario, f: &EdgeSubset) -> f64 {
        f.edges()
            .iter()
            .map(|&e| {
                let (i, j) = self.graph.edge(e);
                self.space.d(self.loc(s, i), self.loc(s, j))
            })
            .sum()
    }

    pub fn scenario_weights(&self, s: &Scenario) -> Vec<f64> {
        (0..self.graph.m()).map(|e| self.cost(s, &EdgeSubset(vec![e]))).collect()
    }

    fn dmax_table(&self) -> &[f64] {
        self.dmax.get_or_init(|| {
            let n = self.n();
            let mut t = vec![0.0; n * n];
            for i in 0..n {
                for j in i..n {
                    let mut best: f64 = 0.0;
                    for &a in &self.usets[i] {
                        for &b in &self.usets[j] {
                            best = best.max(self.space.d(a, b));
                        }
                    }
                    t[i * n + j] = best;
                    t[j * n + i] = best;
                }
            }
            t
        })
    }

    /// max over U_i × U_j. For i = j this is diam(U_i).
    pub fn dmax(&self, i: usize, j: usize) -> f64 {
        self.dmax_table()[i * self.n() + j]
    }

    pub fn dmax_weights(&self) -> Vec<f64> {
        self.graph.edges().iter().map(|&(i, j)| self.dmax(i, j)).collect()
    }

    /// c^max(F).
    pub fn cmax(&self, f: &EdgeSubset) -> f64 {
        f.edges()
            .iter()
            .map(|&e| {
                let (i, j) = self.graph.edge(e);
                self.dmax(i, j)
            })
            .sum()
    }

    /// Metric on the sets themselves with d'(U_i, U_j) = dmax(i, j).
    pub fn worst_case_metric(&self) -> Result<MetricSpace> {
        let n = self.n();
        let m = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0.0 } else { self.dmax(i, j) }).collect())
            .collect();
        MetricSpace::explicit(m)
    }

    /// argmin_{u ∈ U_i} Σ_{v ∈ U_i} d(u, v), smallest point id on ties.
    pub fn barycenter(&self, i: usize) -> PointId {
        self.barycenter_index(i).1
    }

    fn barycenter_index(&self, i: usize) -> (usize, PointId) {
        let u = &self.usets[i];
        let mut best: Option<(f64, PointId, usize)> = None;
        for (k, &a) in u.iter().enumerate() {
            let s: f64 = u.iter().map(|&b| self.space.d(a, b)).sum();
            let better = match best {
                None => true,
                Some((bs, bp, _)) => s < bs - crate::metric::TOL || (s <= bs + crate::metric::TOL && a < bp),
            };
            if better {
                best = Some((s, a, k));
            }
        }
        let (_, p, k) = best.expect("nonempty set");
        (k, p)
    }

    pub fn barycenter_scenario(&self) -> Scenario {
        Scenario((0..self.n()).map(|i| self.barycenter_index(i).0).collect())
    }

    /// diam(U_i) with a lowest-index attaining pair.
    pub fn uset_diameter(&self, i: usize) -> (f64, (PointId, PointId)) {
        let u = &self.usets[i];
        let mut best = (0.0, (u[0], u[0]));
        for a in 0..u.len() {
            for b in (a + 1)..u.len() {
                let v = self.space.d(u[a], u[b]);
                if v > best.0 {
                    best = (v, (u[a], u[b]));
                }
            }
        }
        best
    }

    /// Every point used by some uncertainty set, sorted and deduplicated.
    pub fn points_used(&self) -> Vec<PointId> {
        let mut p: Vec<PointId> = self.usets.iter().flatten().copied().collect();
        p.sort_unstable();
        p.dedup();
        p
    }

    /// Ptolemy's inequality over the union of all uncertainty sets.
    /// Euclidean spaces satisfy it without checking.
    pub fn is_ptolemaic(&self) -> bool {
        self.space.is_euclidean() || is_ptolemaic(&self.space, &self.points_used())
    }
}
