//! Deterministic solvers min_{F ∈ 𝓕} Σ_{e∈F} w_e for every supported family,
//! exhaustive family enumeration, and structural classification of edge sets.

mod enumerate;
mod hungarian;
mod steiner;

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::caps::Caps;
use crate::error::{cap, Error, Result};
use crate::instance::{EdgeSubset, FamilyDescriptor, Graph};
use crate::metric::TOL;

pub use enumerate::{enumerate_family, subtrees_bitmask};

/// Per-edge nonnegative weights, indexed by edge id.
pub type EdgeWeights = [f64];

pub fn weight_of(f: &EdgeSubset, w: &EdgeWeights) -> f64 {
    f.edges().iter().map(|&e| w[e]).sum()
}

/// Exact minimum-weight member of the family.
pub fn solve_deterministic(
    family: &FamilyDescriptor,
    graph: &Graph,
    w: &EdgeWeights,
    caps: &Caps,
) -> Result<EdgeSubset> {
    if w.len() != graph.m() {
        return Err(Error::InvalidInstance(format!("{} weights for {} edges", w.len(), graph.m())));
    }
    if w.iter().any(|x| !(*x >= 0.0) || !x.is_finite()) {
        return Err(Error::InvalidInstance("edge weights must be finite and nonnegative".into()));
    }
    match family {
        FamilyDescriptor::StPath { s, t } => dijkstra_path(graph, w, *s, *t),
        FamilyDescriptor::SpanningTree => kruskal(graph, w, (0..graph.m()).collect()),
        FamilyDescriptor::SteinerTree { terminals } => {
            if terminals.len() > caps.steiner_terminals {
                return Err(cap("Steiner terminals", caps.steiner_terminals as u64));
            }
            steiner::dreyfus_wagner(graph, w, terminals)
        }
        FamilyDescriptor::PMedian { clients, sites, p } => pmedian(graph, w, clients, sites, *p, caps),
        FamilyDescriptor::Assignment { left, right } => hungarian::assignment(graph, w, left, right),
        FamilyDescriptor::ExplicitList(list) => {
            let mut best: Option<(f64, &EdgeSubset)> = None;
            for f in list {
                let v = weight_of(f, w);
                if best.map_or(true, |(b, _)| v < b - TOL) {
                    best = Some((v, f));
                }
            }
            Ok(best.map(|(_, f)| f.clone()).expect("validated nonempty"))
        }
    }
}

#[derive(PartialEq)]
struct Item(f64, usize);
impl Eq for Item {}
impl PartialOrd for Item {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Item {
    fn cmp(&self, o: &Self) -> Ordering {
        o.0.total_cmp(&self.0).then(o.1.cmp(&self.1))
    }
}

fn dijkstra_path(graph: &Graph, w: &EdgeWeights, s: usize, t: usize) -> Result<EdgeSubset> {
    if s == t {
        return Ok(EdgeSubset::default());
    }
    let n = graph.n();
    let mut dist = vec![f64::INFINITY; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[s] = 0.0;
    heap.push(Item(0.0, s));
    while let Some(Item(d, v)) = heap.pop() {
        if done[v] {
            continue;
        }
        done[v] = true;
        for &(x, e) in graph.neighbors(v) {
            let nd = d + w[e];
            if nd < dist[x] {
                dist[x] = nd;
                pred[x] = Some(e);
                heap.push(Item(nd, x));
            }
        }
    }
    if !done[t] {
        return Err(Error::Infeasible(format!("{t} unreachable from {s}")));
    }
    let mut edges = Vec::new();
    let mut v = t;
    while v != s {
        let e = pred[v].expect("reached vertex has a predecessor");
        edges.push(e);
        let (a, b) = graph.edge(e);
        v = if a == v { b } else { a };
    }
    Ok(EdgeSubset::new(edges))
}

pub(crate) struct Dsu(Vec<usize>);

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

fn spanning_forest(graph: &Graph, w: &EdgeWeights, mut cand: Vec<usize>) -> Vec<usize> {
    cand.sort_by(|&a, &b| w[a].total_cmp(&w[b]).then(a.cmp(&b)));
    cand.dedup();
    let mut dsu = Dsu::new(graph.n());
    cand.into_iter()
        .filter(|&e| {
            let (a, b) = graph.edge(e);
            dsu.union(a, b)
        })
        .collect()
}

pub(crate) fn kruskal_subgraph(graph: &Graph, w: &EdgeWeights, cand: Vec<usize>) -> EdgeSubset {
    EdgeSubset::new(spanning_forest(graph, w, cand))
}

/// Kruskal over the candidate edges; fails unless they span every vertex.
fn kruskal(graph: &Graph, w: &EdgeWeights, cand: Vec<usize>) -> Result<EdgeSubset> {
    let out = spanning_forest(graph, w, cand);
    if out.len() + 1 != graph.n() {
        return Err(Error::Infeasible("graph is not connected".into()));
    }
    Ok(EdgeSubset::new(out))
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
        if r > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    r as u64
}

/// Next k-combination of 0..n in lexicographic order.
pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in (i + 1)..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn pmedian(
    graph: &Graph,
    w: &EdgeWeights,
    clients: &[usize],
    sites: &[usize],
    p: usize,
    caps: &Caps,
) -> Result<EdgeSubset> {
    if binomial(sites.len() as u64, p as u64) > caps.pmedian_subsets {
        return Err(cap("p-median site subsets", caps.pmedian_subsets));
    }
    // link[c][s] = edge id client c – site s
    let link: Vec<Vec<Option<usize>>> =
        clients.iter().map(|&c| sites.iter().map(|&s| graph.edge_index(c, s)).collect()).collect();
    let mut comb: Vec<usize> = (0..p).collect();
    let mut best: Option<(f64, Vec<usize>)> = None;
    loop {
        let mut total = 0.0;
        let mut chosen = Vec::with_capacity(clients.len());
        let mut ok = true;
        for row in &link {
            let mut b: Option<(f64, usize)> = None;
            for &k in &comb {
                if let Some(e) = row[k] {
                    if b.map_or(true, |(bw, _)| w[e] < bw) {
                        b = Some((w[e], e));
                    }
                }
            }
            match b {
                Some((bw, e)) => {
                    total += bw;
                    chosen.push(e);
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && best.as_ref().map_or(true, |(bt, _)| total < bt - TOL) {
            best = Some((total, chosen));
        }
        if !next_combination(&mut comb, sites.len()) {
            break;
        }
    }
    best.map(|(_, e)| EdgeSubset::new(e))
        .ok_or_else(|| Error::Infeasible("no site subset serves every client".into()))
}

/// Structural classification of the subgraph spanned by an edge subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyStats {
    pub max_degree: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub components: usize,
    pub is_path: bool,
    pub is_cycle: bool,
    pub is_tree: bool,
    pub is_forest: bool,
    pub is_star: bool,
    pub is_star_forest: bool,
    pub is_clique: bool,
    pub is_matching: bool,
}

pub fn family_stats(graph: &Graph, f: &EdgeSubset) -> FamilyStats {
    let verts = f.vertices(graph);
    let v = verts.len();
    let e = f.len();
    let idx = |x: usize| verts.binary_search(&x).expect("touched vertex");
    let mut deg = vec![0usize; v];
    let mut dsu = Dsu::new(v);
    for &id in f.edges() {
        let (a, b) = graph.edge(id);
        let (a, b) = (idx(a), idx(b));
        deg[a] += 1;
        deg[b] += 1;
        dsu.union(a, b);
    }
    let comp_of: Vec<usize> = (0..v).map(|x| dsu.find(x)).collect();
    let mut roots = comp_of.clone();
    roots.sort_unstable();
    roots.dedup();
    let components = roots.len();
    let max_degree = deg.iter().copied().max().unwrap_or(0);
    let connected = components == 1;
    let is_forest = e + components == v;
    let is_tree = connected && is_forest;
    let is_star = is_tree && max_degree + 1 == v;
    // every component of a star forest has a vertex adjacent to all its edges
    let is_star_forest = is_forest
        && roots.iter().all(|&r| {
            let members: Vec<usize> = (0..v).filter(|&x| comp_of[x] == r).collect();
            let md = members.iter().map(|&x| deg[x]).max().unwrap_or(0);
            md + 1 == members.len()
        });
    FamilyStats {
        max_degree,
        vertex_count: v,
        edge_count: e,
        components,
        is_path: is_tree && max_degree <= 2,
        is_cycle: connected && v >= 3 && e == v && deg.iter().all(|&d| d == 2),
        is_tree,
        is_forest,
        is_star,
        is_star_forest,
        is_clique: v >= 2 && e == v * (v - 1) / 2,
        is_matching: max_degree <= 1,
    }
}
