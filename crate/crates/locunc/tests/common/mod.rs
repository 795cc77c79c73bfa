//! Random instances and brute-force oracles shared by the integration tests.
//! The oracles deliberately avoid the library's own enumerators and DPs.
#![allow(dead_code)]

use locunc::generators::rng_for;
use locunc::metric::all_pairs_shortest_paths;
use locunc::{EdgeSubset, FamilyDescriptor, Graph, LocUncInstance, MetricSpace, PointId, Scenario};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rng_for(seed, 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MetricVariant {
    Euclidean,
    Explicit,
    GraphInduced,
}

pub const VARIANTS: [MetricVariant; 3] = [MetricVariant::Euclidean, MetricVariant::Explicit, MetricVariant::GraphInduced];

/// Random recursive tree plus each further pair with probability p.
pub fn random_connected_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    for a in 0..n {
        for b in (a + 1)..n {
            if !edges.contains(&(a, b)) && rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    edges.shuffle(rng);
    Graph::new(n, edges).expect("valid random graph")
}

pub fn random_tree(rng: &mut impl Rng, n: usize) -> Graph {
    random_connected_graph(rng, n, 0.0)
}

/// `points` points of the requested kind. Explicit matrices are the
/// shortest-path closure of random weights on the complete graph (so they
/// are metric but generally far from Euclidean).
pub fn random_space(rng: &mut impl Rng, variant: MetricVariant, points: usize) -> MetricSpace {
    match variant {
        MetricVariant::Euclidean => {
            let dim = rng.gen_range(1..=3);
            let coords = (0..points).map(|_| (0..dim).map(|_| rng.gen_range(0..=20) as f64 * 0.5).collect()).collect();
            MetricSpace::euclidean(coords).unwrap()
        }
        MetricVariant::Explicit => {
            let mut w = Vec::new();
            for a in 0..points {
                for b in (a + 1)..points {
                    w.push((a, b, rng.gen_range(1..=10) as f64));
                }
            }
            let m = all_pairs_shortest_paths(points, &w).unwrap();
            MetricSpace::explicit(m).unwrap()
        }
        MetricVariant::GraphInduced => {
            let g = random_connected_graph(rng, points.max(2), 0.3);
            let w = g.edges().iter().map(|&(a, b)| (a, b, rng.gen_range(1..=10) as f64)).collect();
            MetricSpace::graph_induced(points.max(2), w).unwrap()
        }
    }
}

/// Each vertex gets between 1 and σ distinct random points.
pub fn random_usets(rng: &mut impl Rng, n: usize, points: usize, sigma: usize) -> Vec<Vec<PointId>> {
    let all: Vec<usize> = (0..points).collect();
    (0..n)
        .map(|_| {
            let k = rng.gen_range(1..=sigma.min(points));
            all.choose_multiple(rng, k).map(|&p| PointId(p)).collect()
        })
        .collect()
}

pub fn random_instance(
    rng: &mut impl Rng,
    graph: Graph,
    variant: MetricVariant,
    sigma: usize,
    family: FamilyDescriptor,
) -> LocUncInstance {
    let points = rng.gen_range(3..=8);
    let space = random_space(rng, variant, points);
    let usets = random_usets(rng, graph.n(), space.len(), sigma);
    LocUncInstance::new(graph, space, usets, family).unwrap()
}

/// Odometer over all scenarios.
pub fn for_each_scenario(inst: &LocUncInstance, mut visit: impl FnMut(&Scenario)) {
    let sizes: Vec<usize> = inst.usets().iter().map(Vec::len).collect();
    let mut s = Scenario(vec![0; sizes.len()]);
    loop {
        visit(&s);
        let mut i = 0;
        while i < sizes.len() {
            s.0[i] += 1;
            if s.0[i] < sizes[i] {
                break;
            }
            s.0[i] = 0;
            i += 1;
        }
        if i == sizes.len() {
            return;
        }
    }
}

/// max over all scenarios of Σ_{ij ∈ F} d(u_i, u_j), summed independently.
pub fn brute_c(inst: &LocUncInstance, f: &EdgeSubset) -> f64 {
    let g = inst.graph();
    let mut best: f64 = 0.0;
    for_each_scenario(inst, |s| {
        let mut total = 0.0;
        for &e in f.edges() {
            let (a, b) = g.edge(e);
            total += inst.space().d(inst.uset(a)[s.0[a]], inst.uset(b)[s.0[b]]);
        }
        best = best.max(total);
    });
    best
}

/// All simple s–t paths as edge sets.
pub fn all_st_paths(g: &Graph, s: usize, t: usize) -> Vec<EdgeSubset> {
    fn go(g: &Graph, v: usize, t: usize, seen: &mut Vec<bool>, path: &mut Vec<usize>, out: &mut Vec<EdgeSubset>) {
        if v == t {
            out.push(EdgeSubset::new(path.clone()));
            return;
        }
        for &(w, e) in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                path.push(e);
                go(g, w, t, seen, path, out);
                path.pop();
                seen[w] = false;
            }
        }
    }
    let mut seen = vec![false; g.n()];
    seen[s] = true;
    let mut out = Vec::new();
    go(g, s, t, &mut seen, &mut Vec::new(), &mut out);
    out
}

fn find(p: &mut [usize], x: usize) -> usize {
    if p[x] != x {
        let r = find(p, p[x]);
        p[x] = r;
    }
    p[x]
}

/// Vertices of the edge set if it is a tree, None otherwise.
fn is_tree_on(g: &Graph, edges: &[usize]) -> Option<Vec<usize>> {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    let mut verts = Vec::new();
    for &e in edges {
        let (a, b) = g.edge(e);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return None;
        }
        parent[ra] = rb;
        verts.extend([a, b]);
    }
    verts.sort_unstable();
    verts.dedup();
    if let Some(&v0) = verts.first() {
        let r = find(&mut parent, v0);
        if verts.iter().any(|&v| find(&mut parent, v) != r) {
            return None;
        }
    }
    Some(verts)
}

fn subsets(m: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..1 << m).map(move |mask| (0..m).filter(|&e| mask >> e & 1 == 1).collect())
}

pub fn all_spanning_trees(g: &Graph) -> Vec<EdgeSubset> {
    subsets(g.m())
        .filter(|es| es.len() + 1 == g.n())
        .filter(|es| is_tree_on(g, es).is_some_and(|v| v.len() == g.n()))
        .map(EdgeSubset::new)
        .collect()
}

/// Every tree containing all terminals (not only the minimal ones; extra
/// branches never reduce a worst-case cost, so the minimum is the same).
pub fn all_steiner_supertrees(g: &Graph, terminals: &[usize]) -> Vec<EdgeSubset> {
    subsets(g.m())
        .filter(|es| !es.is_empty())
        .filter(|es| is_tree_on(g, es).is_some_and(|v| terminals.iter().all(|t| v.contains(t))))
        .map(EdgeSubset::new)
        .collect()
}

/// Every assignment of clients to sites using at most p distinct sites.
pub fn all_pmedian(g: &Graph, clients: &[usize], sites: &[usize], p: usize) -> Vec<EdgeSubset> {
    let mut out = Vec::new();
    let total = sites.len().pow(clients.len() as u32);
    for code in 0..total {
        let mut c = code;
        let mut used = Vec::new();
        let mut es = Vec::new();
        for &cl in clients {
            let j = sites[c % sites.len()];
            c /= sites.len();
            if !used.contains(&j) {
                used.push(j);
            }
            es.push(g.edge_index(cl, j).expect("bipartite edge"));
        }
        if used.len() <= p {
            out.push(EdgeSubset::new(es));
        }
    }
    out
}

pub fn brute_min(inst: &LocUncInstance, family: &[EdgeSubset]) -> f64 {
    family.iter().map(|f| brute_c(inst, f)).fold(f64::INFINITY, f64::min)
}

/// Maximum cut by enumeration of all 2^(n−1) bipartitions.
pub fn brute_maxcut(g: &Graph) -> usize {
    (0u64..1 << (g.n() - 1))
        .map(|mask| g.edges().iter().filter(|&&(a, b)| (mask >> a & 1) != (mask >> b & 1)).count())
        .max()
        .unwrap_or(0)
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

pub const SHAPES: [&str; 7] = ["matching", "path", "cycle", "star", "tree", "clique", "general"];

/// Graph of the named shape on n vertices (n rounded down to even for a
/// matching), randomly relabelled.
pub fn shaped_graph(rng: &mut impl Rng, shape: &str, n: usize) -> Graph {
    let n = if shape == "matching" { n - n % 2 } else { n };
    let edges: Vec<(usize, usize)> = match shape {
        "matching" => (0..n / 2).map(|i| (2 * i, 2 * i + 1)).collect(),
        "path" => (1..n).map(|i| (i - 1, i)).collect(),
        "cycle" => (0..n).map(|i| (i, (i + 1) % n)).collect(),
        "star" => (1..n).map(|i| (0, i)).collect(),
        "tree" => return random_tree(rng, n),
        "clique" => (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect(),
        _ => return random_connected_graph(rng, n, 0.4),
    };
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    Graph::new(n, edges.into_iter().map(|(a, b)| (label[a], label[b])).collect()).unwrap()
}
