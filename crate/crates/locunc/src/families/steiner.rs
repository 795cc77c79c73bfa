//! Dreyfus–Wagner dynamic program for minimum Steiner trees.

use super::kruskal_subgraph;
use crate::error::{Error, Result};
use crate::instance::{EdgeSubset, Graph};

struct Apsp {
    n: usize,
    d: Vec<f64>,
    next: Vec<usize>,
}

impl Apsp {
    fn new(graph: &Graph, w: &[f64]) -> Self {
        let n = graph.n();
        let mut d = vec![f64::INFINITY; n * n];
        let mut next = vec![usize::MAX; n * n];
        for v in 0..n {
            d[v * n + v] = 0.0;
            next[v * n + v] = v;
        }
        for (e, &(a, b)) in graph.edges().iter().enumerate() {
            if w[e] < d[a * n + b] {
                d[a * n + b] = w[e];
                d[b * n + a] = w[e];
                next[a * n + b] = b;
                next[b * n + a] = a;
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let v = d[i * n + k] + d[k * n + j];
                    if v < d[i * n + j] {
                        d[i * n + j] = v;
                        next[i * n + j] = next[i * n + k];
                    }
                }
            }
        }
        Apsp { n, d, next }
    }

    fn dist(&self, a: usize, b: usize) -> f64 {
        self.d[a * self.n + b]
    }

    fn path_edges(&self, graph: &Graph, mut a: usize, b: usize, out: &mut Vec<usize>) {
        while a != b {
            let nx = self.next[a * self.n + b];
            out.push(graph.edge_index(a, nx).expect("shortest-path hop is an edge"));
            a = nx;
        }
    }
}

pub(super) fn dreyfus_wagner(graph: &Graph, w: &[f64], terminals: &[usize]) -> Result<EdgeSubset> {
    let k = terminals.len();
    if k <= 1 {
        return Ok(EdgeSubset::default());
    }
    let n = graph.n();
    let sp = Apsp::new(graph, w);
    let root = terminals[0];
    let rest = &terminals[1..];
    if rest.iter().any(|&t| sp.dist(root, t).is_infinite()) {
        return Err(Error::Infeasible("terminals are not connected".into()));
    }
    let full = (1usize << rest.len()) - 1;
    let mut dp = vec![f64::INFINITY; (full + 1) * n];
    // hub[mask*n+v]: vertex where the tree for mask branches before reaching v
    let mut hub = vec![usize::MAX; (full + 1) * n];
    // split[mask*n+u]: submask used at branch vertex u
    let mut split = vec![0usize; (full + 1) * n];
    for (i, &t) in rest.iter().enumerate() {
        for v in 0..n {
            dp[(1 << i) * n + v] = sp.dist(t, v);
        }
    }
    let mut tmp = vec![f64::INFINITY; n];
    for mask in 1..=full {
        if mask.count_ones() < 2 {
            continue;
        }
        let low = mask & mask.wrapping_neg();
        for u in 0..n {
            tmp[u] = f64::INFINITY;
            let mut sub = (mask - 1) & mask;
            while sub > 0 {
                if sub & low != 0 {
                    let v = dp[sub * n + u] + dp[(mask ^ sub) * n + u];
                    if v < tmp[u] {
                        tmp[u] = v;
                        split[mask * n + u] = sub;
                    }
                }
                sub = (sub - 1) & mask;
            }
        }
        for v in 0..n {
            let mut best = f64::INFINITY;
            let mut arg = usize::MAX;
            for u in 0..n {
                let c = tmp[u] + sp.dist(u, v);
                if c < best {
                    best = c;
                    arg = u;
                }
            }
            dp[mask * n + v] = best;
            hub[mask * n + v] = arg;
        }
    }
    let mut edges = Vec::new();
    let mut stack = vec![(full, root)];
    while let Some((mask, v)) = stack.pop() {
        if mask.count_ones() == 1 {
            let t = rest[mask.trailing_zeros() as usize];
            sp.path_edges(graph, t, v, &mut edges);
            continue;
        }
        let u = hub[mask * n + v];
        sp.path_edges(graph, u, v, &mut edges);
        let sub = split[mask * n + u];
        stack.push((sub, u));
        stack.push((mask ^ sub, u));
    }
    // the reconstructed union can contain cycles when paths share vertices;
    // a spanning forest of it followed by leaf pruning is never heavier
    let tree = kruskal_subgraph(graph, w, edges);
    Ok(prune_leaves(graph, tree, terminals))
}

/// Repeatedly drop non-terminal leaves.
pub(crate) fn prune_leaves(graph: &Graph, f: EdgeSubset, terminals: &[usize]) -> EdgeSubset {
    let mut keep: Vec<usize> = f.edges().to_vec();
    loop {
        let mut deg = std::collections::HashMap::new();
        for &e in &keep {
            let (a, b) = graph.edge(e);
            *deg.entry(a).or_insert(0usize) += 1;
            *deg.entry(b).or_insert(0usize) += 1;
        }
        let before = keep.len();
        keep.retain(|&e| {
            let (a, b) = graph.edge(e);
            !((deg[&a] == 1 && !terminals.contains(&a)) || (deg[&b] == 1 && !terminals.contains(&b)))
        });
        if keep.len() == before {
            break;
        }
    }
    EdgeSubset::new(keep)
}
