//! Exhaustive enumeration of feasible edge subsets. Output is sorted
//! lexicographically (as sorted edge-id lists) and duplicate-free.

use super::Dsu;
use crate::caps::Caps;
use crate::error::{cap, Error, Result};
use crate::instance::{EdgeSubset, FamilyDescriptor, Graph};

struct Sink<'a> {
    out: Vec<EdgeSubset>,
    limit: u64,
    caps: &'a Caps,
}

impl Sink<'_> {
    fn push(&mut self, edges: &[usize]) -> Result<()> {
        if self.out.len() as u64 >= self.limit {
            return Err(cap("family size", self.caps.family_size));
        }
        self.out.push(EdgeSubset::new(edges.to_vec()));
        Ok(())
    }
}

pub fn enumerate_family(family: &FamilyDescriptor, graph: &Graph, caps: &Caps) -> Result<Vec<EdgeSubset>> {
    let mut sink = Sink { out: Vec::new(), limit: caps.family_size, caps };
    match family {
        FamilyDescriptor::StPath { s, t } => {
            if s == t {
                sink.push(&[])?;
            } else {
                let mut seen = vec![false; graph.n()];
                seen[*s] = true;
                paths(graph, *s, *t, &mut seen, &mut Vec::new(), &mut sink)?;
            }
        }
        FamilyDescriptor::SpanningTree => {
            let labels: Vec<usize> = (0..graph.n()).collect();
            spanning(graph, 0, &mut Vec::new(), labels, &mut sink)?;
        }
        FamilyDescriptor::SteinerTree { terminals } => steiner(graph, terminals, caps, &mut sink)?,
        FamilyDescriptor::PMedian { clients, sites, p } => {
            if sites.len() > caps.pmedian_sites {
                return Err(cap("p-median sites", caps.pmedian_sites as u64));
            }
            let mut used = vec![0usize; sites.len()];
            pmedian(graph, clients, sites, *p, 0, &mut used, &mut Vec::new(), &mut sink)?;
        }
        FamilyDescriptor::Assignment { left, right } => {
            let mut used = vec![false; right.len()];
            matchings(graph, left, right, 0, &mut used, &mut Vec::new(), &mut sink)?;
        }
        FamilyDescriptor::ExplicitList(list) => {
            for f in list {
                sink.push(f.edges())?;
            }
        }
    }
    let mut out = sink.out;
    out.sort();
    out.dedup();
    if out.is_empty() {
        return Err(Error::Infeasible(format!("{} family is empty", family.name())));
    }
    Ok(out)
}

fn paths(
    g: &Graph,
    v: usize,
    t: usize,
    seen: &mut [bool],
    cur: &mut Vec<usize>,
    sink: &mut Sink,
) -> Result<()> {
    for &(w, e) in g.neighbors(v) {
        if seen[w] {
            continue;
        }
        cur.push(e);
        if w == t {
            sink.push(cur)?;
        } else {
            seen[w] = true;
            paths(g, w, t, seen, cur, sink)?;
            seen[w] = false;
        }
        cur.pop();
    }
    Ok(())
}

fn relabel(labels: &mut [usize], from: usize, to: usize) {
    for l in labels.iter_mut() {
        if *l == from {
            *l = to;
        }
    }
}

fn spanning(g: &Graph, k: usize, cur: &mut Vec<usize>, labels: Vec<usize>, sink: &mut Sink) -> Result<()> {
    let n = g.n();
    if cur.len() + 1 == n || n == 0 {
        return sink.push(cur);
    }
    if g.m() - k < n - 1 - cur.len() {
        return Ok(());
    }
    let (a, b) = g.edge(k);
    if labels[a] != labels[b] {
        let mut l2 = labels.clone();
        relabel(&mut l2, labels[b], labels[a]);
        cur.push(k);
        spanning(g, k + 1, cur, l2, sink)?;
        cur.pop();
    }
    // excluding edge k must leave the graph connectable
    let mut dsu = Dsu::new(n);
    for v in 0..n {
        dsu.union(v, labels[v]);
    }
    for e in (k + 1)..g.m() {
        let (x, y) = g.edge(e);
        dsu.union(x, y);
    }
    let r = dsu.find(0);
    if (1..n).all(|v| dsu.find(v) == r) {
        spanning(g, k + 1, cur, labels, sink)?;
    }
    Ok(())
}

struct Grow<'a> {
    g: &'a Graph,
    in_tree: Vec<bool>,
    tree: Vec<usize>,
    visits: u64,
    max_visits: u64,
    terminals: &'a [usize],
}

impl Grow<'_> {
    fn accept(&self) -> bool {
        if !self.terminals.iter().all(|&t| self.in_tree[t]) {
            return false;
        }
        let mut deg = vec![0u32; self.g.n()];
        for &e in &self.tree {
            let (a, b) = self.g.edge(e);
            deg[a] += 1;
            deg[b] += 1;
        }
        (0..self.g.n()).all(|v| deg[v] != 1 || self.terminals.contains(&v))
    }

    fn run(&mut self, frontier: Vec<usize>, sink: &mut Sink) -> Result<()> {
        self.visits += 1;
        if self.visits > self.max_visits {
            return Err(cap("subtree search nodes", self.max_visits));
        }
        if self.accept() {
            sink.push(&self.tree)?;
        }
        for idx in 0..frontier.len() {
            let e = frontier[idx];
            let (a, b) = self.g.edge(e);
            let v = if self.in_tree[a] { b } else { a };
            self.in_tree[v] = true;
            self.tree.push(e);
            let mut next: Vec<usize> =
                frontier[idx + 1..].iter().copied().filter(|&f| {
                    let (x, y) = self.g.edge(f);
                    !(self.in_tree[x] && self.in_tree[y])
                }).collect();
            for &(w, f) in self.g.neighbors(v) {
                if !self.in_tree[w] {
                    next.push(f);
                }
            }
            self.run(next, sink)?;
            self.tree.pop();
            self.in_tree[v] = false;
        }
        Ok(())
    }
}

/// Trees containing every terminal whose leaves are all terminals.
fn steiner(g: &Graph, terminals: &[usize], caps: &Caps, sink: &mut Sink) -> Result<()> {
    if terminals.len() <= 1 {
        return sink.push(&[]);
    }
    let root = terminals[0];
    let mut grow = Grow {
        g,
        in_tree: vec![false; g.n()],
        tree: Vec::new(),
        visits: 0,
        max_visits: caps.family_size.saturating_mul(16),
        terminals,
    };
    grow.in_tree[root] = true;
    let frontier = g.neighbors(root).iter().map(|&(_, e)| e).collect();
    grow.run(frontier, sink)
}

#[allow(clippy::too_many_arguments)]
fn pmedian(
    g: &Graph,
    clients: &[usize],
    sites: &[usize],
    p: usize,
    k: usize,
    used: &mut [usize],
    cur: &mut Vec<usize>,
    sink: &mut Sink,
) -> Result<()> {
    if k == clients.len() {
        return sink.push(cur);
    }
    let open = used.iter().filter(|&&c| c > 0).count();
    for (j, &s) in sites.iter().enumerate() {
        if used[j] == 0 && open == p {
            continue;
        }
        if let Some(e) = g.edge_index(clients[k], s) {
            used[j] += 1;
            cur.push(e);
            pmedian(g, clients, sites, p, k + 1, used, cur, sink)?;
            cur.pop();
            used[j] -= 1;
        }
    }
    Ok(())
}

fn matchings(
    g: &Graph,
    left: &[usize],
    right: &[usize],
    k: usize,
    used: &mut [bool],
    cur: &mut Vec<usize>,
    sink: &mut Sink,
) -> Result<()> {
    if k == left.len() {
        return sink.push(cur);
    }
    for (j, &r) in right.iter().enumerate() {
        if used[j] {
            continue;
        }
        if let Some(e) = g.edge_index(left[k], r) {
            used[j] = true;
            cur.push(e);
            matchings(g, left, right, k + 1, used, cur, sink)?;
            cur.pop();
            used[j] = false;
        }
    }
    Ok(())
}

/// Independent oracle: scan all 2^m edge subsets and keep the trees that
/// contain every terminal and have only terminal leaves.
pub fn subtrees_bitmask(g: &Graph, terminals: &[usize], caps: &Caps) -> Result<Vec<EdgeSubset>> {
    let m = g.m();
    if m > caps.subset_edges {
        return Err(cap("edges for subset enumeration", caps.subset_edges as u64));
    }
    let mut out = Vec::new();
    if terminals.len() <= 1 {
        out.push(EdgeSubset::default());
        return Ok(out);
    }
    for mask in 1u64..(1u64 << m) {
        let edges: Vec<usize> = (0..m).filter(|&e| mask >> e & 1 == 1).collect();
        let mut deg = vec![0usize; g.n()];
        let mut dsu = Dsu::new(g.n());
        let mut acyclic = true;
        for &e in &edges {
            let (a, b) = g.edge(e);
            deg[a] += 1;
            deg[b] += 1;
            acyclic &= dsu.union(a, b);
        }
        if !acyclic {
            continue;
        }
        let verts: Vec<usize> = (0..g.n()).filter(|&v| deg[v] > 0).collect();
        if verts.len() != edges.len() + 1 {
            continue;
        }
        if !terminals.iter().all(|&t| deg[t] > 0) {
            continue;
        }
        if verts.iter().any(|&v| deg[v] == 1 && !terminals.contains(&v)) {
            continue;
        }
        out.push(EdgeSubset::new(edges));
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn triangle_has_two_paths() {
        // s=0, a=1, t=2
        let g = Graph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        let f = enumerate_family(&FamilyDescriptor::StPath { s: 0, t: 2 }, &g, &Caps::default()).unwrap();
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn cayley_k4() {
        let f = enumerate_family(&FamilyDescriptor::SpanningTree, &k4(), &Caps::default()).unwrap();
        assert_eq!(f.len(), 16);
        let all = subtrees_bitmask(&k4(), &[0, 1, 2, 3], &Caps::default()).unwrap();
        assert_eq!(f, all);
    }

    #[test]
    fn steiner_matches_bitmask() {
        let g = k4();
        let caps = Caps::default();
        for terms in [vec![0, 3], vec![1, 2, 3], vec![2]] {
            let a = enumerate_family(&FamilyDescriptor::SteinerTree { terminals: terms.clone() }, &g, &caps).unwrap();
            let b = subtrees_bitmask(&g, &terms, &caps).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn perfect_matchings_of_k22() {
        let g = Graph::new(4, vec![(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let fam = FamilyDescriptor::Assignment { left: vec![0, 1], right: vec![2, 3] };
        assert_eq!(enumerate_family(&fam, &g, &Caps::default()).unwrap().len(), 2);
    }

    #[test]
    fn family_cap() {
        let caps = Caps { family_size: 5, ..Caps::default() };
        let r = enumerate_family(&FamilyDescriptor::SpanningTree, &k4(), &caps);
        assert!(matches!(r, Err(Error::CapExceeded { .. })));
    }
}
