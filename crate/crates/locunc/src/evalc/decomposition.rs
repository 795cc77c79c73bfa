//! Nice tree decompositions built from a min-degree elimination ordering.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::instance::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TreeDecomposition {
    /// Sorted vertex lists.
    pub bags: Vec<Vec<usize>>,
    pub kinds: Vec<NodeKind>,
    pub children: Vec<Vec<usize>>,
    pub root: usize,
}

impl TreeDecomposition {
    /// Largest bag size minus one (0 for an empty decomposition).
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    /// Children before parents.
    pub fn post_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![(self.root, false)];
        while let Some((v, expanded)) = stack.pop() {
            if expanded {
                out.push(v);
            } else {
                stack.push((v, true));
                for &c in self.children[v].iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        out
    }

    /// Check that this is a nice tree decomposition of the graph on
    /// `vertices` with the given edges.
    pub fn validate(&self, vertices: &[usize], edges: &[(usize, usize)]) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidDecomposition(m));
        let k = self.len();
        if k == 0 || self.root >= k || self.kinds.len() != k || self.children.len() != k {
            return bad("malformed node arrays".into());
        }
        let mut parent = vec![usize::MAX; k];
        for (v, ch) in self.children.iter().enumerate() {
            for &c in ch {
                if c >= k || parent[c] != usize::MAX || c == self.root {
                    return bad(format!("node {c} has several parents or is the root"));
                }
                parent[c] = v;
            }
        }
        if self.post_order().len() != k {
            return bad("nodes unreachable from the root".into());
        }
        if !self.bags[self.root].is_empty() {
            return bad("root bag is not empty".into());
        }
        for v in 0..k {
            let bag = &self.bags[v];
            if bag.windows(2).any(|w| w[0] >= w[1]) {
                return bad(format!("bag {v} is not sorted"));
            }
            let ch = &self.children[v];
            let ok = match self.kinds[v] {
                NodeKind::Leaf => ch.is_empty() && bag.is_empty(),
                NodeKind::Introduce(x) => {
                    ch.len() == 1 && {
                        let c = &self.bags[ch[0]];
                        !c.contains(&x) && bag.len() == c.len() + 1 && bag.iter().all(|y| *y == x || c.contains(y))
                    }
                }
                NodeKind::Forget(x) => {
                    ch.len() == 1 && {
                        let c = &self.bags[ch[0]];
                        c.contains(&x) && c.len() == bag.len() + 1 && c.iter().all(|y| *y == x || bag.contains(y))
                    }
                }
                NodeKind::Join => ch.len() == 2 && ch.iter().all(|&c| self.bags[c] == *bag),
            };
            if !ok {
                return bad(format!("node {v} violates the {:?} rule", self.kinds[v]));
            }
        }
        for &x in vertices {
            let holders: Vec<usize> = (0..k).filter(|&v| self.bags[v].binary_search(&x).is_ok()).collect();
            if holders.is_empty() {
                return bad(format!("vertex {x} is in no bag"));
            }
            let tops = holders
                .iter()
                .filter(|&&v| parent[v] == usize::MAX || self.bags[parent[v]].binary_search(&x).is_err())
                .count();
            if tops != 1 {
                return bad(format!("bags containing {x} are not connected"));
            }
        }
        for &(a, b) in edges {
            if !self.bags.iter().any(|bag| bag.binary_search(&a).is_ok() && bag.binary_search(&b).is_ok()) {
                return bad(format!("edge ({a},{b}) is in no bag"));
            }
        }
        Ok(())
    }
}

pub fn build_nice_decomposition(graph: &Graph) -> TreeDecomposition {
    let vertices: Vec<usize> = (0..graph.n()).collect();
    nice_decomposition(graph.n(), graph.edges(), &vertices)
}

struct Builder {
    td: TreeDecomposition,
}

impl Builder {
    fn add(&mut self, bag: Vec<usize>, kind: NodeKind, children: Vec<usize>) -> usize {
        self.td.bags.push(bag);
        self.td.kinds.push(kind);
        self.td.children.push(children);
        self.td.bags.len() - 1
    }

    /// Move from a node with bag `from` to one with bag `to`, forgetting then introducing.
    fn morph(&mut self, mut node: usize, to: &BTreeSet<usize>) -> usize {
        let mut cur: BTreeSet<usize> = self.td.bags[node].iter().copied().collect();
        let drop: Vec<usize> = cur.difference(to).copied().collect();
        for x in drop {
            cur.remove(&x);
            node = self.add(cur.iter().copied().collect(), NodeKind::Forget(x), vec![node]);
        }
        let intro: Vec<usize> = to.difference(&cur).copied().collect();
        for x in intro {
            cur.insert(x);
            node = self.add(cur.iter().copied().collect(), NodeKind::Introduce(x), vec![node]);
        }
        node
    }

    fn join_all(&mut self, nodes: Vec<usize>, bag: &BTreeSet<usize>) -> usize {
        let mut it = nodes.into_iter();
        let mut acc = match it.next() {
            Some(x) => x,
            None => {
                let leaf = self.add(Vec::new(), NodeKind::Leaf, vec![]);
                return self.morph(leaf, bag);
            }
        };
        for x in it {
            acc = self.add(bag.iter().copied().collect(), NodeKind::Join, vec![acc, x]);
        }
        acc
    }
}

/// Nice decomposition of the graph restricted to `vertices`. Vertices without
/// edges get their own branch.
pub(crate) fn nice_decomposition(n: usize, edges: &[(usize, usize)], vertices: &[usize]) -> TreeDecomposition {
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &(a, b) in edges {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    let mut alive = vec![false; n];
    for &v in vertices {
        alive[v] = true;
    }
    let mut pos = vec![usize::MAX; n];
    let mut bag_of: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let mut order = Vec::with_capacity(vertices.len());
    for step in 0..vertices.len() {
        let v = vertices
            .iter()
            .copied()
            .filter(|&v| alive[v])
            .min_by_key(|&v| (adj[v].len(), v))
            .expect("vertex left");
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for &a in &nb {
            adj[a].remove(&v);
            for &b in &nb {
                if a != b {
                    adj[a].insert(b);
                }
            }
        }
        let mut bag: BTreeSet<usize> = nb.iter().copied().collect();
        bag.insert(v);
        bag_of[v] = bag;
        alive[v] = false;
        pos[v] = step;
        order.push(v);
    }
    // parent in the elimination tree: earliest-eliminated later neighbour
    let mut kids: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut roots = Vec::new();
    for &v in &order {
        let p = bag_of[v].iter().copied().filter(|&x| x != v).min_by_key(|&x| pos[x]);
        match p {
            Some(p) => kids[p].push(v),
            None => roots.push(v),
        }
    }
    let mut b = Builder {
        td: TreeDecomposition { bags: Vec::new(), kinds: Vec::new(), children: Vec::new(), root: 0 },
    };
    // build subtrees in elimination order so children exist before parents
    let mut built = vec![usize::MAX; n];
    for &v in &order {
        let bag = &bag_of[v];
        let subs: Vec<usize> = kids[v].iter().map(|&c| b.morph(built[c], bag)).collect();
        built[v] = b.join_all(subs, bag);
    }
    let empty = BTreeSet::new();
    let tops: Vec<usize> = roots.iter().map(|&r| b.morph(built[r], &empty)).collect();
    let root = b.join_all(tops, &empty);
    b.td.root = root;
    b.td
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_has_width_one() {
        let g = Graph::new(6, vec![(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]).unwrap();
        let td = build_nice_decomposition(&g);
        assert_eq!(td.width(), 1);
        td.validate(&(0..6).collect::<Vec<_>>(), g.edges()).unwrap();
    }

    #[test]
    fn k4_has_width_three() {
        let g = Graph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let td = build_nice_decomposition(&g);
        assert_eq!(td.width(), 3);
        td.validate(&[0, 1, 2, 3], g.edges()).unwrap();
    }

    #[test]
    fn disconnected_and_isolated() {
        let td = nice_decomposition(7, &[(0, 1), (2, 3), (3, 4), (2, 4)], &[0, 1, 2, 3, 4, 6]);
        td.validate(&[0, 1, 2, 3, 4, 6], &[(0, 1), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert_eq!(td.width(), 2);
    }

    #[test]
    fn validator_rejects_missing_edge() {
        let g = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let td = build_nice_decomposition(&g);
        assert!(td.validate(&[0, 1, 2], &[(0, 1), (1, 2), (0, 2)]).is_err());
    }
}
