use super::EvalResult;
use crate::error::{Error, Result};
use crate::families::Dsu;
use crate::instance::{EdgeSubset, LocUncInstance, Scenario};

/// Bottom-up recursion opt(i, u_i) = Σ_children max_{u_j} [d(u_i, u_j) + opt(j, u_j)]
/// on every component of the forest F, rooted at its smallest vertex.
pub fn eval_c_tree(inst: &LocUncInstance, f: &EdgeSubset) -> Result<EvalResult> {
    let g = inst.graph();
    let n = inst.n();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut dsu = Dsu::new(n);
    for &e in f.edges() {
        let (a, b) = g.edge(e);
        if !dsu.union(a, b) {
            return Err(Error::NotATree);
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let space = inst.space();
    let mut parent = vec![usize::MAX; n];
    let mut visited = vec![false; n];
    let mut order = Vec::new();
    let mut roots = Vec::new();
    for r in 0..n {
        if visited[r] || adj[r].is_empty() {
            continue;
        }
        roots.push(r);
        visited[r] = true;
        let mut stack = vec![r];
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &adj[v] {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
    }
    let mut opt: Vec<Vec<f64>> = (0..n).map(|v| vec![0.0; inst.uset(v).len()]).collect();
    // choice[j][l]: best location of child j when its parent sits at location l
    let mut choice: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &j in order.iter().rev() {
        let p = parent[j];
        if p == usize::MAX {
            continue;
        }
        let (up, uj) = (inst.uset(p), inst.uset(j));
        let mut ch = vec![0usize; up.len()];
        for (l, &a) in up.iter().enumerate() {
            let mut best = f64::NEG_INFINITY;
            for (k, &b) in uj.iter().enumerate() {
                let v = space.d(a, b) + opt[j][k];
                if v > best {
                    best = v;
                    ch[l] = k;
                }
            }
            opt[p][l] += best;
        }
        choice[j] = ch;
    }
    let mut w = vec![0usize; n];
    for &r in &roots {
        let mut bl = 0;
        for l in 1..opt[r].len() {
            if opt[r][l] > opt[r][bl] {
                bl = l;
            }
        }
        w[r] = bl;
    }
    for &v in &order {
        if parent[v] != usize::MAX {
            w[v] = choice[v][w[parent[v]]];
        }
    }
    Ok(EvalResult::new(inst, f, Scenario(w)))
}
