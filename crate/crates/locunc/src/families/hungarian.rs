//! Hungarian method (potentials, O(n³)) for minimum-weight perfect matching
//! between two equal vertex classes.

use crate::error::{Error, Result};
use crate::instance::{EdgeSubset, Graph};

pub(super) fn assignment(graph: &Graph, w: &[f64], left: &[usize], right: &[usize]) -> Result<EdgeSubset> {
    let n = left.len();
    if n == 0 {
        return Ok(EdgeSubset::default());
    }
    let big = 1.0 + w.iter().sum::<f64>() * (n as f64 + 1.0);
    let edge = |i: usize, j: usize| graph.edge_index(left[i], right[j]);
    let cost = |i: usize, j: usize| edge(i, j).map_or(big, |e| w[e]);
    // 1-based arrays as in the classical formulation
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut edges = Vec::with_capacity(n);
    for j in 1..=n {
        match edge(p[j] - 1, j - 1) {
            Some(e) => edges.push(e),
            None => return Err(Error::Infeasible("no perfect matching".into())),
        }
    }
    Ok(EdgeSubset::new(edges))
}
