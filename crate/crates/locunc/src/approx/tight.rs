//! Instances on which c^max(F) / c(F) reaches the proven bound, each with its
//! distinguished edge set F (the instance family is the single-member list {F}).

use crate::error::{Error, Result};
use crate::instance::{EdgeSubset, FamilyDescriptor, Graph, LocUncInstance};
use crate::metric::{MetricSpace, PointId};

fn line(points: &[f64]) -> MetricSpace {
    MetricSpace::euclidean(points.iter().map(|&x| vec![x]).collect()).expect("finite coordinates")
}

fn finish(graph: Graph, space: MetricSpace, sets: Vec<Vec<usize>>) -> Result<(LocUncInstance, EdgeSubset)> {
    let f = EdgeSubset::all(&graph);
    let usets = sets.into_iter().map(|s| s.into_iter().map(PointId).collect()).collect();
    let inst = LocUncInstance::new(graph, space, usets, FamilyDescriptor::ExplicitList(vec![f.clone()]))?;
    Ok((inst, f))
}

/// Path on n ≥ 3 vertices: U_1 = {0}, U_2 = {0,1}, U_k = {1} for k ≥ 3.
/// c^max = 2, c = 1.
pub fn gen_tight_path(n: usize) -> Result<(LocUncInstance, EdgeSubset)> {
    if n < 3 {
        return Err(Error::InvalidSize(format!("tight path needs n >= 3, got {n}")));
    }
    let g = Graph::new(n, (0..n - 1).map(|i| (i, i + 1)).collect())?;
    let sets = (0..n).map(|i| match i {
        0 => vec![0],
        1 => vec![0, 1],
        _ => vec![1],
    });
    finish(g, line(&[0.0, 1.0]), sets.collect())
}

/// Cycle on n ≥ 4 vertices: U_1 = {0}, U_2 = {0,1}, U_3 = {1}, U_4 = {0,1},
/// U_k = {0} for k ≥ 5. c^max = 4, c = 2.
pub fn gen_tight_cycle(n: usize) -> Result<(LocUncInstance, EdgeSubset)> {
    if n < 4 {
        return Err(Error::InvalidSize(format!("tight cycle needs n >= 4, got {n}")));
    }
    let g = Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect())?;
    let sets = (0..n).map(|i| match i {
        1 | 3 => vec![0, 1],
        2 => vec![1],
        _ => vec![0],
    });
    finish(g, line(&[0.0, 1.0]), sets.collect())
}

/// Triangle with the path sets U_1 = {0}, U_2 = {0,1}, U_3 = {1}: c^max = 3, c = 2.
pub fn gen_tight_triangle() -> Result<(LocUncInstance, EdgeSubset)> {
    let g = Graph::new(3, vec![(0, 1), (1, 2), (0, 2)])?;
    finish(g, line(&[0.0, 1.0]), vec![vec![0], vec![0, 1], vec![1]])
}

/// K_k with every U_i = {0, 1} on a line: c^max = k(k−1)/2 and c is the
/// maximum cut of K_k, ⌊k/2⌋·⌈k/2⌉.
pub fn gen_tight_clique(k: usize) -> Result<(LocUncInstance, EdgeSubset)> {
    if k < 2 {
        return Err(Error::InvalidSize(format!("tight clique needs k >= 2, got {k}")));
    }
    let edges = (0..k).flat_map(|i| ((i + 1)..k).map(move |j| (i, j))).collect();
    let g = Graph::new(k, edges)?;
    finish(g, line(&[0.0, 1.0]), vec![vec![0, 1]; k])
}

/// Star with center 0 and leaves 1..n−1. The center may sit at c_2..c_n, leaf i
/// sits at l_i; d(c_i, c_j) = d(l_i, l_j) = 2/3, d(c_i, l_i) = 1, d(c_j, l_i) = 1/3.
/// c^max = n − 1, c = 1 + (n − 2)/3.
pub fn gen_tight_star(n: usize) -> Result<(LocUncInstance, EdgeSubset)> {
    if n < 2 {
        return Err(Error::InvalidSize(format!("tight star needs n >= 2, got {n}")));
    }
    let k = n - 1;
    // points 0..k are center positions, k..2k leaf positions
    let mut m = vec![vec![0.0; 2 * k]; 2 * k];
    for a in 0..2 * k {
        for b in 0..2 * k {
            if a == b {
                continue;
            }
            let (ca, cb) = (a < k, b < k);
            m[a][b] = if ca == cb {
                2.0 / 3.0
            } else if a % k == b % k {
                1.0
            } else {
                1.0 / 3.0
            };
        }
    }
    let g = Graph::new(n, (1..n).map(|i| (0, i)).collect())?;
    let mut sets = vec![(0..k).collect::<Vec<_>>()];
    sets.extend((0..k).map(|i| vec![k + i]));
    finish(g, MetricSpace::explicit(m)?, sets)
}

/// Path 1–2–3 with U_1 = {ε}, U_2 = {0}, U_3 = {−1, 0, 1}; the family is the
/// two single edges. The barycenter of U_3 is 0, so the center heuristic sees
/// {2,3} as free and picks it (cost 1) while {1,2} costs ε.
///
/// The interior point 0 of U_3 does not change any worst case (it lies in the
/// segment [−1, 1]); it makes the finite-set barycenter coincide with the
/// midpoint of the segment.
pub fn gen_center_trap(eps: f64) -> Result<LocUncInstance> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidSize(format!("epsilon must lie in (0,1), got {eps}")));
    }
    let g = Graph::new(3, vec![(0, 1), (1, 2)])?;
    let space = line(&[eps, 0.0, -1.0, 1.0]);
    let usets = vec![vec![PointId(0)], vec![PointId(1)], vec![PointId(2), PointId(1), PointId(3)]];
    let family = FamilyDescriptor::ExplicitList(vec![EdgeSubset::new(vec![0]), EdgeSubset::new(vec![1])]);
    LocUncInstance::new(g, space, usets, family)
}
