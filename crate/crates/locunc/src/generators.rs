//! Random instance families: layered copies of the small `format` Steiner
//! instance with circular uncertainty, and planar road networks with a
//! graph-induced metric for p-median.
//!
//! Randomness comes from ChaCha8 (rand_chacha) seeded with
//! `seed_from_u64(seed)` and stream `trial`; one stream per instance.

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{FamilyDescriptor, Graph, LocUncInstance};
use crate::metric::{all_pairs_shortest_paths, MetricSpace, PointId};

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

const FORMAT_XY: [(f64, f64); 7] =
    [(2.75, 0.25), (5.25, 0.25), (1.5, 2.5), (4.0, 2.5), (6.5, 2.5), (2.75, 4.75), (5.25, 4.75)];
const FORMAT_EDGES: [(usize, usize); 9] =
    [(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 5), (3, 6), (4, 6), (5, 6)];
const FORMAT_SHIFT: f64 = 4.5;

/// The format(κ) graph: vertex positions, edges and terminals.
///
/// Copy c ≥ 1 is the base drawing shifted up by 4.5c whose bottom row
/// (u1, u2) is glued onto the top row (u6, u7) of copy c − 1; the glued
/// vertex u6 stays a terminal, and each copy adds terminals u5, u6.
pub fn format_graph(kappa: usize) -> Result<(Vec<[f64; 2]>, Vec<(usize, usize)>, Vec<usize>)> {
    if kappa < 1 {
        return Err(Error::InvalidSize("format(κ) needs κ >= 1".into()));
    }
    let mut pos: Vec<[f64; 2]> = FORMAT_XY.iter().map(|&(x, y)| [x, y]).collect();
    let mut edges: Vec<(usize, usize)> = FORMAT_EDGES.to_vec();
    let mut terminals = vec![0, 4, 5];
    let mut top = (5, 6);
    for c in 1..kappa {
        let mut id = [0usize; 7];
        id[0] = top.0;
        id[1] = top.1;
        for (k, &(x, y)) in FORMAT_XY.iter().enumerate().skip(2) {
            id[k] = pos.len();
            pos.push([x, y + FORMAT_SHIFT * c as f64]);
        }
        for &(a, b) in &FORMAT_EDGES[1..] {
            edges.push((id[a], id[b]));
        }
        terminals.extend([id[4], id[5]]);
        top = (id[5], id[6]);
    }
    terminals.sort_unstable();
    Ok((pos, edges, terminals))
}

/// format(κ) with σ points per vertex on a circle of radius ρ_i around its
/// position, ρ_i uniform in [0, Δ·d̄] (d̄ = mean pairwise distance), at angles
/// 2kπ/σ, k = 1..σ. A zero radius gives a single point.
pub fn gen_format(kappa: usize, delta: f64, sigma: usize, seed: u64) -> Result<LocUncInstance> {
    gen_format_with(kappa, delta, sigma, &mut rng_for(seed, 0))
}

pub fn gen_format_with(kappa: usize, delta: f64, sigma: usize, rng: &mut impl Rng) -> Result<LocUncInstance> {
    if sigma < 1 || !(delta >= 0.0) || !delta.is_finite() {
        return Err(Error::InvalidSize(format!("need σ >= 1 and Δ >= 0, got σ = {sigma}, Δ = {delta}")));
    }
    let (pos, edges, terminals) = format_graph(kappa)?;
    let n = pos.len();
    let dist = |a: [f64; 2], b: [f64; 2]| ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt();
    let mut total = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            total += dist(pos[i], pos[j]);
        }
    }
    let dbar = total / (n * (n - 1) / 2) as f64;
    let mut coords = Vec::new();
    let mut usets = Vec::with_capacity(n);
    for p in &pos {
        let rho = if delta > 0.0 { rng.gen_range(0.0..=delta * dbar) } else { 0.0 };
        let k = if rho > 0.0 { sigma } else { 1 };
        let mut set = Vec::with_capacity(k);
        for step in 1..=k {
            let th = 2.0 * std::f64::consts::PI * step as f64 / sigma as f64;
            set.push(PointId(coords.len()));
            coords.push(vec![p[0] + rho * th.cos(), p[1] + rho * th.sin()]);
        }
        usets.push(set);
    }
    let g = Graph::new(n, edges)?;
    LocUncInstance::new(g, MetricSpace::euclidean(coords)?, usets, FamilyDescriptor::SteinerTree { terminals })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RoadNetwork {
    pub positions: Vec<[f64; 2]>,
    pub edges: Vec<(usize, usize)>,
}

fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn on_segment(a: [f64; 2], b: [f64; 2], p: [f64; 2]) -> bool {
    p[0] >= a[0].min(b[0]) && p[0] <= a[0].max(b[0]) && p[1] >= a[1].min(b[1]) && p[1] <= a[1].max(b[1])
}

/// Do the closed segments pq and rs meet anywhere other than a shared endpoint?
pub fn segments_cross(p: [f64; 2], q: [f64; 2], r: [f64; 2], s: [f64; 2]) -> bool {
    let shared = [p, q].iter().filter(|x| **x == r || **x == s).count();
    let (d1, d2, d3, d4) = (orient(r, s, p), orient(r, s, q), orient(p, q, r), orient(p, q, s));
    if shared == 1 {
        // common endpoint: they only overlap if collinear and pointing the same way
        if d1 == 0.0 && d2 == 0.0 {
            let (c, a, b) = if p == r || p == s {
                (p, q, if p == r { s } else { r })
            } else {
                (q, p, if q == r { s } else { r })
            };
            return (a[0] - c[0]) * (b[0] - c[0]) + (a[1] - c[1]) * (b[1] - c[1]) > 0.0;
        }
        return false;
    }
    if shared == 2 {
        return true;
    }
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    (d1 == 0.0 && on_segment(r, s, p))
        || (d2 == 0.0 && on_segment(r, s, q))
        || (d3 == 0.0 && on_segment(p, q, r))
        || (d4 == 0.0 && on_segment(p, q, s))
}

/// n uniform points in the unit square; the Euclidean minimum spanning tree,
/// then m − n + 1 more edges drawn one at a time with probability
/// proportional to ‖u_i − u_j‖⁻² among the pairs that cross no chosen edge.
pub fn gen_roadnet_graph(n: usize, m: usize, rng: &mut impl Rng) -> Result<RoadNetwork> {
    if n < 2 {
        return Err(Error::InvalidSize(format!("road network needs n >= 2, got {n}")));
    }
    if m < n - 1 {
        return Err(Error::InvalidSize(format!("m = {m} < n - 1 = {}", n - 1)));
    }
    let pos: Vec<[f64; 2]> = (0..n).map(|_| [rng.gen::<f64>(), rng.gen::<f64>()]).collect();
    let d = |a: usize, b: usize| ((pos[a][0] - pos[b][0]).powi(2) + (pos[a][1] - pos[b][1]).powi(2)).sqrt();

    // Prim on the Euclidean lengths; the Euclidean MST is plane.
    let mut in_tree = vec![false; n];
    let mut best = vec![(f64::INFINITY, 0usize); n];
    let mut edges = Vec::with_capacity(m);
    in_tree[0] = true;
    for v in 1..n {
        best[v] = (d(0, v), 0);
    }
    for _ in 1..n {
        let v = (0..n)
            .filter(|&v| !in_tree[v])
            .min_by(|&a, &b| best[a].0.total_cmp(&best[b].0).then(a.cmp(&b)))
            .expect("vertex left");
        in_tree[v] = true;
        let u = best[v].1;
        edges.push((u.min(v), u.max(v)));
        for w in 0..n {
            if !in_tree[w] && d(v, w) < best[w].0 {
                best[w] = (d(v, w), v);
            }
        }
    }

    let crosses = |a: (usize, usize), b: (usize, usize)| segments_cross(pos[a.0], pos[a.1], pos[b.0], pos[b.1]);
    let mut cand: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|c| !edges.contains(c) && !edges.iter().any(|&e| crosses(*c, e)))
        .collect();
    for _ in 0..(m - (n - 1)) {
        if cand.is_empty() {
            return Err(Error::InvalidSize(format!("no planar room for {m} edges on {n} points")));
        }
        let weights: Vec<f64> = cand.iter().map(|&(a, b)| d(a, b).powi(-2)).collect();
        let k = WeightedIndex::new(&weights).map_err(|e| Error::InvalidSize(e.to_string()))?.sample(rng);
        let e = cand.swap_remove(k);
        cand.retain(|&c| !crosses(c, e));
        edges.push(e);
    }
    Ok(RoadNetwork { positions: pos, edges })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RoadNetParams {
    pub n: usize,
    pub m: usize,
    pub clients: usize,
    pub sites: usize,
    pub p: usize,
    pub sigma: usize,
}

/// p-median instance on a road network. Clients and candidate sites are
/// random node subsets (drawn independently, so a node may be both); each
/// becomes its own instance vertex, and the instance graph is complete
/// bipartite clients × sites. The metric is the road network's shortest-path
/// metric; vertex k may sit at any of the σ nodes nearest (by road distance,
/// ties by index) to its node, the node itself included.
pub fn gen_planar_roadnet(params: &RoadNetParams, seed: u64) -> Result<(LocUncInstance, RoadNetwork)> {
    gen_planar_roadnet_with(params, &mut rng_for(seed, 0))
}

pub fn gen_planar_roadnet_with(params: &RoadNetParams, rng: &mut impl Rng) -> Result<(LocUncInstance, RoadNetwork)> {
    let RoadNetParams { n, m, clients, sites, p, sigma } = *params;
    if sigma < 1 || sigma > n || clients < 1 || sites < 1 || clients > n || sites > n {
        return Err(Error::InvalidSize(format!("bad road network parameters {params:?}")));
    }
    let net = gen_roadnet_graph(n, m, rng)?;
    let pos = &net.positions;
    let weighted: Vec<(usize, usize, f64)> = net
        .edges
        .iter()
        .map(|&(a, b)| (a, b, ((pos[a][0] - pos[b][0]).powi(2) + (pos[a][1] - pos[b][1]).powi(2)).sqrt()))
        .collect();
    let dist = all_pairs_shortest_paths(n, &weighted)?;
    let space = MetricSpace::graph_induced(n, weighted)?;
    let mut client_nodes = sample(rng, n, clients).into_vec();
    let mut site_nodes = sample(rng, n, sites).into_vec();
    client_nodes.sort_unstable();
    site_nodes.sort_unstable();
    let nearest = |v: usize| -> Vec<PointId> {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| dist[v][a].total_cmp(&dist[v][b]).then(a.cmp(&b)));
        order.into_iter().take(sigma).map(PointId).collect()
    };
    let nodes: Vec<usize> = client_nodes.iter().chain(&site_nodes).copied().collect();
    let usets = nodes.iter().map(|&v| nearest(v)).collect();
    let edges = (0..clients).flat_map(|i| (0..sites).map(move |j| (i, clients + j))).collect();
    let g = Graph::new(clients + sites, edges)?;
    let family = FamilyDescriptor::PMedian {
        clients: (0..clients).collect(),
        sites: (clients..clients + sites).collect(),
        p,
    };
    Ok((LocUncInstance::new(g, space, usets, family)?, net))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_sizes() {
        for kappa in 1..=4 {
            let (pos, edges, terms) = format_graph(kappa).unwrap();
            assert_eq!(pos.len(), 7 + 5 * (kappa - 1));
            assert_eq!(edges.len(), 9 + 8 * (kappa - 1));
            assert_eq!(terms.len(), 3 + 2 * (kappa - 1));
        }
        assert!(format_graph(0).is_err());
    }

    #[test]
    fn format2_matches_drawing() {
        let (pos, edges, terms) = format_graph(2).unwrap();
        assert_eq!(pos[11], [5.25, 9.25]);
        assert_eq!(terms, vec![0, 4, 5, 9, 10]);
        for e in [(5, 7), (6, 8), (6, 9), (7, 8), (7, 10), (9, 11), (10, 11), (8, 11)] {
            assert!(edges.contains(&e), "{e:?}");
        }
    }

    #[test]
    fn crossing_predicate() {
        let (a, b, c, d) = ([0.0, 0.0], [1.0, 1.0], [0.0, 1.0], [1.0, 0.0]);
        assert!(segments_cross(a, b, c, d));
        assert!(!segments_cross(a, c, b, d));
        assert!(!segments_cross(a, b, b, d));
        assert!(segments_cross(a, [2.0, 2.0], a, b));
    }

    #[test]
    fn tree_only_when_m_is_n_minus_1() {
        let net = gen_roadnet_graph(12, 11, &mut rng_for(3, 0)).unwrap();
        assert_eq!(net.edges.len(), 11);
        assert!(Graph::new(12, net.edges).unwrap().is_connected());
    }
}
