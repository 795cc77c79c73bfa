//! Robust shortest path by a profile dynamic program, and its FPTAS.
//!
//! A profile of an i–t walk holds, for every location of i, the worst-case
//! cost of the walk given that location. Profiles are extended one edge at a
//! time backwards from t; the walk minimising the largest entry at s is
//! optimal. The recursion admits non-simple walks; cycles are cut out at the
//! end, which never increases any profile entry because distances are
//! nonnegative.

use std::collections::{BTreeMap, BTreeSet};

use crate::approx::heuristic_dmax;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::instance::{EdgeSubset, FamilyDescriptor, LocUncInstance};
use crate::metric::{PointId, TOL};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SpStats {
    /// Distinct profiles summed over all (vertex, hop budget) cells.
    pub n_profiles: usize,
    /// Distinct values appearing in any profile.
    pub n_val: usize,
    /// Stored profile entries over all cells.
    pub table_entries: usize,
    pub table_bytes: usize,
    pub hops: usize,
    pub pruned: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpOutcome {
    pub path: EdgeSubset,
    /// Vertex sequence s … t.
    pub vertices: Vec<usize>,
    /// Worst-case cost of `path` under the instance metric.
    pub value: f64,
    pub stats: SpStats,
}

fn key(p: &[f64]) -> Vec<i128> {
    p.iter().map(|&x| (x * 1e12).round() as i128).collect()
}

fn endpoints(inst: &LocUncInstance) -> Result<(usize, usize)> {
    match inst.family() {
        FamilyDescriptor::StPath { s, t } if s != t => Ok((*s, *t)),
        FamilyDescriptor::StPath { .. } => Err(Error::InvalidInstance("s = t".into())),
        other => Err(Error::InvalidInstance(format!("{} family is not an s-t path family", other.name()))),
    }
}

/// Profile of the walk `vs` (ending at t) under `dist`.
fn walk_profile(inst: &LocUncInstance, vs: &[usize], dist: &dyn Fn(PointId, PointId) -> f64) -> Vec<f64> {
    let last = *vs.last().expect("nonempty walk");
    let mut p = vec![0.0; inst.uset(last).len()];
    for w in vs.windows(2).rev() {
        p = extend(inst, w[0], w[1], &p, dist);
    }
    p
}

fn extend(inst: &LocUncInstance, i: usize, j: usize, pj: &[f64], dist: &dyn Fn(PointId, PointId) -> f64) -> Vec<f64> {
    inst.uset(i)
        .iter()
        .map(|&a| {
            inst.uset(j)
                .iter()
                .zip(pj)
                .map(|(&b, &v)| dist(a, b) + v)
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect()
}

fn max_entry(p: &[f64]) -> f64 {
    p.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// Drop every closed sub-walk, keeping the first visit of each vertex.
fn excise_cycles(walk: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(walk.len());
    for &v in walk {
        if let Some(p) = out.iter().position(|&x| x == v) {
            out.truncate(p + 1);
        } else {
            out.push(v);
        }
    }
    out
}

struct DpResult {
    walk: Vec<usize>,
    stats: SpStats,
}

fn profile_dp(
    inst: &LocUncInstance,
    s: usize,
    t: usize,
    dist: &dyn Fn(PointId, PointId) -> f64,
    prune_above: Option<f64>,
    caps: &Caps,
) -> Result<DpResult> {
    let g = inst.graph();
    let n = g.n();
    let hops = n.saturating_sub(1).max(1);
    type Cell = BTreeMap<Vec<i128>, (Vec<f64>, Vec<usize>)>;
    let zero = vec![0.0; inst.uset(t).len()];
    let mut layer: Vec<Cell> = vec![Cell::new(); n];
    layer[t].insert(key(&zero), (zero, vec![t]));
    let mut stats = SpStats { hops, ..SpStats::default() };
    let mut values: BTreeSet<i128> = BTreeSet::new();
    let record = |cell: &Cell, stats: &mut SpStats, values: &mut BTreeSet<i128>| {
        stats.n_profiles += cell.len();
        for (k, (p, _)) in cell {
            stats.table_entries += p.len();
            values.extend(k.iter().copied());
        }
    };
    record(&layer[t], &mut stats, &mut values);
    for _ in 1..=hops {
        let mut next: Vec<Cell> = vec![Cell::new(); n];
        next[t] = layer[t].clone();
        for i in 0..n {
            if i == t {
                continue;
            }
            for &(j, _) in g.neighbors(i) {
                for (pj, walk) in layer[j].values() {
                    let y = extend(inst, i, j, pj, dist);
                    if let Some(lim) = prune_above {
                        if max_entry(&y) > lim + TOL {
                            stats.pruned += 1;
                            continue;
                        }
                    }
                    let k = key(&y);
                    if !next[i].contains_key(&k) {
                        let mut w = Vec::with_capacity(walk.len() + 1);
                        w.push(i);
                        w.extend_from_slice(walk);
                        next[i].insert(k, (y, w));
                    }
                }
            }
            if stats.table_entries as u64 > caps.dp_table {
                return Err(crate::error::cap("profile table entries", caps.dp_table));
            }
        }
        for cell in &next {
            record(cell, &mut stats, &mut values);
        }
        layer = next;
    }
    stats.n_val = values.len();
    stats.table_bytes = stats.table_entries * std::mem::size_of::<f64>();
    let best = layer[s]
        .values()
        .map(|(p, w)| (max_entry(p), p, w))
        .fold(None::<(f64, &Vec<f64>, &Vec<usize>)>, |b, c| match b {
            Some(b) if b.0 <= c.0 => Some(b),
            _ => Some(c),
        });
    let (_, prof, walk) = best.ok_or_else(|| Error::Infeasible(format!("{t} unreachable from {s}")))?;
    let path = excise_cycles(walk);
    let pp = walk_profile(inst, &path, dist);
    debug_assert!(pp.iter().zip(prof.iter()).all(|(a, b)| *a <= b + 1e-6 * (1.0 + b.abs())));
    Ok(DpResult { walk: path, stats })
}

fn to_edges(inst: &LocUncInstance, vs: &[usize]) -> EdgeSubset {
    let g = inst.graph();
    EdgeSubset::new(vs.windows(2).map(|w| g.edge_index(w[0], w[1]).expect("walk follows edges")).collect())
}

/// Exact robust s–t path under the instance metric (which may be an
/// unvalidated, non-metric matrix).
pub fn robust_sp_exact(inst: &LocUncInstance, caps: &Caps) -> Result<SpOutcome> {
    let (s, t) = endpoints(inst)?;
    let space = inst.space();
    let dist = |a: PointId, b: PointId| space.d(a, b);
    let r = profile_dp(inst, s, t, &dist, None, caps)?;
    let value = max_entry(&walk_profile(inst, &r.walk, &dist));
    Ok(SpOutcome { path: to_edges(inst, &r.walk), vertices: r.walk, value, stats: r.stats })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FptasOutcome {
    pub outcome: SpOutcome,
    /// Worst-case cost of the bootstrap path.
    pub bootstrap: f64,
    /// Rounding unit ε′·A.
    pub unit: f64,
}

/// (1+ε)-approximate robust s–t path: distances are rounded up to multiples
/// of ε′A with ε′ = ε/(2n), where A is the worst-case cost of the d^max path;
/// profiles with an entry above A(1+nε′) are discarded. The DP runs on
/// integer unit counts.
pub fn robust_sp_fptas(inst: &LocUncInstance, eps: f64, caps: &Caps) -> Result<FptasOutcome> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::InvalidSize(format!("epsilon must be positive, got {eps}")));
    }
    let (s, t) = endpoints(inst)?;
    let space = inst.space();
    let exact = |a: PointId, b: PointId| space.d(a, b);
    let pa = heuristic_dmax(inst, caps)?;
    let pa_vs = path_vertices(inst, &pa, s, t);
    let a = max_entry(&walk_profile(inst, &pa_vs, &exact));
    if a <= TOL {
        let outcome = SpOutcome { path: pa, vertices: pa_vs, value: a, stats: SpStats::default() };
        return Ok(FptasOutcome { outcome, bootstrap: a, unit: 0.0 });
    }
    let n = inst.n() as f64;
    let eps1 = eps / (2.0 * n);
    let unit = eps1 * a;
    let rounded = |p: PointId, q: PointId| round_up_units(space.d(p, q), unit);
    let limit = 1.0 / eps1 + n;
    let r = profile_dp(inst, s, t, &rounded, Some(limit), caps)?;
    let value = max_entry(&walk_profile(inst, &r.walk, &exact));
    let outcome = if value <= a + TOL {
        SpOutcome { path: to_edges(inst, &r.walk), vertices: r.walk, value, stats: r.stats }
    } else {
        SpOutcome { path: pa, vertices: pa_vs, value: a, stats: r.stats }
    };
    Ok(FptasOutcome { outcome, bootstrap: a, unit })
}

/// ⌈x / unit⌉ as a float holding an integer.
pub fn round_up_units(x: f64, unit: f64) -> f64 {
    (x / unit).ceil()
}

fn path_vertices(inst: &LocUncInstance, f: &EdgeSubset, s: usize, t: usize) -> Vec<usize> {
    let g = inst.graph();
    let mut vs = vec![s];
    let mut cur = s;
    let mut left: Vec<usize> = f.edges().to_vec();
    while cur != t {
        let k = left
            .iter()
            .position(|&e| {
                let (a, b) = g.edge(e);
                a == cur || b == cur
            })
            .expect("edge set is an s-t path");
        let (a, b) = g.edge(left.swap_remove(k));
        cur = if a == cur { b } else { a };
        vs.push(cur);
    }
    vs
}

/// Stats as one CSV row: n_profiles, n_val, table_entries, table_bytes, hops, pruned.
pub fn stats_csv_row(s: &SpStats) -> [String; 6] {
    [
        s.n_profiles.to_string(),
        s.n_val.to_string(),
        s.table_entries.to_string(),
        s.table_bytes.to_string(),
        s.hops.to_string(),
        s.pruned.to_string(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Graph;
    use crate::metric::MetricSpace;

    #[test]
    fn cycle_excision() {
        assert_eq!(excise_cycles(&[0, 1, 2, 1, 3, 4, 3, 5]), vec![0, 1, 3, 5]);
        assert_eq!(excise_cycles(&[0, 1, 0, 2]), vec![0, 2]);
    }

    #[test]
    fn single_edge_value_is_dmax() {
        let g = Graph::new(2, vec![(0, 1)]).unwrap();
        let sp = MetricSpace::euclidean(vec![vec![0.0], vec![1.0], vec![3.0]]).unwrap();
        let u = vec![vec![PointId(0), PointId(1)], vec![PointId(2)]];
        let inst = LocUncInstance::new(g, sp, u, FamilyDescriptor::StPath { s: 0, t: 1 }).unwrap();
        let r = robust_sp_exact(&inst, &Caps::default()).unwrap();
        assert_eq!(r.value, 3.0);
        assert_eq!(r.vertices, vec![0, 1]);
    }

    #[test]
    fn rounding_bounds() {
        for &(x, u) in &[(0.0, 0.1), (0.3, 0.1), (2.05, 0.5), (7.0, 7.0)] {
            let r = round_up_units(x, u) * u;
            assert!(x <= r + 1e-12 && r <= x + u + 1e-12);
        }
    }
}
