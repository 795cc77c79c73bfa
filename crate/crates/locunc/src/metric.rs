//! Finite metric spaces: explicit matrices, Euclidean point sets and
//! shortest-path metrics of weighted graphs.
//!
//! Every variant is materialised as a dense distance matrix on construction,
//! so `d` is a plain lookup.

use crate::error::{Error, Result};

/// Absolute tolerance used for every floating comparison in the crate.
pub const TOL: f64 = 1e-9;

/// Explicit matrices with more points than this skip the O(n³) triangle check.
pub const VALIDATION_CAP: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointId(pub usize);

#[derive(Clone, Debug, PartialEq)]
pub enum MetricKind {
    Explicit,
    Euclidean { coords: Vec<Vec<f64>> },
    GraphInduced { edges: Vec<(usize, usize, f64)> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricSpace {
    kind: MetricKind,
    n: usize,
    d: Vec<f64>,
}

impl MetricSpace {
    /// Explicit matrix, validated (symmetry, zero diagonal, nonnegativity and,
    /// up to [`VALIDATION_CAP`] points, the triangle inequality).
    pub fn explicit(matrix: Vec<Vec<f64>>) -> Result<Self> {
        let s = Self::explicit_unchecked(matrix)?;
        check_axioms(s.n, &s.d, s.n <= VALIDATION_CAP)?;
        Ok(s)
    }

    /// Explicit matrix without axiom checks beyond shape. Used for the rounded,
    /// possibly non-metric matrices of the shortest-path FPTAS.
    pub fn explicit_unchecked(matrix: Vec<Vec<f64>>) -> Result<Self> {
        let n = matrix.len();
        let mut d = Vec::with_capacity(n * n);
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MetricViolation(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            d.extend_from_slice(row);
        }
        Ok(MetricSpace { kind: MetricKind::Explicit, n, d })
    }

    pub fn euclidean(coords: Vec<Vec<f64>>) -> Result<Self> {
        let n = coords.len();
        let dim = coords.first().map_or(0, |c| c.len());
        for (i, c) in coords.iter().enumerate() {
            if c.len() != dim {
                return Err(Error::MetricViolation(format!("point {i} has dimension {}", c.len())));
            }
            if c.iter().any(|x| !x.is_finite()) {
                return Err(Error::MetricViolation(format!("point {i} has a non-finite coordinate")));
            }
        }
        let mut d = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = euclid(&coords[i], &coords[j]);
                d[i * n + j] = v;
                d[j * n + i] = v;
            }
        }
        Ok(MetricSpace { kind: MetricKind::Euclidean { coords }, n, d })
    }

    /// Shortest-path metric of a connected weighted graph on `n` vertices.
    pub fn graph_induced(n: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        let m = all_pairs_shortest_paths(n, &edges)?;
        let d = m.into_iter().flatten().collect();
        Ok(MetricSpace { kind: MetricKind::GraphInduced { edges }, n, d })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn kind(&self) -> &MetricKind {
        &self.kind
    }

    pub fn is_euclidean(&self) -> bool {
        matches!(self.kind, MetricKind::Euclidean { .. })
    }

    pub fn coords(&self, p: PointId) -> Option<&[f64]> {
        match &self.kind {
            MetricKind::Euclidean { coords } => coords.get(p.0).map(|c| c.as_slice()),
            _ => None,
        }
    }

    pub fn dimension(&self) -> Option<usize> {
        match &self.kind {
            MetricKind::Euclidean { coords } => Some(coords.first().map_or(0, |c| c.len())),
            _ => None,
        }
    }

    /// Checked distance.
    pub fn distance(&self, a: PointId, b: PointId) -> Result<f64> {
        for p in [a, b] {
            if p.0 >= self.n {
                return Err(Error::InvalidPoint { id: p.0, len: self.n });
            }
        }
        Ok(self.d(a, b))
    }

    /// Unchecked distance; panics on out-of-range ids.
    #[inline]
    pub fn d(&self, a: PointId, b: PointId) -> f64 {
        self.d[a.0 * self.n + b.0]
    }

    pub fn matrix(&self) -> Vec<Vec<f64>> {
        self.d.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    /// Copy of this space as an explicit matrix.
    pub fn freeze(&self) -> MetricSpace {
        MetricSpace { kind: MetricKind::Explicit, n: self.n, d: self.d.clone() }
    }
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

fn check_axioms(n: usize, d: &[f64], triangles: bool) -> Result<()> {
    for i in 0..n {
        if d[i * n + i].abs() > TOL {
            return Err(Error::MetricViolation(format!("d({i},{i}) = {}", d[i * n + i])));
        }
        for j in 0..n {
            let v = d[i * n + j];
            if !v.is_finite() || v < -TOL {
                return Err(Error::MetricViolation(format!("d({i},{j}) = {v}")));
            }
            if (v - d[j * n + i]).abs() > TOL {
                return Err(Error::MetricViolation(format!("asymmetric at ({i},{j})")));
            }
        }
    }
    if triangles {
        for a in 0..n {
            for b in 0..n {
                let ab = d[a * n + b];
                for c in 0..n {
                    if d[a * n + c] > ab + d[b * n + c] + TOL {
                        return Err(Error::MetricViolation(format!(
                            "triangle inequality fails for ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Validate a square matrix against the metric axioms (all triangles, no cap).
pub fn check_metric(matrix: &[Vec<f64>]) -> Result<()> {
    let n = matrix.len();
    let flat: Vec<f64> = matrix.iter().flatten().copied().collect();
    if flat.len() != n * n {
        return Err(Error::MetricViolation("matrix is not square".into()));
    }
    check_axioms(n, &flat, true)
}

/// Floyd–Warshall closure of an undirected weighted graph.
pub fn all_pairs_shortest_paths(n: usize, edges: &[(usize, usize, f64)]) -> Result<Vec<Vec<f64>>> {
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for &(a, b, w) in edges {
        if a >= n || b >= n {
            return Err(Error::InvalidGraph(format!("edge ({a},{b}) out of range")));
        }
        if !(w >= 0.0) || !w.is_finite() {
            return Err(Error::InvalidGraph(format!("edge ({a},{b}) has weight {w}")));
        }
        if w < d[a][b] {
            d[a][b] = w;
            d[b][a] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            let dik = d[i][k];
            if dik == f64::INFINITY {
                continue;
            }
            for j in 0..n {
                let v = dik + d[k][j];
                if v < d[i][j] {
                    d[i][j] = v;
                }
            }
        }
    }
    if d.iter().flatten().any(|v| v.is_infinite()) {
        return Err(Error::DisconnectedMetric);
    }
    Ok(d)
}

/// Ptolemy's inequality on every quadruple of `points`, in all three pairings.
pub fn is_ptolemaic(space: &MetricSpace, points: &[PointId]) -> bool {
    let k = points.len();
    if k < 4 {
        return true;
    }
    let d = |a: usize, b: usize| space.d(points[a], points[b]);
    for a in 0..k {
        for b in (a + 1)..k {
            for c in (b + 1)..k {
                for e in (c + 1)..k {
                    let p1 = d(a, b) * d(c, e);
                    let p2 = d(a, c) * d(b, e);
                    let p3 = d(a, e) * d(b, c);
                    let slack = TOL * (1.0 + p1 + p2 + p3);
                    if p1 > p2 + p3 + slack || p2 > p1 + p3 + slack || p3 > p1 + p2 + slack {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pythagorean() {
        let s = MetricSpace::euclidean(vec![vec![0.0, 0.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(s.distance(PointId(0), PointId(1)).unwrap(), 5.0);
        assert_eq!(s.distance(PointId(1), PointId(1)).unwrap(), 0.0);
        assert!(matches!(s.distance(PointId(2), PointId(0)), Err(Error::InvalidPoint { .. })));
    }

    #[test]
    fn graph_metric_path() {
        let s = MetricSpace::graph_induced(3, vec![(0, 1, 1.0), (1, 2, 2.0)]).unwrap();
        assert_eq!(s.d(PointId(0), PointId(2)), 3.0);
    }

    #[test]
    fn triangle_shortcut() {
        let d = all_pairs_shortest_paths(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 5.0)]).unwrap();
        assert_eq!(d[0][2], 2.0);
        let d = all_pairs_shortest_paths(2, &[(0, 1, 4.5)]).unwrap();
        assert_eq!(d[0][1], 4.5);
    }

    #[test]
    fn disconnected() {
        assert_eq!(all_pairs_shortest_paths(3, &[(0, 1, 1.0)]), Err(Error::DisconnectedMetric));
    }

    #[test]
    fn explicit_rejects_bad_triangle() {
        let m = vec![vec![0.0, 1.0, 5.0], vec![1.0, 0.0, 1.0], vec![5.0, 1.0, 0.0]];
        assert!(matches!(MetricSpace::explicit(m.clone()), Err(Error::MetricViolation(_))));
        assert!(MetricSpace::explicit_unchecked(m).is_ok());
    }

    #[test]
    fn non_ptolemaic_four_points() {
        // A, B, C, O
        let m = vec![
            vec![0.0, 1.0, 1.0, 1.5],
            vec![1.0, 0.0, 1.0, 0.5],
            vec![1.0, 1.0, 0.0, 0.5],
            vec![1.5, 0.5, 0.5, 0.0],
        ];
        let s = MetricSpace::explicit(m).unwrap();
        let pts: Vec<_> = (0..4).map(PointId).collect();
        assert!(!is_ptolemaic(&s, &pts));
        assert!(is_ptolemaic(&s, &pts[..3]));
    }
}
