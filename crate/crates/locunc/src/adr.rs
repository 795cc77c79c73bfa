//! Conservative conic reformulation with affine decision rules, for instances
//! in Euclidean space.
//!
//! Every edge {i, j} is turned into the arc (i, j) with i < j. Per arc there is
//! a norm variable ν_ij ≥ ‖μ_{i,ij} + μ_{j,ij}‖, and per incident arc and
//! extreme point k of U_i a variable ν^k ≥ ‖u_i^k − μ_{i,ij}‖ (tail) or
//! ‖u_i^k + μ_{i,ji}‖ (head). The products x_e ν^k are linearised by
//! π^k ≥ ν^k − M_e(1 − x_e), π^k ≥ 0 with M_e = d^max of the edge, and
//! μ⁰_i ≥ Σ π^k over the arcs at i, for every k; ω ≥ Σ μ⁰ + Σ ν.
//! Rules for arcs not incident to i are fixed at zero.
//!
//! There is no conic solver here. The model can be written to a text file
//! for an external solver, or evaluated at fixed (x, μ), which yields an upper
//! bound on the worst-case cost of the support of x.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::instance::{EdgeSubset, LocUncInstance};
use crate::metric::MetricKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarKind {
    Binary,
    NonNegative,
    Free,
}

impl VarKind {
    fn tag(self) -> &'static str {
        match self {
            VarKind::Binary => "bin",
            VarKind::NonNegative => "nonneg",
            VarKind::Free => "free",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Var {
    pub name: String,
    pub kind: VarKind,
}

/// constant + Σ coef · var
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Affine {
    pub constant: f64,
    pub terms: Vec<(usize, f64)>,
}

impl Affine {
    fn var(v: usize) -> Self {
        Affine { constant: 0.0, terms: vec![(v, 1.0)] }
    }

    pub fn eval(&self, values: &[f64]) -> f64 {
        self.terms.iter().fold(self.constant, |acc, &(v, c)| acc + c * values[v])
    }
}

/// expr ≥ 0
#[derive(Clone, Debug, PartialEq)]
pub struct Linear(pub Affine);

/// t ≥ ‖v‖₂
#[derive(Clone, Debug, PartialEq)]
pub struct Soc {
    pub t: Affine,
    pub v: Vec<Affine>,
}

/// Variables attached to vertex i and one of its incident arcs.
#[derive(Clone, Debug, PartialEq)]
pub struct Incidence {
    pub arc: usize,
    pub tail: bool,
    /// ℓ scalar variables of μ_{i,e}.
    pub mu: Vec<usize>,
    /// ν^k and π^k per extreme point k of U_i.
    pub nu: Vec<usize>,
    pub pi: Vec<usize>,
    pub soc: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConicModel {
    pub vars: Vec<Var>,
    pub linear: Vec<Linear>,
    pub soc: Vec<Soc>,
    /// Binary x_e per edge.
    pub x: Vec<usize>,
    pub omega: Option<usize>,
    pub mu0: Vec<usize>,
    /// ν_e per arc and its cone row.
    pub nu_arc: Vec<usize>,
    pub soc_arc: Vec<usize>,
    pub arcs: Vec<(usize, usize)>,
    pub big_m: Vec<f64>,
    pub incidences: Vec<Vec<Incidence>>,
    pub dim: usize,
    pub family: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModelCounts {
    pub variables: usize,
    pub binaries: usize,
    pub linear: usize,
    pub soc: usize,
}

impl ConicModel {
    fn add_var(&mut self, name: String, kind: VarKind) -> usize {
        self.vars.push(Var { name, kind });
        self.vars.len() - 1
    }

    pub fn counts(&self) -> ModelCounts {
        ModelCounts {
            variables: self.vars.len(),
            binaries: self.x.len(),
            linear: self.linear.len(),
            soc: self.soc.len(),
        }
    }
}

/// Closed-form sizes for a graph with m edges, dimension ℓ, and per-vertex
/// degrees and set sizes: binaries m; cones m + Σ_i deg(i)|U_i|; linear rows
/// 1 + Σ_i |U_i| + Σ_i deg(i)|U_i|; variables
/// m + 1 + n + m + 2Σ_i deg(i)|U_i| + 2mℓ.
pub fn expected_counts(m: usize, dim: usize, degrees: &[usize], sizes: &[usize]) -> ModelCounts {
    let dk: usize = degrees.iter().zip(sizes).map(|(d, s)| d * s).sum();
    let k: usize = sizes.iter().sum();
    let n = degrees.len();
    ModelCounts { variables: 2 * m + 1 + n + 2 * dk + 2 * m * dim, binaries: m, linear: 1 + k + dk, soc: m + dk }
}

pub fn build_adr_model(inst: &LocUncInstance) -> Result<ConicModel> {
    let space = inst.space();
    let dim = match space.kind() {
        MetricKind::Euclidean { .. } => space.dimension().unwrap_or(0),
        _ => return Err(Error::UnsupportedMetric("affine decision rules need a Euclidean metric".into())),
    };
    let g = inst.graph();
    let n = g.n();
    let mut md = ConicModel { dim, family: inst.family().name().to_string(), ..ConicModel::default() };
    md.arcs = g.edges().to_vec();
    md.big_m = md.arcs.iter().map(|&(i, j)| inst.dmax(i, j)).collect();
    for e in 0..g.m() {
        let v = md.add_var(format!("x_{e}"), VarKind::Binary);
        md.x.push(v);
    }
    let omega = md.add_var("omega".into(), VarKind::Free);
    md.omega = Some(omega);
    for i in 0..n {
        let v = md.add_var(format!("mu0_{i}"), VarKind::Free);
        md.mu0.push(v);
    }
    for &(i, j) in g.edges() {
        let v = md.add_var(format!("nu_{i}_{j}"), VarKind::NonNegative);
        md.nu_arc.push(v);
    }
    md.incidences = vec![Vec::new(); n];
    for i in 0..n {
        let mut inc: Vec<(usize, bool)> =
            g.neighbors(i).iter().map(|&(_, e)| (e, g.edge(e).0 == i)).collect();
        inc.sort_unstable();
        for (e, tail) in inc {
            let (a, b) = g.edge(e);
            let mu = (0..dim).map(|d| md.add_var(format!("mu_{i}_{a}_{b}_{d}"), VarKind::Free)).collect();
            let sz = inst.uset(i).len();
            let nu = (0..sz).map(|k| md.add_var(format!("nuk_{i}_{a}_{b}_{k}"), VarKind::NonNegative)).collect();
            let pi = (0..sz).map(|k| md.add_var(format!("pi_{i}_{a}_{b}_{k}"), VarKind::NonNegative)).collect();
            md.incidences[i].push(Incidence { arc: e, tail, mu, nu, pi, soc: Vec::new() });
        }
    }

    // ω ≥ Σ μ⁰ + Σ ν
    let mut terms = vec![(omega, 1.0)];
    terms.extend(md.mu0.iter().map(|&v| (v, -1.0)));
    terms.extend(md.nu_arc.iter().map(|&v| (v, -1.0)));
    md.linear.push(Linear(Affine { constant: 0.0, terms }));
    // μ⁰_i ≥ Σ_e π^k_{i,e}
    for i in 0..n {
        for k in 0..inst.uset(i).len() {
            let mut terms = vec![(md.mu0[i], 1.0)];
            terms.extend(md.incidences[i].iter().map(|inc| (inc.pi[k], -1.0)));
            md.linear.push(Linear(Affine { constant: 0.0, terms }));
        }
    }
    // π ≥ ν − M(1 − x)  ⇔  π − ν − M x + M ≥ 0
    for i in 0..n {
        for inc in &md.incidences[i] {
            let m_e = md.big_m[inc.arc];
            for k in 0..inc.nu.len() {
                md.linear.push(Linear(Affine {
                    constant: m_e,
                    terms: vec![(inc.pi[k], 1.0), (inc.nu[k], -1.0), (md.x[inc.arc], -m_e)],
                }));
            }
        }
    }
    // ν_ij ≥ ‖μ_{i,ij} + μ_{j,ij}‖
    for (e, &(i, j)) in md.arcs.clone().iter().enumerate() {
        let mi = &md.incidences[i].iter().find(|c| c.arc == e).expect("incident").mu;
        let mj = &md.incidences[j].iter().find(|c| c.arc == e).expect("incident").mu;
        let v = (0..dim).map(|d| Affine { constant: 0.0, terms: vec![(mi[d], 1.0), (mj[d], 1.0)] }).collect();
        md.soc.push(Soc { t: Affine::var(md.nu_arc[e]), v });
        md.soc_arc.push(md.soc.len() - 1);
    }
    // ν^k ≥ ‖u_i^k ∓ μ‖
    for i in 0..n {
        for c in 0..md.incidences[i].len() {
            let (tail, mu, nu) = {
                let inc = &md.incidences[i][c];
                (inc.tail, inc.mu.clone(), inc.nu.clone())
            };
            let sign = if tail { -1.0 } else { 1.0 };
            for (k, &p) in inst.uset(i).iter().enumerate() {
                let u = space.coords(p).expect("euclidean point");
                let v = (0..dim).map(|d| Affine { constant: u[d], terms: vec![(mu[d], sign)] }).collect();
                md.soc.push(Soc { t: Affine::var(nu[k]), v });
                let row = md.soc.len() - 1;
                md.incidences[i][c].soc.push(row);
            }
        }
    }
    Ok(md)
}

/// μ values per vertex and incidence (in the order of `model.incidences`).
pub type MuValues = Vec<Vec<Vec<f64>>>;

/// The centroid rule: on an arc (i, j) of the support, μ_{i,ij} = c_i and
/// μ_{j,ij} = −c_j, where c is the centroid of the set's points; zero on the
/// other arcs. Then ν_ij = ‖c_i − c_j‖ and ν^k = ‖u^k − c‖ at both ends.
pub fn centroid_mu(inst: &LocUncInstance, model: &ConicModel, x: &[bool]) -> MuValues {
    let space = inst.space();
    let centroid = |i: usize| -> Vec<f64> {
        let pts = inst.uset(i);
        let mut c = vec![0.0; model.dim];
        for &p in pts {
            for (d, x) in space.coords(p).expect("euclidean point").iter().enumerate() {
                c[d] += x / pts.len() as f64;
            }
        }
        c
    };
    model
        .incidences
        .iter()
        .enumerate()
        .map(|(i, incs)| {
            let c = centroid(i);
            incs.iter()
                .map(|inc| {
                    if !x[inc.arc] {
                        vec![0.0; model.dim]
                    } else if inc.tail {
                        c.clone()
                    } else {
                        c.iter().map(|v| -v).collect()
                    }
                })
                .collect()
        })
        .collect()
}

/// Smallest ω feasible for the model with x and μ fixed; returns ω and the full
/// variable assignment.
pub fn adr_assignment(model: &ConicModel, x: &[bool], mu: &MuValues) -> (f64, Vec<f64>) {
    let mut val = vec![0.0; model.vars.len()];
    for (e, &v) in model.x.iter().enumerate() {
        val[v] = if x[e] { 1.0 } else { 0.0 };
    }
    for (incs, mus) in model.incidences.iter().zip(mu) {
        for (inc, m) in incs.iter().zip(mus) {
            for (&v, &y) in inc.mu.iter().zip(m) {
                val[v] = y;
            }
        }
    }
    let norm = |s: &Soc, val: &[f64]| s.v.iter().map(|a| a.eval(val).powi(2)).sum::<f64>().sqrt();
    for (e, &row) in model.soc_arc.iter().enumerate() {
        val[model.nu_arc[e]] = norm(&model.soc[row], &val);
    }
    for (i, incs) in model.incidences.iter().enumerate() {
        for inc in incs {
            let slack = model.big_m[inc.arc] * (1.0 - val[model.x[inc.arc]]);
            for (k, &row) in inc.soc.iter().enumerate() {
                let nu = norm(&model.soc[row], &val);
                val[inc.nu[k]] = nu;
                val[inc.pi[k]] = (nu - slack).max(0.0);
            }
        }
        let sz = incs.first().map_or(0, |c| c.nu.len());
        let worst = (0..sz)
            .map(|k| incs.iter().map(|c| val[c.pi[k]]).sum::<f64>())
            .fold(0.0, f64::max);
        val[model.mu0[i]] = worst;
    }
    let omega = model.mu0.iter().chain(&model.nu_arc).map(|&v| val[v]).sum();
    if let Some(o) = model.omega {
        val[o] = omega;
    }
    (omega, val)
}

/// Upper bound on c(support(x)) certified by the fixed decision rules.
pub fn adr_bound_evaluate(model: &ConicModel, x: &[bool], mu: &MuValues) -> f64 {
    adr_assignment(model, x, mu).0
}

/// Bound for an edge set under the centroid rule.
pub fn adr_centroid_bound(inst: &LocUncInstance, model: &ConicModel, f: &EdgeSubset) -> f64 {
    let mut x = vec![false; model.x.len()];
    for &e in f.edges() {
        x[e] = true;
    }
    let mu = centroid_mu(inst, model, &x);
    adr_bound_evaluate(model, &x, &mu)
}

/// Largest violation of any constraint (or variable bound) at `val`.
pub fn max_violation(model: &ConicModel, val: &[f64]) -> f64 {
    let mut worst: f64 = 0.0;
    for (v, var) in model.vars.iter().enumerate() {
        match var.kind {
            VarKind::NonNegative => worst = worst.max(-val[v]),
            VarKind::Binary => worst = worst.max(val[v] * (1.0 - val[v]).abs()),
            VarKind::Free => {}
        }
    }
    for Linear(a) in &model.linear {
        worst = worst.max(-a.eval(val));
    }
    for s in &model.soc {
        let n = s.v.iter().map(|a| a.eval(val).powi(2)).sum::<f64>().sqrt();
        worst = worst.max(n - s.t.eval(val));
    }
    worst
}

fn write_affine(out: &mut String, a: &Affine, vars: &[Var]) {
    let _ = write!(out, "{}", a.constant);
    for &(v, c) in &a.terms {
        let _ = write!(out, " {} {}", c, vars[v].name);
    }
}

/// Plain-text model. The header gives the dimensions; each following section
/// is present only when nonempty. See the README for the grammar.
pub fn serialize_model(model: &ConicModel) -> String {
    let c = model.counts();
    let mut out = String::new();
    let _ = writeln!(out, "CONIC 1");
    let _ = writeln!(out, "DIMS vars {} binaries {} linear {} soc {} ell {}", c.variables, c.binaries, c.linear, c.soc, model.dim);
    if model.vars.is_empty() {
        return out;
    }
    let _ = writeln!(out, "FAMILY {}", model.family);
    let _ = writeln!(out, "VARIABLES");
    for v in &model.vars {
        let _ = writeln!(out, "{} {}", v.name, v.kind.tag());
    }
    let _ = writeln!(out, "BINARIES");
    for (e, &v) in model.x.iter().enumerate() {
        let (i, j) = model.arcs[e];
        let _ = writeln!(out, "{} {} {} M {}", model.vars[v].name, i, j, model.big_m[e]);
    }
    let _ = writeln!(out, "LINEAR");
    for Linear(a) in &model.linear {
        write_affine(&mut out, a, &model.vars);
        let _ = writeln!(out, " >= 0");
    }
    let _ = writeln!(out, "SOC");
    for s in &model.soc {
        write_affine(&mut out, &s.t, &model.vars);
        out.push_str(" >=");
        for a in &s.v {
            out.push_str(" | ");
            write_affine(&mut out, a, &model.vars);
        }
        out.push('\n');
    }
    let _ = writeln!(out, "OBJECTIVE");
    if let Some(o) = model.omega {
        let _ = writeln!(out, "min {}", model.vars[o].name);
    }
    let _ = writeln!(out, "END");
    out
}

pub fn write_model(model: &ConicModel, path: &std::path::Path) -> Result<()> {
    std::fs::write(path, serialize_model(model))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{FamilyDescriptor, Graph};
    use crate::metric::{MetricSpace, PointId};

    fn single_edge() -> LocUncInstance {
        let g = Graph::new(2, vec![(0, 1)]).unwrap();
        let s = MetricSpace::euclidean(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![3.0, 0.0], vec![3.0, 1.0]]).unwrap();
        let u = vec![vec![PointId(0), PointId(1)], vec![PointId(2), PointId(3)]];
        LocUncInstance::new(g, s, u, FamilyDescriptor::SpanningTree).unwrap()
    }

    #[test]
    fn single_edge_counts() {
        let md = build_adr_model(&single_edge()).unwrap();
        let c = md.counts();
        assert_eq!((c.binaries, c.soc), (1, 5));
        assert_eq!(c, expected_counts(1, 2, &[1, 1], &[2, 2]));
    }

    #[test]
    fn centroid_assignment_is_feasible() {
        let inst = single_edge();
        let md = build_adr_model(&inst).unwrap();
        let x = vec![true];
        let (omega, val) = adr_assignment(&md, &x, &centroid_mu(&inst, &md, &x));
        assert!(max_violation(&md, &val) < 1e-12);
        assert!(omega >= 10f64.sqrt() - 1e-9);
    }

    #[test]
    fn empty_model_is_header_only() {
        assert_eq!(serialize_model(&ConicModel::default()).lines().count(), 2);
    }

    #[test]
    fn rejects_graph_metric() {
        let g = Graph::new(2, vec![(0, 1)]).unwrap();
        let s = MetricSpace::graph_induced(2, vec![(0, 1, 1.0)]).unwrap();
        let inst = LocUncInstance::new(g, s, vec![vec![PointId(0)], vec![PointId(1)]], FamilyDescriptor::SpanningTree).unwrap();
        assert!(matches!(build_adr_model(&inst), Err(Error::UnsupportedMetric(_))));
    }
}
