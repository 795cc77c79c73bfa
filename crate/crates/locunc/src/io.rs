//! Line-oriented instance text format.
//!
//! ```text
//! # comment
//! GRAPH <n> <m>
//! <a> <b>                      (m lines, 0-based vertices)
//! METRIC euclidean <points> <dim>
//! <x_1> … <x_dim>              (one line per point)
//! METRIC explicit <points>     (validated matrix)  | METRIC raw <points> (unchecked)
//! <d_1> … <d_points>           (one row per point)
//! METRIC graph <points> <edges>
//! <a> <b> <w>                  (one line per weighted edge)
//! USETS
//! <i>: <p> <p> …               (one line per vertex, in order)
//! FAMILY stpath <s> <t> | spanning | steiner <t…> | pmedian <p> | assignment | explicit <k>
//! clients: … / sites: …        (pmedian)   left: … / right: …   (assignment)
//! <e> <e> … | -                (explicit: k lines of edge ids, `-` for ∅)
//! END
//! ```
//! Reals are written in Rust's shortest round-trip form, so parse ∘ write is
//! the identity.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::instance::{EdgeSubset, FamilyDescriptor, Graph, LocUncInstance};
use crate::metric::{check_metric, MetricKind, MetricSpace, PointId};

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn instance_to_string(inst: &LocUncInstance) -> String {
    let mut s = String::new();
    let g = inst.graph();
    let _ = writeln!(s, "GRAPH {} {}", g.n(), g.m());
    for &(a, b) in g.edges() {
        let _ = writeln!(s, "{a} {b}");
    }
    let sp = inst.space();
    match sp.kind() {
        MetricKind::Euclidean { coords } => {
            let _ = writeln!(s, "METRIC euclidean {} {}", sp.len(), sp.dimension().unwrap_or(0));
            for c in coords {
                let _ = writeln!(s, "{}", join(c));
            }
        }
        MetricKind::GraphInduced { edges } => {
            let _ = writeln!(s, "METRIC graph {} {}", sp.len(), edges.len());
            for (a, b, w) in edges {
                let _ = writeln!(s, "{a} {b} {w}");
            }
        }
        MetricKind::Explicit => {
            let m = sp.matrix();
            let tag = if check_metric(&m).is_ok() { "explicit" } else { "raw" };
            let _ = writeln!(s, "METRIC {tag} {}", sp.len());
            for row in &m {
                let _ = writeln!(s, "{}", join(row));
            }
        }
    }
    let _ = writeln!(s, "USETS");
    for (i, u) in inst.usets().iter().enumerate() {
        let ids: Vec<usize> = u.iter().map(|p| p.0).collect();
        let _ = writeln!(s, "{i}: {}", join(&ids));
    }
    match inst.family() {
        FamilyDescriptor::StPath { s: a, t } => {
            let _ = writeln!(s, "FAMILY stpath {a} {t}");
        }
        FamilyDescriptor::SpanningTree => {
            let _ = writeln!(s, "FAMILY spanning");
        }
        FamilyDescriptor::SteinerTree { terminals } => {
            let _ = writeln!(s, "FAMILY steiner {}", join(terminals));
        }
        FamilyDescriptor::PMedian { clients, sites, p } => {
            let _ = writeln!(s, "FAMILY pmedian {p}\nclients: {}\nsites: {}", join(clients), join(sites));
        }
        FamilyDescriptor::Assignment { left, right } => {
            let _ = writeln!(s, "FAMILY assignment\nleft: {}\nright: {}", join(left), join(right));
        }
        FamilyDescriptor::ExplicitList(list) => {
            let _ = writeln!(s, "FAMILY explicit {}", list.len());
            for f in list {
                let _ = writeln!(s, "{}", if f.is_empty() { "-".to_string() } else { join(f.edges()) });
            }
        }
    }
    s.push_str("END\n");
    s
}

pub fn write_instance(inst: &LocUncInstance, path: &Path) -> Result<()> {
    std::fs::write(path, instance_to_string(inst))?;
    Ok(())
}

pub fn parse_instance(path: &Path) -> Result<LocUncInstance> {
    parse_instance_str(&std::fs::read_to_string(path)?)
}

struct Lines<'a> {
    it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        Lines { it: Box::new(it), last: 0 }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        match self.it.next() {
            Some((n, l)) => {
                self.last = n;
                Ok((n, l))
            }
            None => Err(Error::Parse { line: self.last + 1, msg: format!("unexpected end of input, expected {what}") }),
        }
    }
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn nums<T: std::str::FromStr>(line: usize, s: &str) -> Result<Vec<T>> {
    s.split_whitespace().map(|t| t.parse::<T>().map_err(|_| err(line, format!("bad number '{t}'")))).collect()
}

fn exact<T: std::str::FromStr>(line: usize, s: &str, k: usize) -> Result<Vec<T>> {
    let v = nums(line, s)?;
    if v.len() != k {
        return Err(err(line, format!("expected {k} values, found {}", v.len())));
    }
    Ok(v)
}

fn header<'a>(line: usize, l: &'a str, key: &str) -> Result<&'a str> {
    l.strip_prefix(key)
        .filter(|r| r.is_empty() || r.starts_with(' '))
        .map(str::trim)
        .ok_or_else(|| err(line, format!("expected {key}")))
}

fn labelled(lines: &mut Lines, label: &str) -> Result<Vec<usize>> {
    let (ln, l) = lines.next(label)?;
    let rest = l.strip_prefix(label).and_then(|r| r.strip_prefix(':')).ok_or_else(|| err(ln, format!("expected '{label}:'")))?;
    nums(ln, rest)
}

pub fn parse_instance_str(text: &str) -> Result<LocUncInstance> {
    let mut lines = Lines::new(text);
    let (ln, l) = lines.next("GRAPH")?;
    let gm: Vec<usize> = exact(ln, header(ln, l, "GRAPH")?, 2)?;
    let mut edges = Vec::with_capacity(gm[1]);
    for _ in 0..gm[1] {
        let (ln, l) = lines.next("edge")?;
        let e: Vec<usize> = exact(ln, l, 2)?;
        edges.push((e[0], e[1]));
    }
    let graph = Graph::with_isolated(gm[0], edges).map_err(|e| err(ln, e.to_string()))?;

    let (ln, l) = lines.next("METRIC")?;
    let words: Vec<&str> = header(ln, l, "METRIC")?.split_whitespace().collect();
    let count = |k: usize| -> Result<Vec<usize>> { exact(ln, &words[1..].join(" "), k) };
    let space = match words.first().copied() {
        Some("euclidean") => {
            let pd = count(2)?;
            let mut coords = Vec::with_capacity(pd[0]);
            for _ in 0..pd[0] {
                let (ln, l) = lines.next("point")?;
                coords.push(exact::<f64>(ln, l, pd[1])?);
            }
            MetricSpace::euclidean(coords).map_err(|e| err(ln, e.to_string()))?
        }
        Some(tag @ ("explicit" | "raw")) => {
            let p = count(1)?[0];
            let mut rows = Vec::with_capacity(p);
            for _ in 0..p {
                let (ln, l) = lines.next("matrix row")?;
                rows.push(exact::<f64>(ln, l, p)?);
            }
            let r = if tag == "explicit" { MetricSpace::explicit(rows) } else { MetricSpace::explicit_unchecked(rows) };
            r.map_err(|e| err(ln, e.to_string()))?
        }
        Some("graph") => {
            let pe = count(2)?;
            let mut es = Vec::with_capacity(pe[1]);
            for _ in 0..pe[1] {
                let (ln, l) = lines.next("weighted edge")?;
                let t: Vec<&str> = l.split_whitespace().collect();
                if t.len() != 3 {
                    return Err(err(ln, "expected '<a> <b> <w>'"));
                }
                let a = exact::<usize>(ln, &t[..2].join(" "), 2)?;
                let w = exact::<f64>(ln, t[2], 1)?[0];
                es.push((a[0], a[1], w));
            }
            MetricSpace::graph_induced(pe[0], es).map_err(|e| err(ln, e.to_string()))?
        }
        _ => return Err(err(ln, "unknown metric kind")),
    };

    let (ln, l) = lines.next("USETS")?;
    header(ln, l, "USETS")?;
    let mut usets = Vec::with_capacity(graph.n());
    for i in 0..graph.n() {
        let (ln, l) = lines.next("uncertainty set")?;
        let (idx, rest) = l.split_once(':').ok_or_else(|| err(ln, "expected '<i>: <points>'"))?;
        if idx.trim().parse::<usize>().ok() != Some(i) {
            return Err(err(ln, format!("expected set of vertex {i}")));
        }
        let pts: Vec<usize> = nums(ln, rest)?;
        if pts.is_empty() {
            return Err(err(ln, format!("empty uncertainty set for vertex {i}")));
        }
        usets.push(pts.into_iter().map(PointId).collect());
    }

    let (fln, l) = lines.next("FAMILY")?;
    let words: Vec<&str> = header(fln, l, "FAMILY")?.split_whitespace().collect();
    let args = words[1..].join(" ");
    let family = match words.first().copied() {
        Some("stpath") => {
            let st: Vec<usize> = exact(fln, &args, 2)?;
            FamilyDescriptor::StPath { s: st[0], t: st[1] }
        }
        Some("spanning") => FamilyDescriptor::SpanningTree,
        Some("steiner") => FamilyDescriptor::SteinerTree { terminals: nums(fln, &args)? },
        Some("pmedian") => {
            let p = exact::<usize>(fln, &args, 1)?[0];
            let clients = labelled(&mut lines, "clients")?;
            let sites = labelled(&mut lines, "sites")?;
            FamilyDescriptor::PMedian { clients, sites, p }
        }
        Some("assignment") => {
            let left = labelled(&mut lines, "left")?;
            let right = labelled(&mut lines, "right")?;
            FamilyDescriptor::Assignment { left, right }
        }
        Some("explicit") => {
            let k = exact::<usize>(fln, &args, 1)?[0];
            let mut list = Vec::with_capacity(k);
            for _ in 0..k {
                let (ln, l) = lines.next("edge subset")?;
                list.push(EdgeSubset::new(if l == "-" { Vec::new() } else { nums(ln, l)? }));
            }
            FamilyDescriptor::ExplicitList(list)
        }
        _ => return Err(err(fln, "unknown family")),
    };
    let (ln, l) = lines.next("END")?;
    if l != "END" {
        return Err(err(ln, "expected END"));
    }
    LocUncInstance::new(graph, space, usets, family).map_err(|e| err(fln, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::tight::gen_tight_path;

    #[test]
    fn round_trip_tight_path() {
        let (inst, _) = gen_tight_path(4).unwrap();
        let text = instance_to_string(&inst);
        assert_eq!(parse_instance_str(&text).unwrap(), inst);
    }

    #[test]
    fn empty_uset_reports_line() {
        let text = "GRAPH 2 1\n0 1\nMETRIC euclidean 1 1\n0\nUSETS\n0: 0\n1:\nFAMILY spanning\nEND\n";
        match parse_instance_str(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 7),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn truncated_input() {
        assert!(matches!(parse_instance_str("GRAPH 2 1\n"), Err(Error::Parse { line: 2, .. })));
    }
}
