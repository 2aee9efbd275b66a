//! Instances `(G, tau)` in the restricted regime `tau(u) ∈ {0, 1, deg(u)}`,
//! plus the line-oriented instance file format and the seed-set format.
//!
//! Instance files look like
//!
//! ```text
//! # comment
//! p ntss <n> <m>
//! t <vertex> <threshold | deg>     (n lines)
//! e <u> <v>                         (m lines, u < v)
//! ```

use std::fmt::Write as _;

use crate::error::{parse_err, Error, Result};
use crate::graph::{Graph, VertexSet};

/// Per-vertex threshold values, indexed by 1-based vertex id.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ThresholdMap(Vec<usize>);

impl ThresholdMap {
    pub fn new(values: Vec<usize>) -> Self {
        ThresholdMap(values)
    }

    pub fn get(&self, u: usize) -> usize {
        self.0[u - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Class of a vertex in the restricted regime.
///
/// `Full` means `tau(u) = deg(u) >= 2`. Overlaps at degree at most one are
/// resolved as `Zero` before `One` before `Full`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexClass {
    Zero,
    One,
    Full,
}

impl VertexClass {
    pub fn of(tau: usize, degree: usize) -> Self {
        debug_assert!(tau <= 1 || tau == degree);
        match tau {
            0 => VertexClass::Zero,
            1 => VertexClass::One,
            _ => VertexClass::Full,
        }
    }
}

/// A graph together with a threshold function satisfying
/// `tau(u) ∈ {0, 1, deg(u)}` for every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Instance {
    graph: Graph,
    tau: ThresholdMap,
}

impl Instance {
    /// Validates the threshold function against the graph.
    pub fn new(graph: Graph, tau: ThresholdMap) -> Result<Self> {
        if tau.len() != graph.n() {
            return Err(Error::InvalidInstance(format!(
                "{} thresholds for {} vertices",
                tau.len(),
                graph.n()
            )));
        }
        for u in graph.vertices() {
            let (t, d) = (tau.get(u), graph.degree(u));
            if t > d {
                return Err(Error::InvalidInstance(format!(
                    "vertex {u}: threshold {t} exceeds degree {d}"
                )));
            }
            if t > 1 && t != d {
                return Err(Error::InvalidInstance(format!(
                    "vertex {u}: threshold {t} not in {{0,1,deg}} (degree {d})"
                )));
            }
        }
        Ok(Instance { graph, tau })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn thresholds(&self) -> &ThresholdMap {
        &self.tau
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn tau(&self, u: usize) -> usize {
        self.tau.get(u)
    }

    pub fn class(&self, u: usize) -> VertexClass {
        VertexClass::of(self.tau(u), self.graph.degree(u))
    }

    /// The literal predicate `tau(u) = deg(u)`, which unlike
    /// [`VertexClass::Full`] also holds for degree-1 vertices with threshold 1
    /// and isolated vertices with threshold 0.
    pub fn is_saturated(&self, u: usize) -> bool {
        self.tau(u) == self.graph.degree(u)
    }

    /// First edge joining two saturated vertices, if any.
    pub fn saturated_edge(&self) -> Option<(usize, usize)> {
        self.graph
            .edges()
            .find(|&(u, v)| self.is_saturated(u) && self.is_saturated(v))
    }

    pub fn all_vertices(&self) -> VertexSet {
        self.graph.vertices().collect()
    }
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| parse_err(line, format!("expected {what}, found {tok:?}")))
}

/// Parses and validates an instance file.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut header: Option<(usize, usize)> = None;
    let mut tau_tokens: Vec<Option<Threshold>> = Vec::new();
    let mut edges = Vec::new();
    let mut t_lines = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        match toks[0] {
            "p" => {
                if header.is_some() {
                    return Err(parse_err(line, "duplicate header"));
                }
                if toks.len() != 4 || toks[1] != "ntss" {
                    return Err(parse_err(line, "expected `p ntss <n> <m>`"));
                }
                let n = parse_usize(toks[2], line, "vertex count")?;
                let m = parse_usize(toks[3], line, "edge count")?;
                header = Some((n, m));
                tau_tokens = vec![None; n];
            }
            "t" => {
                let (n, _) = header.ok_or_else(|| parse_err(line, "threshold before header"))?;
                if toks.len() != 3 {
                    return Err(parse_err(line, "expected `t <vertex> <threshold>`"));
                }
                let u = parse_usize(toks[1], line, "vertex id")?;
                if u == 0 || u > n {
                    return Err(parse_err(
                        line,
                        format!("vertex id {u} out of range 1..={n}"),
                    ));
                }
                let value = if toks[2] == "deg" {
                    Threshold::Degree
                } else {
                    Threshold::Value(parse_usize(toks[2], line, "threshold")?)
                };
                if tau_tokens[u - 1].replace(value).is_some() {
                    return Err(parse_err(
                        line,
                        format!("duplicate threshold for vertex {u}"),
                    ));
                }
                t_lines += 1;
            }
            "e" => {
                let (n, _) = header.ok_or_else(|| parse_err(line, "edge before header"))?;
                if toks.len() != 3 {
                    return Err(parse_err(line, "expected `e <u> <v>`"));
                }
                let u = parse_usize(toks[1], line, "vertex id")?;
                let v = parse_usize(toks[2], line, "vertex id")?;
                for w in [u, v] {
                    if w == 0 || w > n {
                        return Err(parse_err(
                            line,
                            format!("vertex id {w} out of range 1..={n}"),
                        ));
                    }
                }
                if u >= v {
                    return Err(parse_err(line, format!("edge {u} {v} must satisfy u < v")));
                }
                edges.push((line, u, v));
            }
            other => return Err(parse_err(line, format!("unknown line type {other:?}"))),
        }
    }

    let (n, m) = header.ok_or_else(|| parse_err(1, "missing `p ntss` header"))?;
    if edges.len() != m {
        return Err(parse_err(
            text.lines().count().max(1),
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    let mut graph = Graph::empty(n);
    for &(line, u, v) in &edges {
        graph
            .add_edge(u, v)
            .map_err(|_| parse_err(line, format!("duplicate edge {u} {v}")))?;
    }
    if t_lines != n {
        let missing = tau_tokens
            .iter()
            .position(Option::is_none)
            .map_or(0, |i| i + 1);
        return Err(parse_err(
            text.lines().count().max(1),
            format!("missing threshold line for vertex {missing}"),
        ));
    }
    let values = tau_tokens
        .iter()
        .enumerate()
        .map(|(i, t)| match t.expect("all thresholds present") {
            Threshold::Degree => graph.degree(i + 1),
            Threshold::Value(v) => v,
        })
        .collect();
    Instance::new(graph, ThresholdMap::new(values))
}

#[derive(Debug, Clone, Copy)]
enum Threshold {
    Value(usize),
    Degree,
}

/// Writes an instance in the file format; edges are emitted sorted with `u < v`.
pub fn serialize_instance(inst: &Instance) -> String {
    let g = inst.graph();
    let mut out = String::new();
    writeln!(out, "p ntss {} {}", g.n(), g.m()).unwrap();
    for u in g.vertices() {
        writeln!(out, "t {} {}", u, inst.tau(u)).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}

/// Parses a comma-separated seed set such as `1,3,5`; the empty string is the
/// empty set.
pub fn parse_vertex_set(text: &str, n: usize) -> Result<VertexSet> {
    let text = text.trim();
    let mut out = VertexSet::new();
    if text.is_empty() {
        return Ok(out);
    }
    for tok in text.split(',') {
        let tok = tok.trim();
        let u: usize = tok
            .parse()
            .map_err(|_| Error::InvalidVertexSet(format!("not a vertex id: {tok:?}")))?;
        if u == 0 || u > n {
            return Err(Error::InvalidVertexSet(format!(
                "vertex id {u} out of range 1..={n}"
            )));
        }
        if !out.insert(u) {
            return Err(Error::InvalidVertexSet(format!("vertex {u} listed twice")));
        }
    }
    Ok(out)
}

pub fn format_vertex_set<'a, I>(ids: I) -> String
where
    I: IntoIterator<Item = &'a usize>,
{
    ids.into_iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}
