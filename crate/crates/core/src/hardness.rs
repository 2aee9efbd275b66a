//! Target-set instances built from restricted CNF formulas.
//!
//! Each variable becomes a five-vertex gadget (literal vertices `x`, `x̄`
//! and a triangle `a b c` with `x–a`, `x̄–b`, `x̄–c`), each clause a
//! triangle, and each literal occurrence an edge from the literal vertex to
//! its own triangle vertex. Every edge is then replaced by a path with
//! `2⌊d/2⌋` inner vertices. Literal vertices get `tau = deg`, everything else
//! `tau = 1`, and the formula is satisfiable iff a target set of size `n`
//! exists.
//!
//! Planarity of the variable/clause incidence graph is not checked; the
//! correspondence between assignments and target sets does not need it.

use std::fmt;

use crate::error::{parse_err, Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::instance::{Instance, ThresholdMap};
use crate::sim::{is_target_set, ActiveSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedCnf {
    pub n_vars: usize,
    /// Non-zero DIMACS literals.
    pub clauses: Vec<Vec<i64>>,
}

/// Parses DIMACS CNF. Clauses may span lines and must end with `0`.
pub fn parse_dimacs(text: &str) -> Result<RestrictedCnf> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if header.is_some() {
                return Err(parse_err(line_no, "duplicate problem line"));
            }
            if toks.len() != 4 || toks[1] != "cnf" {
                return Err(parse_err(line_no, "expected `p cnf <vars> <clauses>`"));
            }
            let num = |t: &str| {
                t.parse::<usize>()
                    .map_err(|_| parse_err(line_no, format!("expected a number, found {t:?}")))
            };
            header = Some((num(toks[2])?, num(toks[3])?));
            continue;
        }
        let (n_vars, _) = header.ok_or_else(|| parse_err(line_no, "clause before problem line"))?;
        for tok in line.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| parse_err(line_no, format!("expected a literal, found {tok:?}")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > n_vars {
                return Err(parse_err(
                    line_no,
                    format!("literal {lit} exceeds {n_vars} variables"),
                ));
            } else {
                current.push(lit);
            }
        }
    }
    let (n_vars, m) = header.ok_or_else(|| parse_err(last_line.max(1), "missing problem line"))?;
    if !current.is_empty() {
        return Err(parse_err(last_line, "last clause is not terminated by 0"));
    }
    if clauses.len() != m {
        return Err(parse_err(
            last_line.max(1),
            format!(
                "problem line announces {m} clauses, found {}",
                clauses.len()
            ),
        ));
    }
    Ok(RestrictedCnf { n_vars, clauses })
}

impl fmt::Display for RestrictedCnf {
    /// DIMACS text.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.n_vars, self.clauses.len())?;
        for c in &self.clauses {
            for lit in c {
                write!(f, "{lit} ")?;
            }
            writeln!(f, "0")?;
        }
        Ok(())
    }
}

/// Every way `cnf` departs from the restricted form (empty when it conforms).
pub fn validate_restricted(cnf: &RestrictedCnf) -> Vec<String> {
    let mut out = Vec::new();
    if cnf.n_vars == 0 {
        out.push("no variables".to_string());
    }
    if cnf.clauses.is_empty() {
        out.push("no clauses".to_string());
    }
    let mut pos = vec![0usize; cnf.n_vars + 1];
    let mut neg = vec![0usize; cnf.n_vars + 1];
    for (j, c) in cnf.clauses.iter().enumerate() {
        if c.len() < 2 || c.len() > 3 {
            out.push(format!("clause {} has {} literals", j + 1, c.len()));
        }
        for (p, &lit) in c.iter().enumerate() {
            if c[..p].contains(&lit) {
                out.push(format!("clause {} repeats literal {lit}", j + 1));
            }
            if c[..p].contains(&-lit) {
                out.push(format!(
                    "clause {} contains both {} and {}",
                    j + 1,
                    lit.abs(),
                    -lit.abs()
                ));
            }
            let v = lit.unsigned_abs() as usize;
            if v == 0 || v > cnf.n_vars {
                out.push(format!("clause {} has out-of-range literal {lit}", j + 1));
            } else if lit > 0 {
                pos[v] += 1;
            } else {
                neg[v] += 1;
            }
        }
    }
    for v in 1..=cnf.n_vars {
        if pos[v] != 2 {
            out.push(format!("variable {v} occurs positively {} times", pos[v]));
        }
        if neg[v] != 1 {
            out.push(format!("variable {v} occurs negatively {} times", neg[v]));
        }
    }
    out
}

/// `assignment[i]` is the value of variable `i + 1`.
pub fn evaluate(cnf: &RestrictedCnf, assignment: &[bool]) -> bool {
    cnf.clauses.iter().all(|c| {
        c.iter()
            .any(|&lit| assignment[lit.unsigned_abs() as usize - 1] == (lit > 0))
    })
}

/// First satisfying assignment in binary counting order (variable 1 is the
/// lowest bit, `false` first), by exhaustive search.
pub fn brute_force_sat(cnf: &RestrictedCnf) -> Option<Vec<bool>> {
    assert!(cnf.n_vars < 32, "exhaustive SAT is for small formulas");
    (0u32..1 << cnf.n_vars)
        .map(|mask| {
            (0..cnf.n_vars)
                .map(|i| mask >> i & 1 == 1)
                .collect::<Vec<_>>()
        })
        .find(|a| evaluate(cnf, a))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum LabelRole {
    Literal,
    Gadget,
    Clause,
    Subdivision,
}

impl fmt::Display for LabelRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LabelRole::Literal => "literal",
            LabelRole::Gadget => "gadget",
            LabelRole::Clause => "clause",
            LabelRole::Subdivision => "subdivision",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Label {
    pub role: LabelRole,
    /// `x3`, `nx3`, `a3`, `b3`, `c3`, `t2.1` (clause 2, first corner) or
    /// `s7.2` (second inner vertex on the path replacing edge 7).
    pub name: String,
    pub vertex: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedInstance {
    pub instance: Instance,
    pub k: usize,
    /// One entry per vertex, in id order.
    pub labels: Vec<Label>,
    pub d: usize,
}

impl GeneratedInstance {
    /// Vertex of literal `x_v` (`negated = false`) or `x̄_v`.
    pub fn literal_vertex(&self, v: usize, negated: bool) -> usize {
        5 * (v - 1) + if negated { 2 } else { 1 }
    }

    pub fn n_vars(&self) -> usize {
        self.k
    }

    /// Lines `<role> <name> <id>`.
    pub fn labels_text(&self) -> String {
        self.labels
            .iter()
            .map(|l| format!("{} {} {}\n", l.role, l.name, l.vertex))
            .collect()
    }
}

/// Number of vertices the construction produces.
pub fn expected_order(n_vars: usize, n_clauses: usize, d: usize) -> usize {
    5 * n_vars + 3 * n_clauses + 2 * (d / 2) * (9 * n_vars + 3 * n_clauses)
}

pub fn generate(cnf: &RestrictedCnf, d: usize) -> Result<GeneratedInstance> {
    let violations = validate_restricted(cnf);
    if !violations.is_empty() {
        return Err(Error::NotRestricted(violations.join("; ")));
    }
    if d == 0 {
        return Err(Error::InvalidInstance("distance must be positive".into()));
    }
    let n = cnf.n_vars;
    let m = cnf.clauses.len();
    let mut labels = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for v in 1..=n {
        let base = 5 * (v - 1);
        let (x, nx, a, b, c) = (base + 1, base + 2, base + 3, base + 4, base + 5);
        labels.push(Label {
            role: LabelRole::Literal,
            name: format!("x{v}"),
            vertex: x,
        });
        labels.push(Label {
            role: LabelRole::Literal,
            name: format!("nx{v}"),
            vertex: nx,
        });
        for (name, id) in [("a", a), ("b", b), ("c", c)] {
            labels.push(Label {
                role: LabelRole::Gadget,
                name: format!("{name}{v}"),
                vertex: id,
            });
        }
        edges.extend([(x, a), (a, b), (b, c), (a, c), (nx, b), (nx, c)]);
    }
    let corner = |j: usize, p: usize| 5 * n + 3 * j + p + 1;
    for j in 0..m {
        for p in 0..3 {
            labels.push(Label {
                role: LabelRole::Clause,
                name: format!("t{}.{}", j + 1, p + 1),
                vertex: corner(j, p),
            });
        }
        edges.extend([
            (corner(j, 0), corner(j, 1)),
            (corner(j, 1), corner(j, 2)),
            (corner(j, 0), corner(j, 2)),
        ]);
    }
    for (j, clause) in cnf.clauses.iter().enumerate() {
        for (p, &lit) in clause.iter().enumerate() {
            let v = lit.unsigned_abs() as usize;
            let lv = 5 * (v - 1) + if lit > 0 { 1 } else { 2 };
            edges.push((lv, corner(j, p)));
        }
    }
    debug_assert_eq!(edges.len(), 9 * n + 3 * m);

    let inner = 2 * (d / 2);
    let mut next = 5 * n + 3 * m;
    let mut final_edges = Vec::with_capacity(edges.len() * (inner + 1));
    for (e, &(u, v)) in edges.iter().enumerate() {
        let mut prev = u;
        for s in 0..inner {
            next += 1;
            labels.push(Label {
                role: LabelRole::Subdivision,
                name: format!("s{}.{}", e + 1, s + 1),
                vertex: next,
            });
            final_edges.push((prev, next));
            prev = next;
        }
        final_edges.push((prev, v));
    }
    let order = next;
    assert_eq!(order, expected_order(n, m, d));
    let graph = Graph::from_edges(
        order,
        final_edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))),
    )?;
    let literal = |u: usize| u <= 5 * n && (u - 1) % 5 < 2;
    let tau = graph
        .vertices()
        .map(|u| if literal(u) { graph.degree(u) } else { 1 })
        .collect();
    let instance = Instance::new(graph, ThresholdMap::new(tau))?;
    Ok(GeneratedInstance {
        instance,
        k: n,
        labels,
        d,
    })
}

/// `{x_i : true} ∪ {x̄_i : false}`; `assignment[i]` is variable `i + 1`.
pub fn assignment_to_target(gen: &GeneratedInstance, assignment: &[bool]) -> VertexSet {
    assert_eq!(assignment.len(), gen.k, "assignment must be total");
    assignment
        .iter()
        .enumerate()
        .map(|(i, &val)| gen.literal_vertex(i + 1, !val))
        .collect()
}

/// Reads an assignment off a target set of size at most `n`: `x_i ∈ X` sets
/// variable `i` true, otherwise `x̄_i ∈ X` sets it false, and untouched
/// variables default to true.
pub fn target_to_assignment(gen: &GeneratedInstance, x: &VertexSet) -> Option<Vec<bool>> {
    let inst = &gen.instance;
    if x.len() > gen.k || x.iter().any(|&u| u == 0 || u > inst.n()) {
        return None;
    }
    if !is_target_set(inst, &ActiveSet::from_ids(inst.n(), x)) {
        return None;
    }
    Some(
        (1..=gen.k)
            .map(|v| {
                x.contains(&gen.literal_vertex(v, false))
                    || !x.contains(&gen.literal_vertex(v, true))
            })
            .collect(),
    )
}
