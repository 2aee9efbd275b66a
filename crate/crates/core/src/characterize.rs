//! Intersection conditions characterizing target sets of kernelized
//! instances (no edge between two vertices with `tau = deg`).
//!
//! For a kernelized instance, `X` is a target set exactly when
//!
//! * `X` meets `N[U]` for every non-bipartite component `U` of the
//!   threshold-one subgraph (order at least two, no threshold-zero vertex),
//! * `X` meets both `Ā = A ∪ A' ∪ C` and `B̄ = B ∪ B' ∪ C` for every bipartite
//!   such component with sides `A`, `B`, and
//! * every sentinel `u` (threshold one, all neighbours FULL) has neighbours
//!   `v1 ∈ X` and `v2` with `N(v2) ⊆ X`.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::instance::{format_vertex_set, Instance, VertexClass};
use crate::kernel::{kernelize, Kernelization};
use crate::sim::ActiveSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PComponent {
    pub members: VertexSet,
    pub closed_nbhd: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QComponent {
    pub members: VertexSet,
    pub a: VertexSet,
    pub b: VertexSet,
    pub a_bar: VertexSet,
    pub b_bar: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Classification {
    pub p_components: Vec<PComponent>,
    pub q_components: Vec<QComponent>,
    pub sentinels: Vec<usize>,
    pub full_vertices: VertexSet,
}

/// Splits a kernelized instance into the structures the conditions refer to.
pub fn classify(inst: &Instance) -> Result<Classification> {
    if let Some((u, v)) = inst.saturated_edge() {
        return Err(Error::NotKernelized(u, v));
    }
    let g = inst.graph();
    let low: VertexSet = g
        .vertices()
        .filter(|&u| inst.class(u) != VertexClass::Full)
        .collect();
    let mut cls = Classification {
        full_vertices: g
            .vertices()
            .filter(|&u| inst.class(u) == VertexClass::Full)
            .collect(),
        ..Default::default()
    };
    for comp in g.components(&low) {
        if comp.len() < 2 || comp.iter().any(|&u| inst.tau(u) != 1) {
            continue;
        }
        match g.bipartition(&comp) {
            None => cls.p_components.push(PComponent {
                closed_nbhd: g.closed_neighborhood(&comp),
                members: comp,
            }),
            Some((a, b)) => {
                let (a_bar, b_bar) = bar_sets(g, &a, &b);
                cls.q_components.push(QComponent {
                    members: comp,
                    a,
                    b,
                    a_bar,
                    b_bar,
                });
            }
        }
    }
    for u in g.vertices() {
        if inst.tau(u) == 1
            && g.neighbors(u)
                .iter()
                .all(|&v| inst.class(v) == VertexClass::Full)
        {
            assert!(
                g.degree(u) >= 2,
                "sentinel {u} of degree {} survived kernelization",
                g.degree(u)
            );
            cls.sentinels.push(u);
        }
    }
    Ok(cls)
}

/// `(A ∪ A' ∪ C, B ∪ B' ∪ C)` for a bipartite component with sides `a`, `b`.
fn bar_sets(g: &Graph, a: &VertexSet, b: &VertexSet) -> (VertexSet, VertexSet) {
    let na = g.open_neighborhood(a);
    let nb = g.open_neighborhood(b);
    let closed_a = g.closed_neighborhood(a);
    let closed_b = g.closed_neighborhood(b);
    let a_prime: VertexSet = nb.difference(&closed_a).copied().collect();
    let b_prime: VertexSet = na.difference(&closed_b).copied().collect();
    let c: VertexSet = na.intersection(&nb).copied().collect();
    let a_bar = a.iter().chain(&a_prime).chain(&c).copied().collect();
    let b_bar = b.iter().chain(&b_prime).chain(&c).copied().collect();
    (a_bar, b_bar)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentinelCondition {
    pub vertex: usize,
    /// Every neighbour `v` of the sentinel with its neighbourhood `N(v)`.
    pub nbrs: Vec<(usize, VertexSet)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConditionSet {
    pub hitting: Vec<VertexSet>,
    pub pair_hitting: Vec<(VertexSet, VertexSet)>,
    pub sentinels: Vec<SentinelCondition>,
}

pub fn extract_conditions(cls: &Classification, graph: &Graph) -> ConditionSet {
    ConditionSet {
        hitting: cls
            .p_components
            .iter()
            .map(|p| p.closed_nbhd.clone())
            .collect(),
        pair_hitting: cls
            .q_components
            .iter()
            .map(|q| (q.a_bar.clone(), q.b_bar.clone()))
            .collect(),
        sentinels: cls
            .sentinels
            .iter()
            .map(|&u| SentinelCondition {
                vertex: u,
                nbrs: graph
                    .neighbors(u)
                    .iter()
                    .map(|&v| (v, graph.neighbors(v).iter().copied().collect()))
                    .collect(),
            })
            .collect(),
    }
}

impl ConditionSet {
    /// Renames kernel vertex `k` to `vertex_map[k - 1]`.
    pub fn lift(&self, vertex_map: &[usize]) -> ConditionSet {
        let map = |s: &VertexSet| -> VertexSet { s.iter().map(|&k| vertex_map[k - 1]).collect() };
        ConditionSet {
            hitting: self.hitting.iter().map(map).collect(),
            pair_hitting: self
                .pair_hitting
                .iter()
                .map(|(a, b)| (map(a), map(b)))
                .collect(),
            sentinels: self
                .sentinels
                .iter()
                .map(|s| SentinelCondition {
                    vertex: vertex_map[s.vertex - 1],
                    nbrs: s
                        .nbrs
                        .iter()
                        .map(|(v, nv)| (vertex_map[v - 1], map(nv)))
                        .collect(),
                })
                .collect(),
        }
    }
}

fn hits(set: &VertexSet, x: &ActiveSet) -> bool {
    set.iter().any(|&u| x.contains(u))
}

/// Whether `x` meets every extracted condition.
pub fn satisfies(cond: &ConditionSet, x: &ActiveSet) -> bool {
    cond.hitting.iter().all(|s| hits(s, x))
        && cond
            .pair_hitting
            .iter()
            .all(|(a, b)| hits(a, x) && hits(b, x))
        && cond.sentinels.iter().all(|s| {
            s.nbrs.iter().any(|(v1, _)| x.contains(*v1))
                && s.nbrs
                    .iter()
                    .any(|(_, nv2)| nv2.iter().all(|&w| x.contains(w)))
        })
}

impl fmt::Display for ConditionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.hitting {
            writeln!(f, "hit {}", format_vertex_set(s))?;
        }
        for (a, b) in &self.pair_hitting {
            writeln!(
                f,
                "pair {} | {}",
                format_vertex_set(a),
                format_vertex_set(b)
            )?;
        }
        for s in &self.sentinels {
            write!(f, "sentinel {} :", s.vertex)?;
            for (v, nv) in &s.nbrs {
                write!(f, " {}[{}]", v, format_vertex_set(nv))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Target-set decision via kernelization and the condition set, prepared once
/// per instance so that many candidate sets can be checked cheaply.
#[derive(Debug, Clone)]
pub struct TargetSetDecider {
    pub kernelization: Kernelization,
    pub classification: Classification,
    pub conditions: ConditionSet,
}

impl TargetSetDecider {
    pub fn new(inst: &Instance) -> Self {
        let kernelization = kernelize(inst);
        let classification =
            classify(&kernelization.kernel).expect("kernelize leaves no saturated edge");
        let conditions = extract_conditions(&classification, kernelization.kernel.graph());
        TargetSetDecider {
            kernelization,
            classification,
            conditions,
        }
    }

    /// Decides whether `x` (original ids) is a target set.
    pub fn decide(&self, x: &ActiveSet) -> bool {
        self.kernelization.forced.iter().all(|&u| x.contains(u))
            && satisfies(&self.conditions, &self.kernelization.project(x))
    }
}

pub fn decide_target_set_fast(inst: &Instance, x: &ActiveSet) -> bool {
    TargetSetDecider::new(inst).decide(x)
}
