//! Simple undirected graphs over the dense id space `1..=n`.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

/// An ordered set of 1-based vertex ids.
pub type VertexSet = BTreeSet<usize>;

/// A finite simple undirected graph with vertices `1..=n`.
///
/// Adjacency lists are kept sorted so that neighbourhood queries and edge
/// lookups are deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u == 0 || v == 0 || u > n || v > n {
            return Err(Error::InvalidInstance(format!(
                "edge {u}-{v} has an endpoint outside 1..={n}"
            )));
        }
        if u == v {
            return Err(Error::InvalidInstance(format!("self-loop at vertex {u}")));
        }
        let list = &mut self.adj[u - 1];
        match list.binary_search(&v) {
            Ok(_) => {
                return Err(Error::InvalidInstance(format!("duplicate edge {u}-{v}")));
            }
            Err(pos) => list.insert(pos, v),
        }
        let list = &mut self.adj[v - 1];
        let pos = list.binary_search(&u).unwrap_err();
        list.insert(pos, u);
        self.m += 1;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u - 1].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Sorted neighbour list of `u`.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u - 1]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && u <= self.n() && self.adj[u - 1].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(i, list)| {
            let u = i + 1;
            list.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// `N(S)`: vertices outside `set` with a neighbour in `set`.
    pub fn open_neighborhood(&self, set: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new();
        for &u in set {
            for &v in self.neighbors(u) {
                if !set.contains(&v) {
                    out.insert(v);
                }
            }
        }
        out
    }

    /// `N[S] = S ∪ N(S)`.
    pub fn closed_neighborhood(&self, set: &VertexSet) -> VertexSet {
        let mut out = set.clone();
        out.extend(self.open_neighborhood(set));
        out
    }

    /// Union of the neighbourhoods of the members of `set`, which may
    /// include members of `set` itself (unlike [`Graph::open_neighborhood`]).
    pub fn neighborhood_union(&self, set: &VertexSet) -> VertexSet {
        set.iter()
            .flat_map(|&u| self.neighbors(u).iter().copied())
            .collect()
    }

    /// Subgraph induced by `keep`, relabelled densely in ascending order.
    /// Returns the graph and the map from new ids to old ids (`map[new - 1]`).
    pub fn induced(&self, keep: &VertexSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = keep.iter().copied().collect();
        let mut new_id = vec![0usize; self.n() + 1];
        for (i, &old) in map.iter().enumerate() {
            new_id[old] = i + 1;
        }
        let mut g = Graph::empty(map.len());
        for (i, &old) in map.iter().enumerate() {
            g.adj[i] = self
                .neighbors(old)
                .iter()
                .filter(|&&w| new_id[w] != 0)
                .map(|&w| new_id[w])
                .collect();
            g.adj[i].sort_unstable();
        }
        g.m = g.adj.iter().map(Vec::len).sum::<usize>() / 2;
        (g, map)
    }

    /// Connected components of the subgraph induced by `subset`, ordered by
    /// smallest member.
    pub fn components(&self, subset: &VertexSet) -> Vec<VertexSet> {
        let mut inside = vec![false; self.n() + 1];
        for &u in subset {
            inside[u] = true;
        }
        let mut seen = vec![false; self.n() + 1];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for &start in subset {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = VertexSet::new();
            while let Some(u) = queue.pop_front() {
                comp.insert(u);
                for &v in self.neighbors(u) {
                    if inside[v] && !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Two-colouring of the subgraph induced by a connected `component`.
    ///
    /// Returns `(A, B)` with `A` holding the smallest vertex id, or `None`
    /// when the induced subgraph contains an odd cycle.
    pub fn bipartition(&self, component: &VertexSet) -> Option<(VertexSet, VertexSet)> {
        let start = *component.iter().next()?;
        let mut color = vec![u8::MAX; self.n() + 1];
        color[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &v in self.neighbors(u) {
                if !component.contains(&v) {
                    continue;
                }
                if color[v] == u8::MAX {
                    color[v] = 1 - color[u];
                    queue.push_back(v);
                } else if color[v] == color[u] {
                    return None;
                }
            }
        }
        let (a, b): (Vec<usize>, Vec<usize>) = component.iter().partition(|&&u| color[u] == 0);
        Some((a.into_iter().collect(), b.into_iter().collect()))
    }

    /// Breadth-first distances from `source`; unreachable vertices get `None`.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n() + 1];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }
}
