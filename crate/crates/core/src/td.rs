//! Tree decompositions: validation, PACE `.td` I/O, restriction and a
//! min-fill elimination heuristic.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{parse_err, Error, Result};
use crate::graph::{Graph, VertexSet};

/// Bags indexed by node id `1..=bags.len()` with undirected tree edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<VertexSet>,
    pub tree_edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(bags: Vec<VertexSet>, tree_edges: Vec<(usize, usize)>) -> Self {
        TreeDecomposition { bags, tree_edges }
    }

    /// A single bag holding every vertex.
    pub fn trivial(graph: &Graph) -> Self {
        TreeDecomposition::new(vec![graph.vertices().collect()], Vec::new())
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn bag(&self, node: usize) -> &VertexSet {
        &self.bags[node - 1]
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    /// Largest bag size minus one (0 when every bag is empty).
    pub fn width(&self) -> usize {
        self.max_bag_size().saturating_sub(1)
    }

    /// Adjacency lists of the tree, indexed by node id - 1.
    pub fn tree_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.tree_edges {
            adj[a - 1].push(b);
            adj[b - 1].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    fn validate_tree(&self) -> Result<()> {
        let k = self.bags.len();
        if k == 0 {
            return Err(Error::InvalidDecomposition("no bags".into()));
        }
        if self.tree_edges.len() != k - 1 {
            return Err(Error::InvalidDecomposition(format!(
                "{} tree edges for {k} bags, not a tree",
                self.tree_edges.len()
            )));
        }
        for &(a, b) in &self.tree_edges {
            if a == 0 || b == 0 || a > k || b > k || a == b {
                return Err(Error::InvalidDecomposition(format!(
                    "bad tree edge {a} {b}"
                )));
            }
        }
        let adj = self.tree_adjacency();
        let mut seen = vec![false; k];
        seen[0] = true;
        let mut queue = VecDeque::from([1usize]);
        let mut reached = 1;
        while let Some(t) = queue.pop_front() {
            for &s in &adj[t - 1] {
                if !seen[s - 1] {
                    seen[s - 1] = true;
                    reached += 1;
                    queue.push_back(s);
                }
            }
        }
        if reached != k {
            return Err(Error::InvalidDecomposition(
                "tree edges do not form a tree (disconnected)".into(),
            ));
        }
        Ok(())
    }

    /// Checks the tree-decomposition axioms against `graph`.
    pub fn validate(&self, graph: &Graph) -> Result<()> {
        self.validate_tree()?;
        let n = graph.n();
        let mut occurrences = vec![0usize; n + 1];
        for (i, bag) in self.bags.iter().enumerate() {
            for &u in bag {
                if u == 0 || u > n {
                    return Err(Error::InvalidDecomposition(format!(
                        "bag {} names vertex {u} outside 1..={n}",
                        i + 1
                    )));
                }
                occurrences[u] += 1;
            }
        }
        if let Some(u) = (1..=n).find(|&u| occurrences[u] == 0) {
            return Err(Error::InvalidDecomposition(format!(
                "vertex {u} is in no bag"
            )));
        }
        let mut inner_edges = vec![0usize; n + 1];
        for &(a, b) in &self.tree_edges {
            for &u in self.bag(a).intersection(self.bag(b)) {
                inner_edges[u] += 1;
            }
        }
        if let Some(u) = (1..=n).find(|&u| inner_edges[u] + 1 != occurrences[u]) {
            return Err(Error::InvalidDecomposition(format!(
                "bags containing vertex {u} do not form a connected subtree"
            )));
        }
        let mut bags_of = vec![Vec::new(); n + 1];
        for (i, bag) in self.bags.iter().enumerate() {
            for &u in bag {
                bags_of[u].push(i);
            }
        }
        for (u, v) in graph.edges() {
            let covered = bags_of[u].iter().any(|&i| self.bags[i].contains(&v));
            if !covered {
                return Err(Error::InvalidDecomposition(format!(
                    "edge {u}-{v} not covered by any bag"
                )));
            }
        }
        Ok(())
    }

    /// Keeps the ids listed in `vertex_map` and renames `vertex_map[k - 1]`
    /// to `k`; every other vertex is dropped from the bags.
    pub fn relabel(&self, vertex_map: &[usize]) -> TreeDecomposition {
        let max_id = vertex_map.iter().copied().max().unwrap_or(0);
        let mut new_id = vec![0usize; max_id + 1];
        for (i, &orig) in vertex_map.iter().enumerate() {
            new_id[orig] = i + 1;
        }
        let bags = self
            .bags
            .iter()
            .map(|bag| {
                bag.iter()
                    .filter(|&&u| u <= max_id && new_id[u] != 0)
                    .map(|&u| new_id[u])
                    .collect()
            })
            .collect();
        TreeDecomposition::new(bags, self.tree_edges.clone())
    }
}

/// Intersects every bag with `keep`; the tree is unchanged.
pub fn restrict_td(td: &TreeDecomposition, keep: &VertexSet) -> TreeDecomposition {
    TreeDecomposition::new(
        td.bags
            .iter()
            .map(|bag| bag.intersection(keep).copied().collect())
            .collect(),
        td.tree_edges.clone(),
    )
}

fn parse_num(tok: &str, line: usize) -> Result<usize> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("expected a number, found {tok:?}")))
}

/// Parses a PACE 2017 `.td` file and validates it against `graph`.
pub fn parse_td(text: &str, graph: &Graph) -> Result<TreeDecomposition> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<VertexSet>> = Vec::new();
    let mut tree_edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        if toks.is_empty() || toks[0] == "c" {
            continue;
        }
        match toks[0] {
            "s" => {
                if header.is_some() {
                    return Err(parse_err(line, "duplicate solution line"));
                }
                if toks.len() != 5 || toks[1] != "td" {
                    return Err(parse_err(line, "expected `s td <bags> <max-bag> <n>`"));
                }
                let b = parse_num(toks[2], line)?;
                let w = parse_num(toks[3], line)?;
                let n = parse_num(toks[4], line)?;
                if n != graph.n() {
                    return Err(parse_err(
                        line,
                        format!("decomposition is for {n} vertices, graph has {}", graph.n()),
                    ));
                }
                header = Some((b, w, n));
                bags = vec![None; b];
            }
            "b" => {
                let (b, _, n) = header.ok_or_else(|| parse_err(line, "bag before `s td` line"))?;
                if toks.len() < 2 {
                    return Err(parse_err(line, "expected `b <id> <vertices…>`"));
                }
                let id = parse_num(toks[1], line)?;
                if id == 0 || id > b {
                    return Err(parse_err(line, format!("bag id {id} out of range 1..={b}")));
                }
                let mut bag = VertexSet::new();
                for tok in &toks[2..] {
                    let u = parse_num(tok, line)?;
                    if u == 0 || u > n {
                        return Err(parse_err(line, format!("vertex {u} out of range 1..={n}")));
                    }
                    if !bag.insert(u) {
                        return Err(parse_err(line, format!("vertex {u} repeated in bag")));
                    }
                }
                if bags[id - 1].replace(bag).is_some() {
                    return Err(parse_err(line, format!("bag {id} defined twice")));
                }
            }
            _ => {
                let (b, _, _) = header.ok_or_else(|| parse_err(line, "edge before `s td` line"))?;
                if toks.len() != 2 {
                    return Err(parse_err(line, "expected a tree edge `<i> <j>`"));
                }
                let i = parse_num(toks[0], line)?;
                let j = parse_num(toks[1], line)?;
                if i == 0 || j == 0 || i > b || j > b {
                    return Err(parse_err(line, format!("tree edge {i} {j} out of range")));
                }
                tree_edges.push((i, j));
            }
        }
    }
    let (_, max_bag, _) = header.ok_or_else(|| parse_err(1, "missing `s td` line"))?;
    let bags: Vec<VertexSet> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| {
            b.ok_or_else(|| Error::InvalidDecomposition(format!("bag {} missing", i + 1)))
        })
        .collect::<Result<_>>()?;
    let td = TreeDecomposition::new(bags, tree_edges);
    if td.max_bag_size() != max_bag {
        return Err(Error::InvalidDecomposition(format!(
            "header declares max bag size {max_bag}, largest bag has {}",
            td.max_bag_size()
        )));
    }
    td.validate(graph)?;
    Ok(td)
}

/// Writes a decomposition in PACE 2017 `.td` format.
pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    let mut out = String::new();
    writeln!(out, "s td {} {} {}", td.node_count(), td.max_bag_size(), n).unwrap();
    for (i, bag) in td.bags.iter().enumerate() {
        write!(out, "b {}", i + 1).unwrap();
        for u in bag {
            write!(out, " {u}").unwrap();
        }
        writeln!(out).unwrap();
    }
    for &(a, b) in &td.tree_edges {
        writeln!(out, "{a} {b}").unwrap();
    }
    out
}

/// Number of missing edges among `nbrs`.
fn fill_in(adj: &[BTreeSet<usize>], nbrs: &BTreeSet<usize>) -> usize {
    let list: Vec<usize> = nbrs.iter().copied().collect();
    let mut missing = 0;
    for (i, &a) in list.iter().enumerate() {
        for &b in &list[i + 1..] {
            if !adj[a].contains(&b) {
                missing += 1;
            }
        }
    }
    missing
}

/// Min-fill elimination ordering, ties broken by lowest vertex id.
pub fn min_fill_ordering(graph: &Graph) -> Vec<usize> {
    let n = graph.n();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n + 1];
    for u in graph.vertices() {
        adj[u] = graph.neighbors(u).iter().copied().collect();
    }
    let mut fill = vec![0usize; n + 1];
    let mut queue: BTreeSet<(usize, usize)> = BTreeSet::new();
    for u in 1..=n {
        fill[u] = fill_in(&adj, &adj[u]);
        queue.insert((fill[u], u));
    }
    let mut order = Vec::with_capacity(n);
    while let Some((_, v)) = queue.pop_first() {
        order.push(v);
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for &a in &nbrs {
            adj[a].remove(&v);
        }
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        adj[v].clear();
        let mut affected: BTreeSet<usize> = nbrs.iter().copied().collect();
        for &a in &nbrs {
            affected.extend(adj[a].iter().copied());
        }
        for u in affected {
            let f = fill_in(&adj, &adj[u]);
            if f != fill[u] {
                queue.remove(&(fill[u], u));
                fill[u] = f;
                queue.insert((f, u));
            }
        }
    }
    order
}

/// Tree decomposition from a min-fill elimination ordering: the bag of `v`
/// is `v` plus its neighbours at elimination time, attached to the bag of
/// the earliest-eliminated of those neighbours. Component roots are chained.
pub fn heuristic_td(graph: &Graph) -> TreeDecomposition {
    let n = graph.n();
    if n == 0 {
        return TreeDecomposition::new(vec![VertexSet::new()], Vec::new());
    }
    let order = min_fill_ordering(graph);
    let mut position = vec![0usize; n + 1];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n + 1];
    for u in graph.vertices() {
        adj[u] = graph.neighbors(u).iter().copied().collect();
    }
    let mut bags = Vec::with_capacity(n);
    let mut tree_edges = Vec::new();
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<usize> = adj[v].iter().copied().collect();
        let mut bag: VertexSet = later.iter().copied().collect();
        bag.insert(v);
        bags.push(bag);
        for (j, &a) in later.iter().enumerate() {
            adj[a].remove(&v);
            for &b in &later[j + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        match later.iter().map(|&a| position[a]).min() {
            Some(p) => tree_edges.push((i + 1, p + 1)),
            None => roots.push(i + 1),
        }
    }
    for w in roots.windows(2) {
        tree_edges.push((w[0], w[1]));
    }
    TreeDecomposition::new(bags, tree_edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ids: &[usize]) -> VertexSet {
        ids.iter().copied().collect()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i, i + 1))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (1..=n).map(|i| (i, i % n + 1))).unwrap()
    }

    #[test]
    fn parses_p3_path_decomposition() {
        let text = "c path\ns td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n";
        let td = parse_td(text, &path(3)).unwrap();
        assert_eq!(td.width(), 1);
        assert_eq!(write_td(&td, 3), "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n");
    }

    #[test]
    fn uncovered_edge_is_rejected() {
        let k3 = cycle(3);
        let text = "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n";
        let err = parse_td(text, &k3).unwrap_err().to_string();
        assert!(err.contains("edge 1-3 not covered"), "{err}");
    }

    #[test]
    fn single_bag_is_valid() {
        let g = cycle(5);
        let td = TreeDecomposition::trivial(&g);
        td.validate(&g).unwrap();
        assert_eq!(td.width(), 4);
    }

    #[test]
    fn invalid_decompositions() {
        let g = path(3);
        // vertex 3 missing
        let td = TreeDecomposition::new(vec![set(&[1, 2])], vec![]);
        assert!(td.validate(&g).is_err());
        // occurrence of 2 disconnected
        let td = TreeDecomposition::new(
            vec![set(&[1, 2]), set(&[1]), set(&[2, 3])],
            vec![(1, 2), (2, 3)],
        );
        assert!(td
            .validate(&g)
            .unwrap_err()
            .to_string()
            .contains("vertex 2"));
        // not a tree
        let td = TreeDecomposition::new(vec![set(&[1, 2]), set(&[2, 3])], vec![]);
        assert!(td.validate(&g).is_err());
        let td = TreeDecomposition::new(
            vec![set(&[1, 2]), set(&[2, 3]), set(&[2])],
            vec![(1, 2), (2, 1)],
        );
        assert!(td.validate(&g).is_err());
    }

    #[test]
    fn parse_errors() {
        let g = path(3);
        for bad in [
            "b 1 1 2\n",
            "s td 2 2 4\n",
            "s td 2 2 3\nb 1 1 2\n1 2\n",
            "s td 2 3 3\nb 1 1 2\nb 2 2 3\n1 2\n",
            "s td 2 2 3\nb 1 1 2\nb 1 2 3\n1 2\n",
            "s td 2 2 3\nb 1 1 9\nb 2 2 3\n1 2\n",
        ] {
            assert!(parse_td(bad, &g).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn heuristic_widths() {
        let tree = Graph::from_edges(7, [(1, 2), (1, 3), (2, 4), (2, 5), (3, 6), (3, 7)]).unwrap();
        let td = heuristic_td(&tree);
        td.validate(&tree).unwrap();
        assert_eq!(td.width(), 1);

        let c = cycle(8);
        let td = heuristic_td(&c);
        td.validate(&c).unwrap();
        assert_eq!(td.width(), 2);

        let k4 = Graph::from_edges(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        let td = heuristic_td(&k4);
        td.validate(&k4).unwrap();
        assert_eq!(td.width(), 3);
    }

    #[test]
    fn heuristic_handles_disconnected_graphs() {
        let g = Graph::from_edges(5, [(1, 2), (4, 5)]).unwrap();
        let td = heuristic_td(&g);
        td.validate(&g).unwrap();
        assert_eq!(td.width(), 1);
    }

    #[test]
    fn restriction() {
        let g = path(5);
        let td = TreeDecomposition::new(
            vec![set(&[1, 2]), set(&[2, 3]), set(&[3, 4]), set(&[4, 5])],
            vec![(1, 2), (2, 3), (3, 4)],
        );
        assert_eq!(restrict_td(&td, &g.vertices().collect()), td);
        let empty = restrict_td(&td, &VertexSet::new());
        assert!(empty.bags.iter().all(BTreeSet::is_empty));
        assert_eq!(empty.tree_edges, td.tree_edges);

        let keep = set(&[4, 5]);
        let r = restrict_td(&td, &keep);
        let (sub, map) = g.induced(&keep);
        let relabelled = r.relabel(&map);
        relabelled.validate(&sub).unwrap();
        assert_eq!(relabelled.bags[3], set(&[1, 2]));
    }
}
