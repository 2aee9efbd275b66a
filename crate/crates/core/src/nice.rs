//! Nice tree decompositions: rooted binary trees of leaf, introduce, forget
//! and join nodes with an empty root bag.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::td::TreeDecomposition;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Introduce { child: usize, vertex: usize },
    Forget { child: usize, vertex: usize },
    Join { left: usize, right: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    /// Sorted bag contents.
    pub bag: Vec<usize>,
    pub kind: NodeKind,
}

/// Nodes are stored so that every child has a smaller index than its parent;
/// the root is the last node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
}

impl NiceTreeDecomposition {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        self.nodes
            .iter()
            .map(|t| t.bag.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// Checks the node-type invariants.
    pub fn check(&self) -> Result<()> {
        let bad =
            |i: usize, msg: &str| Err(Error::InvalidDecomposition(format!("nice node {i}: {msg}")));
        if self.nodes.is_empty() {
            return Err(Error::InvalidDecomposition("no nodes".into()));
        }
        if !self.nodes[self.root()].bag.is_empty() {
            return bad(self.root(), "root bag is not empty");
        }
        let mut parents = vec![0usize; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            if !node.bag.windows(2).all(|w| w[0] < w[1]) {
                return bad(i, "bag not sorted");
            }
            let children: Vec<usize> = match node.kind {
                NodeKind::Leaf => {
                    if !node.bag.is_empty() {
                        return bad(i, "leaf with non-empty bag");
                    }
                    vec![]
                }
                NodeKind::Introduce { child, vertex } => {
                    let mut expect = self
                        .nodes
                        .get(child)
                        .map(|c| c.bag.clone())
                        .unwrap_or_default();
                    if expect.contains(&vertex) {
                        return bad(i, "introduced vertex already in child bag");
                    }
                    expect.push(vertex);
                    expect.sort_unstable();
                    if expect != node.bag {
                        return bad(i, "introduce bag is not child bag plus vertex");
                    }
                    vec![child]
                }
                NodeKind::Forget { child, vertex } => {
                    let child_bag = self
                        .nodes
                        .get(child)
                        .map(|c| c.bag.clone())
                        .unwrap_or_default();
                    let expect: Vec<usize> =
                        child_bag.iter().copied().filter(|&u| u != vertex).collect();
                    if expect.len() + 1 != child_bag.len() || expect != node.bag {
                        return bad(i, "forget bag is not child bag minus vertex");
                    }
                    vec![child]
                }
                NodeKind::Join { left, right } => {
                    if left >= i || right >= i || left == right {
                        return bad(i, "bad join children");
                    }
                    if self.nodes[left].bag != node.bag || self.nodes[right].bag != node.bag {
                        return bad(i, "join children bags differ");
                    }
                    vec![left, right]
                }
            };
            for c in children {
                if c >= i {
                    return bad(i, "child index not smaller than parent");
                }
                parents[c] += 1;
            }
        }
        if let Some(i) = (0..self.root()).find(|&i| parents[i] != 1) {
            return bad(i, "node does not have exactly one parent");
        }
        Ok(())
    }

    /// The underlying (non-nice) tree decomposition, node `i` becoming id `i + 1`.
    pub fn to_tree_decomposition(&self) -> TreeDecomposition {
        let bags = self
            .nodes
            .iter()
            .map(|t| t.bag.iter().copied().collect())
            .collect();
        let mut edges = Vec::new();
        for (i, node) in self.nodes.iter().enumerate() {
            match node.kind {
                NodeKind::Leaf => {}
                NodeKind::Introduce { child, .. } | NodeKind::Forget { child, .. } => {
                    edges.push((child + 1, i + 1))
                }
                NodeKind::Join { left, right } => {
                    edges.push((left + 1, i + 1));
                    edges.push((right + 1, i + 1));
                }
            }
        }
        TreeDecomposition::new(bags, edges)
    }
}

struct Builder {
    nodes: Vec<NiceNode>,
}

impl Builder {
    fn push(&mut self, bag: Vec<usize>, kind: NodeKind) -> usize {
        self.nodes.push(NiceNode { bag, kind });
        self.nodes.len() - 1
    }

    fn leaf(&mut self) -> usize {
        self.push(Vec::new(), NodeKind::Leaf)
    }

    /// Forgets `bag(from) \ target`, then introduces `target \ bag(from)`,
    /// both in ascending vertex order.
    fn adapt(&mut self, mut from: usize, target: &VertexSet) -> usize {
        let current = self.nodes[from].bag.clone();
        for &v in current.iter().filter(|v| !target.contains(v)) {
            let bag = self.nodes[from]
                .bag
                .iter()
                .copied()
                .filter(|&u| u != v)
                .collect();
            from = self.push(
                bag,
                NodeKind::Forget {
                    child: from,
                    vertex: v,
                },
            );
        }
        for &v in target.iter().filter(|v| !current.contains(v)) {
            let mut bag = self.nodes[from].bag.clone();
            let pos = bag.binary_search(&v).unwrap_err();
            bag.insert(pos, v);
            from = self.push(
                bag,
                NodeKind::Introduce {
                    child: from,
                    vertex: v,
                },
            );
        }
        from
    }
}

/// Converts a valid decomposition into nice form of the same width, rooted at
/// node 1, with children of every node handled in ascending node id.
pub fn make_nice(td: &TreeDecomposition) -> NiceTreeDecomposition {
    let k = td.node_count();
    let adj = td.tree_adjacency();
    let mut parent = vec![usize::MAX; k + 1];
    let mut order = Vec::with_capacity(k);
    let mut queue = VecDeque::from([1usize]);
    parent[1] = 0;
    while let Some(t) = queue.pop_front() {
        order.push(t);
        for &s in &adj[t - 1] {
            if parent[s] == usize::MAX {
                parent[s] = t;
                queue.push_back(s);
            }
        }
    }
    let mut children = vec![Vec::new(); k + 1];
    for &t in &order[1..] {
        children[parent[t]].push(t);
    }
    let mut b = Builder { nodes: Vec::new() };
    let mut top = vec![usize::MAX; k + 1];
    for &t in order.iter().rev() {
        let bag = td.bag(t);
        let mut kids = children[t].clone();
        kids.sort_unstable();
        let adapted: Vec<usize> = kids.iter().map(|&c| b.adapt(top[c], bag)).collect();
        top[t] = match adapted.split_first() {
            None => {
                let leaf = b.leaf();
                b.adapt(leaf, bag)
            }
            Some((&first, rest)) => {
                let mut acc = first;
                for &right in rest {
                    acc = b.push(
                        bag.iter().copied().collect(),
                        NodeKind::Join { left: acc, right },
                    );
                }
                acc
            }
        };
    }
    b.adapt(top[1], &VertexSet::new());
    NiceTreeDecomposition { nodes: b.nodes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::td::heuristic_td;

    fn set(ids: &[usize]) -> VertexSet {
        ids.iter().copied().collect()
    }

    #[test]
    fn p3_path_decomposition() {
        let g = Graph::from_edges(3, [(1, 2), (2, 3)]).unwrap();
        let td = TreeDecomposition::new(vec![set(&[1, 2]), set(&[2, 3])], vec![(1, 2)]);
        let nice = make_nice(&td);
        nice.check().unwrap();
        assert_eq!(nice.width(), 1);
        nice.to_tree_decomposition().validate(&g).unwrap();
        let kinds: Vec<_> = nice.nodes.iter().map(|t| t.kind).collect();
        assert_eq!(kinds[0], NodeKind::Leaf);
        assert!(matches!(kinds[1], NodeKind::Introduce { vertex: 2, .. }));
        assert!(nice.nodes[nice.root()].bag.is_empty());
    }

    #[test]
    fn single_empty_bag_is_a_leaf() {
        let td = TreeDecomposition::new(vec![VertexSet::new()], vec![]);
        let nice = make_nice(&td);
        assert_eq!(
            nice.nodes,
            vec![NiceNode {
                bag: vec![],
                kind: NodeKind::Leaf
            }]
        );
        nice.check().unwrap();
    }

    #[test]
    fn star_decomposition_uses_joins() {
        let g = Graph::from_edges(4, [(1, 2), (1, 3), (1, 4)]).unwrap();
        let td = TreeDecomposition::new(
            vec![set(&[1]), set(&[1, 2]), set(&[1, 3]), set(&[1, 4])],
            vec![(1, 2), (1, 3), (1, 4)],
        );
        td.validate(&g).unwrap();
        let nice = make_nice(&td);
        nice.check().unwrap();
        nice.to_tree_decomposition().validate(&g).unwrap();
        let joins = nice
            .nodes
            .iter()
            .filter(|t| matches!(t.kind, NodeKind::Join { .. }))
            .count();
        assert_eq!(joins, 2);
        assert_eq!(nice.width(), 1);
    }

    #[test]
    fn heuristic_decompositions_become_nice() {
        let g =
            Graph::from_edges(6, [(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 6), (6, 4)]).unwrap();
        let td = heuristic_td(&g);
        let nice = make_nice(&td);
        nice.check().unwrap();
        assert_eq!(nice.width(), td.width());
        nice.to_tree_decomposition().validate(&g).unwrap();
    }
}
