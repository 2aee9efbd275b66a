//! Removal of saturated components.
//!
//! If `U` is a component of order at least two of the subgraph induced by the
//! vertices with `tau(u) = deg(u)`, every target set contains `N[U]`, and the
//! remaining problem lives on `G - N[U]` with thresholds lowered by the number
//! of removed neighbours. Repeating this until no such component exists
//! yields an instance without an edge between two saturated vertices.

use crate::graph::VertexSet;
use crate::instance::{Instance, ThresholdMap};
use crate::sim::ActiveSet;

/// One application of the reduction, in the ids of the instance it was
/// applied to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub instance: Instance,
    pub forced: VertexSet,
    /// `vertex_map[new - 1]` is the id of `new` before the reduction.
    pub vertex_map: Vec<usize>,
}

/// A reduction round recorded in original ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Round {
    pub component: VertexSet,
    pub closed_nbhd: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kernelization {
    pub kernel: Instance,
    /// Vertices contained in every target set, in original ids.
    pub forced: VertexSet,
    /// `vertex_map[k - 1]` is the original id of kernel vertex `k`.
    pub vertex_map: Vec<usize>,
    pub rounds: Vec<Round>,
}

impl Kernelization {
    /// Maps a set of kernel ids back to original ids.
    pub fn lift<'a, I>(&self, kernel_ids: I) -> VertexSet
    where
        I: IntoIterator<Item = &'a usize>,
    {
        kernel_ids
            .into_iter()
            .map(|&k| self.vertex_map[k - 1])
            .collect()
    }

    /// The part of an original-id set that survives in the kernel, in kernel ids.
    pub fn project(&self, x: &ActiveSet) -> ActiveSet {
        let mut out = ActiveSet::empty(self.kernel.n());
        for (i, &orig) in self.vertex_map.iter().enumerate() {
            if x.contains(orig) {
                out.insert(i + 1);
            }
        }
        out
    }
}

/// Components of order at least two among the saturated vertices, ordered by
/// smallest member.
pub fn full_components(inst: &Instance) -> Vec<VertexSet> {
    let saturated: VertexSet = inst
        .graph()
        .vertices()
        .filter(|&u| inst.is_saturated(u))
        .collect();
    inst.graph()
        .components(&saturated)
        .into_iter()
        .filter(|c| c.len() >= 2)
        .collect()
}

/// Removes `N[U]` and lowers the remaining thresholds accordingly.
pub fn reduce_once(inst: &Instance, component: &VertexSet) -> Reduction {
    let g = inst.graph();
    let forced = g.closed_neighborhood(component);
    let keep: VertexSet = g.vertices().filter(|u| !forced.contains(u)).collect();
    let (graph, vertex_map) = g.induced(&keep);
    let tau = vertex_map
        .iter()
        .map(|&u| {
            let removed = g.neighbors(u).iter().filter(|v| forced.contains(v)).count();
            inst.tau(u).saturating_sub(removed)
        })
        .collect();
    let instance = Instance::new(graph, ThresholdMap::new(tau))
        .expect("reduction preserves the restricted threshold regime");
    Reduction {
        instance,
        forced,
        vertex_map,
    }
}

/// Applies [`reduce_once`] to the first saturated component until none is left.
pub fn kernelize(inst: &Instance) -> Kernelization {
    let mut current = inst.clone();
    let mut vertex_map: Vec<usize> = inst.graph().vertices().collect();
    let mut forced = VertexSet::new();
    let mut rounds = Vec::new();
    while let Some(component) = full_components(&current).into_iter().next() {
        let red = reduce_once(&current, &component);
        let to_orig =
            |ids: &VertexSet| -> VertexSet { ids.iter().map(|&u| vertex_map[u - 1]).collect() };
        rounds.push(Round {
            component: to_orig(&component),
            closed_nbhd: to_orig(&red.forced),
        });
        forced.extend(to_orig(&red.forced));
        vertex_map = red.vertex_map.iter().map(|&u| vertex_map[u - 1]).collect();
        current = red.instance;
    }
    debug_assert!(current.saturated_edge().is_none());
    Kernelization {
        kernel: current,
        forced,
        vertex_map,
        rounds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn inst(n: usize, edges: &[(usize, usize)], tau: &[usize]) -> Instance {
        Instance::new(
            Graph::from_edges(n, edges.iter().copied()).unwrap(),
            ThresholdMap::new(tau.to_vec()),
        )
        .unwrap()
    }

    fn set(ids: &[usize]) -> VertexSet {
        ids.iter().copied().collect()
    }

    fn path(tau: &[usize]) -> Instance {
        let n = tau.len();
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        inst(n, &edges, tau)
    }

    #[test]
    fn star_with_saturated_leaves_is_one_component() {
        let star = inst(4, &[(1, 2), (1, 3), (1, 4)], &[3, 1, 1, 1]);
        assert_eq!(full_components(&star), vec![set(&[1, 2, 3, 4])]);
    }

    #[test]
    fn p5_components() {
        assert_eq!(
            full_components(&path(&[1, 2, 1, 2, 1])),
            vec![set(&[1, 2]), set(&[4, 5])]
        );
    }

    #[test]
    fn no_saturated_vertices_no_components() {
        assert!(full_components(&path(&[0, 1, 1, 0])).is_empty());
    }

    #[test]
    fn reduce_p4() {
        let p4 = path(&[0, 2, 2, 0]);
        let red = reduce_once(&p4, &set(&[2, 3]));
        assert_eq!(red.forced, set(&[1, 2, 3, 4]));
        assert_eq!(red.instance.n(), 0);
    }

    #[test]
    fn reduce_square_with_pendant() {
        let g = inst(
            5,
            &[(1, 2), (2, 3), (3, 4), (1, 4), (1, 5)],
            &[1, 2, 2, 1, 1],
        );
        assert_eq!(full_components(&g), vec![set(&[2, 3])]);
        let red = reduce_once(&g, &set(&[2, 3]));
        assert_eq!(red.forced, set(&[1, 2, 3, 4]));
        assert_eq!(red.vertex_map, vec![5]);
        assert_eq!(red.instance.n(), 1);
        assert_eq!(red.instance.tau(1), 0);
    }

    #[test]
    fn kernelize_p5_needs_two_rounds() {
        let k = kernelize(&path(&[1, 2, 1, 2, 1]));
        assert_eq!(k.rounds.len(), 2);
        assert_eq!(k.rounds[0].closed_nbhd, set(&[1, 2, 3]));
        assert_eq!(k.rounds[1].component, set(&[4, 5]));
        assert_eq!(k.forced, set(&[1, 2, 3, 4, 5]));
        assert_eq!(k.kernel.n(), 0);
    }

    #[test]
    fn kernelize_fixpoint_without_saturated_edge() {
        let p = path(&[1, 1, 1, 1]);
        let k = kernelize(&p);
        assert!(k.forced.is_empty());
        assert_eq!(k.kernel, p);
        assert_eq!(k.vertex_map, vec![1, 2, 3, 4]);
    }

    #[test]
    fn kernelize_p4_forces_everything() {
        let k = kernelize(&path(&[0, 2, 2, 0]));
        assert_eq!(k.forced, set(&[1, 2, 3, 4]));
        assert_eq!(k.kernel.n(), 0);
    }
}
