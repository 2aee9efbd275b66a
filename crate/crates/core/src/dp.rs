//! Minimum target sets by dynamic programming over a nice tree
//! decomposition of the kernel.
//!
//! A pattern for node `t` fixes `S = X ∩ bag(t)` and one "still owed" bit per
//! constraint touching the bag:
//!
//! * one bit per non-bipartite component `U_i` meeting the bag: some vertex
//!   of `N[U_i]` already forgotten must be in `X`;
//! * two bits per bipartite component meeting the bag, the same for `Ā`
//!   and `B̄`;
//! * two bits per sentinel in the bag: a forgotten neighbour in `X`, and a
//!   forgotten neighbour whose whole neighbourhood is in `X`;
//! * one bit per FULL vertex in the bag: its neighbourhood seen so far lies
//!   in `X`.
//!
//! The table entry is the least number of forgotten vertices in `X` over all
//! `X` honouring the pattern, or [`INF`]. Every entry keeps a back-reference
//! to the child pattern(s) it came from, which is how the witness is rebuilt.

use crate::characterize::{classify, Classification};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::instance::Instance;
use crate::kernel::{kernelize, Kernelization};
use crate::nice::{make_nice, NiceTreeDecomposition, NodeKind};
use crate::sim::{is_target_set, ActiveSet};
use crate::td::{heuristic_td, restrict_td, TreeDecomposition};

pub const INF: u32 = u32::MAX;

/// Largest number of pattern bits a node may need.
pub const MAX_PATTERN_BITS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    P(usize),
    Q(usize, Side),
    Sentinel,
    Full,
    Free,
}

/// Per-vertex lookup tables derived from the classification.
#[derive(Debug, Clone)]
struct Roles {
    role: Vec<Role>,
    p_nbhd: Vec<Vec<usize>>,
    q_abar: Vec<Vec<usize>>,
    q_bbar: Vec<Vec<usize>>,
}

impl Roles {
    fn new(n: usize, cls: &Classification) -> Self {
        let mut roles = Roles {
            role: vec![Role::Free; n + 1],
            p_nbhd: vec![Vec::new(); n + 1],
            q_abar: vec![Vec::new(); n + 1],
            q_bbar: vec![Vec::new(); n + 1],
        };
        for (i, p) in cls.p_components.iter().enumerate() {
            for &u in &p.members {
                roles.role[u] = Role::P(i);
            }
            for &u in &p.closed_nbhd {
                roles.p_nbhd[u].push(i);
            }
        }
        for (i, q) in cls.q_components.iter().enumerate() {
            for &u in &q.a {
                roles.role[u] = Role::Q(i, Side::A);
            }
            for &u in &q.b {
                roles.role[u] = Role::Q(i, Side::B);
            }
            for &u in &q.a_bar {
                roles.q_abar[u].push(i);
            }
            for &u in &q.b_bar {
                roles.q_bbar[u].push(i);
            }
        }
        for &u in &cls.sentinels {
            roles.role[u] = Role::Sentinel;
        }
        for &u in &cls.full_vertices {
            roles.role[u] = Role::Full;
        }
        roles
    }
}

/// Bit layout of the patterns of one node:
/// `[S | p bits | (Ā, B̄) pairs | (v1, v2) pairs | FULL bits]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    bag: Vec<usize>,
    p: Vec<usize>,
    q: Vec<usize>,
    r: Vec<usize>,
    d: Vec<usize>,
}

/// A pattern spelled out element by element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternView {
    pub s: VertexSet,
    /// `(component index, bit)` for non-bipartite components meeting the bag.
    pub p: Vec<(usize, bool)>,
    /// `(component index, Ā bit, B̄ bit)` for bipartite components.
    pub q: Vec<(usize, bool, bool)>,
    /// `(sentinel vertex, v1 bit, v2 bit)`.
    pub r: Vec<(usize, bool, bool)>,
    /// `(FULL vertex, bit)`.
    pub d: Vec<(usize, bool)>,
}

impl Layout {
    fn new(bag: &[usize], roles: &Roles) -> Self {
        let mut p = Vec::new();
        let mut q = Vec::new();
        let mut r = Vec::new();
        let mut d = Vec::new();
        for &u in bag {
            match roles.role[u] {
                Role::P(i) => p.push(i),
                Role::Q(i, _) => q.push(i),
                Role::Sentinel => r.push(u),
                Role::Full => d.push(u),
                Role::Free => {}
            }
        }
        p.sort_unstable();
        p.dedup();
        q.sort_unstable();
        q.dedup();
        Layout {
            bag: bag.to_vec(),
            p,
            q,
            r,
            d,
        }
    }

    pub fn bag(&self) -> &[usize] {
        &self.bag
    }

    fn p_off(&self) -> usize {
        self.bag.len()
    }

    fn q_off(&self) -> usize {
        self.p_off() + self.p.len()
    }

    fn r_off(&self) -> usize {
        self.q_off() + 2 * self.q.len()
    }

    fn d_off(&self) -> usize {
        self.r_off() + 2 * self.r.len()
    }

    pub fn bits(&self) -> usize {
        self.d_off() + self.d.len()
    }

    pub fn patterns(&self) -> usize {
        1 << self.bits()
    }

    fn s_bit(&self, u: usize) -> Option<u32> {
        self.bag.binary_search(&u).ok().map(|i| 1 << i)
    }

    fn p_bit(&self, i: usize) -> Option<u32> {
        self.p
            .binary_search(&i)
            .ok()
            .map(|j| 1 << (self.p_off() + j))
    }

    fn qa_bit(&self, i: usize) -> Option<u32> {
        self.q
            .binary_search(&i)
            .ok()
            .map(|j| 1 << (self.q_off() + 2 * j))
    }

    fn qb_bit(&self, i: usize) -> Option<u32> {
        self.q
            .binary_search(&i)
            .ok()
            .map(|j| 1 << (self.q_off() + 2 * j + 1))
    }

    fn r1_bit(&self, u: usize) -> Option<u32> {
        self.r
            .binary_search(&u)
            .ok()
            .map(|j| 1 << (self.r_off() + 2 * j))
    }

    fn r2_bit(&self, u: usize) -> Option<u32> {
        self.r
            .binary_search(&u)
            .ok()
            .map(|j| 1 << (self.r_off() + 2 * j + 1))
    }

    fn d_bit(&self, u: usize) -> Option<u32> {
        self.d
            .binary_search(&u)
            .ok()
            .map(|j| 1 << (self.d_off() + j))
    }

    fn s_mask(&self) -> u32 {
        (1u32 << self.p_off()) - 1
    }

    /// Bits of the p, q and sentinel entries.
    pub fn condition_mask(&self) -> u32 {
        ((1u32 << self.d_off()) - 1) & !self.s_mask()
    }

    fn d_mask(&self) -> u32 {
        ((1u32 << self.bits()) - 1) & !((1u32 << self.d_off()) - 1)
    }

    /// `(from bit, to bit)` for every element present in both layouts.
    fn transfer(&self, to: &Layout) -> Vec<(u32, u32)> {
        let mut pairs = Vec::new();
        for &u in &self.bag {
            if let (Some(a), Some(b)) = (self.s_bit(u), to.s_bit(u)) {
                pairs.push((a, b));
            }
        }
        for &i in &self.p {
            if let (Some(a), Some(b)) = (self.p_bit(i), to.p_bit(i)) {
                pairs.push((a, b));
            }
        }
        for &i in &self.q {
            if let (Some(a), Some(b)) = (self.qa_bit(i), to.qa_bit(i)) {
                pairs.push((a, b));
            }
            if let (Some(a), Some(b)) = (self.qb_bit(i), to.qb_bit(i)) {
                pairs.push((a, b));
            }
        }
        for &u in &self.r {
            if let (Some(a), Some(b)) = (self.r1_bit(u), to.r1_bit(u)) {
                pairs.push((a, b));
            }
            if let (Some(a), Some(b)) = (self.r2_bit(u), to.r2_bit(u)) {
                pairs.push((a, b));
            }
        }
        for &u in &self.d {
            if let (Some(a), Some(b)) = (self.d_bit(u), to.d_bit(u)) {
                pairs.push((a, b));
            }
        }
        pairs
    }

    pub fn decode(&self, pat: u32) -> PatternView {
        let on = |bit: Option<u32>| pat & bit.unwrap() != 0;
        PatternView {
            s: self
                .bag
                .iter()
                .copied()
                .filter(|&u| on(self.s_bit(u)))
                .collect(),
            p: self.p.iter().map(|&i| (i, on(self.p_bit(i)))).collect(),
            q: self
                .q
                .iter()
                .map(|&i| (i, on(self.qa_bit(i)), on(self.qb_bit(i))))
                .collect(),
            r: self
                .r
                .iter()
                .map(|&u| (u, on(self.r1_bit(u)), on(self.r2_bit(u))))
                .collect(),
            d: self.d.iter().map(|&u| (u, on(self.d_bit(u)))).collect(),
        }
    }
}

fn apply(transfer: &[(u32, u32)], pat: u32) -> u32 {
    transfer
        .iter()
        .filter(|(from, _)| pat & from != 0)
        .fold(0, |acc, (_, to)| acc | to)
}

/// Submasks of `mask` in increasing numeric order.
fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(0u32);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            Some((cur | !mask).wrapping_add(1) & mask)
        };
        Some(cur)
    })
}

#[derive(Debug, Clone)]
enum Provenance {
    Leaf,
    Single(Vec<u32>),
    Pair(Vec<(u32, u32)>),
}

#[derive(Debug, Clone)]
pub struct Table {
    pub layout: Layout,
    pub costs: Vec<u32>,
    provenance: Provenance,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DpStats {
    pub nodes: usize,
    pub max_bag: usize,
    pub max_patterns: usize,
    pub total_patterns: usize,
}

/// Tables of every node of a nice decomposition of a kernelized instance.
#[derive(Debug, Clone)]
pub struct DpRun {
    pub nice: NiceTreeDecomposition,
    pub classification: Classification,
    pub tables: Vec<Table>,
    pub stats: DpStats,
}

/// Runs the dynamic program on a kernelized instance (no edge between two
/// vertices with `tau = deg`) and a nice decomposition of its graph.
pub fn run_dp(kernel: &Instance, nice: NiceTreeDecomposition) -> Result<DpRun> {
    let classification = classify(kernel)?;
    let g = kernel.graph();
    let roles = Roles::new(g.n(), &classification);
    let mut forgotten = vec![false; g.n() + 1];
    let mut tables: Vec<Table> = Vec::with_capacity(nice.nodes.len());
    let mut stats = DpStats {
        nodes: nice.nodes.len(),
        ..Default::default()
    };
    let layouts: Vec<Layout> = nice
        .nodes
        .iter()
        .map(|node| Layout::new(&node.bag, &roles))
        .collect();
    // reject before filling any table
    if let Some(bits) = layouts.iter().map(Layout::bits).max() {
        if bits > MAX_PATTERN_BITS {
            return Err(Error::TooWide {
                bits,
                limit: MAX_PATTERN_BITS,
            });
        }
    }
    for (node, layout) in nice.nodes.iter().zip(layouts) {
        assert!(
            layout.bits() <= 3 * node.bag.len(),
            "more than 8^|bag| patterns"
        );
        let table = match node.kind {
            NodeKind::Leaf => Table {
                layout,
                costs: vec![0],
                provenance: Provenance::Leaf,
            },
            NodeKind::Introduce { child, vertex } => {
                introduce(g, &roles, &tables[child], layout, vertex)
            }
            NodeKind::Forget { child, vertex } => {
                let child_table = &tables[child];
                for &w in g.neighbors(vertex) {
                    assert!(
                        forgotten[w] || child_table.layout.s_bit(w).is_some(),
                        "neighbour {w} of forgotten vertex {vertex} lies outside the subtree"
                    );
                }
                forgotten[vertex] = true;
                forget(g, &roles, child_table, layout, vertex)
            }
            NodeKind::Join { left, right } => join(&tables[left], &tables[right], layout),
        };
        check_monotone(&table);
        stats.max_bag = stats.max_bag.max(node.bag.len());
        stats.max_patterns = stats.max_patterns.max(table.costs.len());
        stats.total_patterns += table.costs.len();
        tables.push(table);
    }
    Ok(DpRun {
        nice,
        classification,
        tables,
        stats,
    })
}

/// Entries can only get more expensive when a p/q/sentinel bit is raised.
fn check_monotone(table: &Table) {
    let cond = table.layout.condition_mask();
    for pat in 0..table.costs.len() as u32 {
        for bit in submasks(pat & cond).filter(|b| b.is_power_of_two()) {
            assert!(
                table.costs[pat as usize] >= table.costs[(pat ^ bit) as usize],
                "pattern table not monotone at {pat:#b} / bit {bit:#b}"
            );
        }
    }
}

fn introduce(g: &Graph, roles: &Roles, child: &Table, layout: Layout, u: usize) -> Table {
    let transfer = layout.transfer(&child.layout);
    let su = layout.s_bit(u).unwrap();
    let mut must_be_zero = 0u32;
    match roles.role[u] {
        Role::P(i) if child.layout.p_bit(i).is_none() => must_be_zero |= layout.p_bit(i).unwrap(),
        Role::Q(i, _) if child.layout.qa_bit(i).is_none() => {
            must_be_zero |= layout.qa_bit(i).unwrap() | layout.qb_bit(i).unwrap()
        }
        Role::Sentinel => must_be_zero |= layout.r1_bit(u).unwrap() | layout.r2_bit(u).unwrap(),
        _ => {}
    }
    // FULL neighbours in the bag whose whole neighbourhood must be in X
    let full_nbr_bits: u32 = g
        .neighbors(u)
        .iter()
        .filter_map(|&v| layout.d_bit(v))
        .fold(0, |a, b| a | b);
    let own_d = layout.d_bit(u);
    let nbrs_in_s: u32 = g
        .neighbors(u)
        .iter()
        .filter_map(|&v| layout.s_bit(v))
        .fold(0, |a, b| a | b);

    let mut costs = vec![INF; layout.patterns()];
    let mut prov = vec![0u32; layout.patterns()];
    for pat in 0..layout.patterns() as u32 {
        if pat & must_be_zero != 0 {
            continue;
        }
        if pat & su == 0 && pat & full_nbr_bits != 0 {
            continue;
        }
        if let Some(d) = own_d {
            if pat & d != 0 && pat & nbrs_in_s != nbrs_in_s {
                continue;
            }
        }
        let c = apply(&transfer, pat);
        costs[pat as usize] = child.costs[c as usize];
        prov[pat as usize] = c;
    }
    Table {
        layout,
        costs,
        provenance: Provenance::Single(prov),
    }
}

fn forget(g: &Graph, roles: &Roles, child: &Table, layout: Layout, u: usize) -> Table {
    let cl = &child.layout;
    let transfer = layout.transfer(cl);
    let su = cl.s_bit(u).unwrap();
    let bag_s_bits = |pred: &dyn Fn(usize) -> bool| -> u32 {
        layout
            .bag
            .iter()
            .filter(|&&v| pred(v))
            .map(|&v| layout.s_bit(v).unwrap())
            .fold(0, |a, b| a | b)
    };

    let mut costs = vec![INF; layout.patterns()];
    let mut prov = vec![0u32; layout.patterns()];
    let mut options: Vec<(u32, u32)> = Vec::with_capacity(4);
    for pat in 0..layout.patterns() as u32 {
        let base = apply(&transfer, pat);
        options.clear();
        match roles.role[u] {
            Role::Free => {
                options.push((base, 0));
                options.push((base | su, 1));
            }
            Role::P(i) => {
                let bit = cl.p_bit(i).unwrap();
                if layout.p_bit(i).is_some() {
                    options.push((base, 0));
                } else {
                    let hit = bag_s_bits(&|v| roles.p_nbhd[v].contains(&i));
                    options.push((if pat & hit == 0 { base | bit } else { base }, 0));
                }
                options.push(((base | su) & !bit, 1));
            }
            Role::Q(i, side) => {
                let a_bit = cl.qa_bit(i).unwrap();
                let b_bit = cl.qb_bit(i).unwrap();
                let own = if side == Side::A { a_bit } else { b_bit };
                let mut open = base;
                if layout.qa_bit(i).is_none() {
                    let hit_a = bag_s_bits(&|v| roles.q_abar[v].contains(&i));
                    let hit_b = bag_s_bits(&|v| roles.q_bbar[v].contains(&i));
                    if pat & hit_a == 0 {
                        open |= a_bit;
                    }
                    if pat & hit_b == 0 {
                        open |= b_bit;
                    }
                }
                options.push((open, 0));
                options.push(((open | su) & !own, 1));
            }
            Role::Sentinel => {
                let nbr_s = bag_s_bits(&|v| g.has_edge(u, v));
                let v2_ready = g
                    .neighbors(u)
                    .iter()
                    .filter_map(|&v| layout.d_bit(v))
                    .any(|d| pat & d != 0);
                let mut c = base | su;
                if pat & nbr_s == 0 {
                    c |= cl.r1_bit(u).unwrap();
                }
                if !v2_ready {
                    c |= cl.r2_bit(u).unwrap();
                }
                options.push((c, 1));
            }
            Role::Full => {
                let du = cl.d_bit(u).unwrap();
                let adjacent_sentinels: Vec<usize> = g
                    .neighbors(u)
                    .iter()
                    .copied()
                    .filter(|&v| layout.r1_bit(v).is_some())
                    .collect();
                let v1_bits: u32 = adjacent_sentinels
                    .iter()
                    .map(|&v| cl.r1_bit(v).unwrap())
                    .fold(0, |a, b| a | b);
                let v2_bits: u32 = adjacent_sentinels
                    .iter()
                    .map(|&v| cl.r2_bit(v).unwrap())
                    .fold(0, |a, b| a | b);
                let mut hit_bits = v1_bits;
                for &i in &roles.p_nbhd[u] {
                    if let Some(b) = cl.p_bit(i) {
                        hit_bits |= b;
                    }
                }
                for &i in &roles.q_abar[u] {
                    if let Some(b) = cl.qa_bit(i) {
                        hit_bits |= b;
                    }
                }
                for &i in &roles.q_bbar[u] {
                    if let Some(b) = cl.qb_bit(i) {
                        hit_bits |= b;
                    }
                }
                options.push((base, 0));
                options.push(((base | du) & !v2_bits, 0));
                options.push(((base | su) & !hit_bits, 1));
                options.push(((base | su | du) & !hit_bits & !v2_bits, 1));
            }
        }
        let mut best = INF;
        let mut from = 0;
        for &(c, add) in &options {
            let v = child.costs[c as usize];
            if v != INF && v + add < best {
                best = v + add;
                from = c;
            }
        }
        costs[pat as usize] = best;
        prov[pat as usize] = from;
    }
    Table {
        layout,
        costs,
        provenance: Provenance::Single(prov),
    }
}

fn join(left: &Table, right: &Table, layout: Layout) -> Table {
    debug_assert_eq!(left.layout, layout);
    debug_assert_eq!(right.layout, layout);
    let cond = layout.condition_mask();
    let key_mask = layout.s_mask() | layout.d_mask();
    let mut costs = vec![INF; layout.patterns()];
    let mut prov = vec![(0u32, 0u32); layout.patterns()];
    let mut right_entries: Vec<(u32, u32)> = Vec::new();
    for key in submasks(key_mask) {
        right_entries.clear();
        right_entries.extend(
            submasks(cond)
                .map(|c| (c, right.costs[(key | c) as usize]))
                .filter(|&(_, v)| v != INF),
        );
        for cl in submasks(cond) {
            let lv = left.costs[(key | cl) as usize];
            if lv == INF {
                continue;
            }
            for &(cr, rv) in &right_entries {
                let pat = (key | cl | cr) as usize;
                if lv + rv < costs[pat] {
                    costs[pat] = lv + rv;
                    prov[pat] = (key | cl, key | cr);
                }
            }
        }
    }
    // downward closure over the condition bits
    let mut bit = 1u32;
    while bit != 0 && bit <= cond {
        if cond & bit != 0 {
            for pat in 0..layout.patterns() as u32 {
                if pat & bit == 0 && costs[(pat | bit) as usize] < costs[pat as usize] {
                    costs[pat as usize] = costs[(pat | bit) as usize];
                    prov[pat as usize] = prov[(pat | bit) as usize];
                }
            }
        }
        bit <<= 1;
    }
    Table {
        layout,
        costs,
        provenance: Provenance::Pair(prov),
    }
}

impl DpRun {
    /// Cost of the empty pattern at the root.
    pub fn optimum(&self) -> u32 {
        self.tables[self.nice.root()].costs[0]
    }

    /// Rebuilds an optimal kernel vertex set from the provenance links.
    pub fn reconstruct(&self) -> VertexSet {
        let mut chosen = VertexSet::new();
        let mut stack = vec![(self.nice.root(), 0u32)];
        while let Some((t, pat)) = stack.pop() {
            let table = &self.tables[t];
            match (&self.nice.nodes[t].kind, &table.provenance) {
                (NodeKind::Leaf, _) => {}
                (NodeKind::Introduce { child, .. }, Provenance::Single(p)) => {
                    stack.push((*child, p[pat as usize]));
                }
                (NodeKind::Forget { child, vertex }, Provenance::Single(p)) => {
                    let c = p[pat as usize];
                    if c & self.tables[*child].layout.s_bit(*vertex).unwrap() != 0 {
                        chosen.insert(*vertex);
                    }
                    stack.push((*child, c));
                }
                (NodeKind::Join { left, right }, Provenance::Pair(p)) => {
                    let (l, r) = p[pat as usize];
                    stack.push((*left, l));
                    stack.push((*right, r));
                }
                _ => unreachable!("provenance kind matches node kind"),
            }
        }
        chosen
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub min_size: usize,
    /// A minimum target set in original ids, verified by simulation.
    pub witness: VertexSet,
    pub forced: usize,
    pub kernel_order: usize,
    pub width: usize,
    pub stats: DpStats,
}

/// Decomposition of the kernel: the given one restricted and relabelled, or
/// a min-fill heuristic one.
pub fn kernel_decomposition(
    inst: &Instance,
    kz: &Kernelization,
    td: Option<&TreeDecomposition>,
) -> Result<TreeDecomposition> {
    let td = match td {
        Some(td) => {
            td.validate(inst.graph())?;
            let keep: VertexSet = kz.vertex_map.iter().copied().collect();
            restrict_td(td, &keep).relabel(&kz.vertex_map)
        }
        None => heuristic_td(kz.kernel.graph()),
    };
    td.validate(kz.kernel.graph())?;
    Ok(td)
}

/// Minimum target set: kernelize, decompose, run the DP on the kernel and add
/// back the forced vertices.
pub fn solve(inst: &Instance, td: Option<&TreeDecomposition>) -> Result<Solution> {
    let kz = kernelize(inst);
    let ktd = kernel_decomposition(inst, &kz, td)?;
    let nice = make_nice(&ktd);
    nice.check()?;
    let width = nice.width();
    let run = run_dp(&kz.kernel, nice)?;
    let optimum = run.optimum();
    if optimum == INF {
        return Err(Error::Internal("root table has no finite entry".into()));
    }
    let mut witness = kz.lift(&run.reconstruct());
    if witness.len() != optimum as usize {
        return Err(Error::Internal(format!(
            "reconstructed {} kernel vertices for optimum {optimum}",
            witness.len()
        )));
    }
    witness.extend(kz.forced.iter().copied());
    let min_size = kz.forced.len() + optimum as usize;
    if witness.len() != min_size || !is_target_set(inst, &ActiveSet::from_ids(inst.n(), &witness)) {
        return Err(Error::Internal(
            "reconstructed witness is not a target set".into(),
        ));
    }
    Ok(Solution {
        min_size,
        witness,
        forced: kz.forced.len(),
        kernel_order: kz.kernel.n(),
        width,
        stats: run.stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::instance::ThresholdMap;

    fn inst(n: usize, edges: &[(usize, usize)], tau: &[usize]) -> Instance {
        Instance::new(
            Graph::from_edges(n, edges.iter().copied()).unwrap(),
            ThresholdMap::new(tau.to_vec()),
        )
        .unwrap()
    }

    fn path_td(n: usize) -> TreeDecomposition {
        TreeDecomposition::new(
            (1..n).map(|i| [i, i + 1].into()).collect(),
            (1..n - 1).map(|i| (i, i + 1)).collect(),
        )
    }

    #[test]
    fn submasks_increase() {
        assert_eq!(submasks(0b101).collect::<Vec<_>>(), vec![0, 1, 4, 5]);
        assert_eq!(submasks(0).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn p4_all_ones() {
        let p4 = inst(4, &[(1, 2), (2, 3), (3, 4)], &[1; 4]);
        let sol = solve(&p4, Some(&path_td(4))).unwrap();
        assert_eq!(sol.min_size, 2);
        assert_eq!(sol.width, 1);
    }

    #[test]
    fn spider() {
        let g = inst(5, &[(1, 2), (1, 3), (2, 4), (3, 5)], &[1, 2, 2, 0, 0]);
        let td = TreeDecomposition::new(
            vec![[1, 2].into(), [1, 3].into(), [2, 4].into(), [3, 5].into()],
            vec![(1, 2), (1, 3), (2, 4)],
        );
        let sol = solve(&g, Some(&td)).unwrap();
        assert_eq!(sol.min_size, 3);
        assert_eq!(sol.width, 1);
    }

    #[test]
    fn fully_forced_p5() {
        let p5 = inst(5, &[(1, 2), (2, 3), (3, 4), (4, 5)], &[1, 2, 1, 2, 1]);
        let sol = solve(&p5, None).unwrap();
        assert_eq!(sol.min_size, 5);
        assert_eq!(sol.forced, 5);
        assert_eq!(sol.kernel_order, 0);
    }

    #[test]
    fn invalid_decomposition_is_rejected() {
        let k3 = inst(3, &[(1, 2), (2, 3), (1, 3)], &[1; 3]);
        let td = path_td(3);
        assert!(matches!(
            solve(&k3, Some(&td)),
            Err(Error::InvalidDecomposition(_))
        ));
    }

    #[test]
    fn layout_offsets() {
        let c4 = inst(4, &[(1, 2), (2, 3), (3, 4), (1, 4)], &[1; 4]);
        let cls = classify(&c4).unwrap();
        let roles = Roles::new(4, &cls);
        let layout = Layout::new(&[1, 2], &roles);
        // two S bits, one q component with two bits
        assert_eq!(layout.bits(), 4);
        assert_eq!(layout.condition_mask(), 0b1100);
        let view = layout.decode(0b0101);
        assert_eq!(view.s, VertexSet::from([1]));
        assert_eq!(view.q, vec![(0, true, false)]);
    }
}
