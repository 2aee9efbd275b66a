#![allow(dead_code)]

use ntss_core::brute::min_target_bruteforce;
use ntss_core::characterize::Classification;
use ntss_core::dp::{run_dp, DpRun, INF};
use ntss_core::graph::{Graph, VertexSet};
use ntss_core::hardness::{parse_dimacs, RestrictedCnf};
use ntss_core::instance::{Instance, ThresholdMap};
use ntss_core::kernel::kernelize;
use ntss_core::nice::{make_nice, NodeKind};
use ntss_core::td::heuristic_td;

pub fn inst(n: usize, edges: &[(usize, usize)], tau: &[usize]) -> Instance {
    Instance::new(
        Graph::from_edges(n, edges.iter().copied()).unwrap(),
        ThresholdMap::new(tau.to_vec()),
    )
    .unwrap()
}

pub fn path(n: usize) -> Instance {
    let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
    inst(n, &edges, &vec![1; n])
}

pub fn cycle(n: usize) -> Instance {
    let mut edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
    edges.push((1, n));
    inst(n, &edges, &vec![1; n])
}

/// Centre 1 joined to two paths of length two; minimum 3.
pub fn spider() -> Instance {
    inst(5, &[(1, 2), (1, 3), (2, 4), (3, 5)], &[1, 2, 2, 0, 0])
}

/// Stars `K_{1,s}` under every centre threshold in the regime, leaves at 1.
pub fn stars() -> Vec<Instance> {
    let mut out = Vec::new();
    for s in 2..=4 {
        let edges: Vec<_> = (2..=s + 1).map(|v| (1, v)).collect();
        for centre in [0, 1, s] {
            let mut tau = vec![1; s + 1];
            tau[0] = centre;
            out.push(inst(s + 1, &edges, &tau));
        }
        // leaves at 0 leave the centre's condition to itself
        let mut tau = vec![0; s + 1];
        tau[0] = s;
        out.push(inst(s + 1, &edges, &tau));
    }
    out
}

pub fn fixtures() -> Vec<(String, Instance)> {
    let mut out = Vec::new();
    for n in 2..=6 {
        out.push((format!("P{n}"), path(n)));
    }
    for n in 3..=6 {
        out.push((format!("C{n}"), cycle(n)));
    }
    out.push(("spider".into(), spider()));
    for (i, s) in stars().into_iter().enumerate() {
        out.push((format!("star{i}"), s));
    }
    out
}

/// Vertices in the bags of the subtree below every nice node.
fn subtree_vertices(run: &DpRun) -> Vec<VertexSet> {
    let mut below: Vec<VertexSet> = Vec::with_capacity(run.nice.nodes.len());
    for node in &run.nice.nodes {
        let mut set: VertexSet = node.bag.iter().copied().collect();
        match node.kind {
            NodeKind::Leaf => {}
            NodeKind::Introduce { child, .. } | NodeKind::Forget { child, .. } => {
                set.extend(below[child].iter().copied())
            }
            NodeKind::Join { left, right } => {
                set.extend(below[left].iter().copied());
                set.extend(below[right].iter().copied());
            }
        }
        below.push(set);
    }
    below
}

/// The minimum of `|X \ bag|` over all `X ⊆ V(G_t)` with `X ∩ bag = S` that
/// honour the decoded pattern, by enumeration. `G_t` is the subgraph induced
/// by the subtree's bags and `V^-` its forgotten vertices.
fn definitional_cost(
    g: &Graph,
    cls: &Classification,
    gt: &VertexSet,
    bag: &VertexSet,
    view: &ntss_core::dp::PatternView,
) -> u32 {
    let minus: Vec<usize> = gt.difference(bag).copied().collect();
    let in_gt = |v: usize| gt.contains(&v);
    let nbrs_gt = |v: usize| -> Vec<usize> {
        g.neighbors(v)
            .iter()
            .copied()
            .filter(|&w| in_gt(w))
            .collect()
    };
    let mut best = INF;
    for mask in 0u32..1 << minus.len() {
        let mut x = view.s.clone();
        for (i, &v) in minus.iter().enumerate() {
            if mask >> i & 1 == 1 {
                x.insert(v);
            }
        }
        let in_minus = |v: &usize| !bag.contains(v) && in_gt(*v);
        let hits_minus = |set: &VertexSet| set.iter().any(|v| x.contains(v) && in_minus(v));
        let hits = |set: &VertexSet| set.iter().any(|v| x.contains(v));
        let subset_of_x = |vs: &[usize]| vs.iter().all(|w| x.contains(w));
        let b_of = |v: usize| view.d.iter().find(|(u, _)| *u == v).map(|&(_, b)| b);

        // constraints whose component is entirely forgotten hold in full
        let c2 = cls
            .p_components
            .iter()
            .all(|p| !p.members.iter().all(in_minus) || hits(&p.closed_nbhd));
        let c3 = cls
            .q_components
            .iter()
            .all(|q| !q.members.iter().all(in_minus) || (hits(&q.a_bar) && hits(&q.b_bar)));
        // forgotten sentinels: v1 in X, and v2 with N(v2) in X whose bit is
        // set when v2 is still in the bag
        let c4 = cls.sentinels.iter().filter(|u| in_minus(u)).all(|&u| {
            let nu = nbrs_gt(u);
            nu.iter().any(|v1| x.contains(v1))
                && nu.iter().any(|&v2| {
                    subset_of_x(&nbrs_gt(v2)) && (!bag.contains(&v2) || b_of(v2) == Some(true))
                })
        });
        // component bits owe a hit among forgotten vertices
        let c5 = view
            .p
            .iter()
            .all(|&(i, b)| !b || hits_minus(&cls.p_components[i].closed_nbhd));
        let c67 = view.q.iter().all(|&(i, ba, bb)| {
            (!ba || hits_minus(&cls.q_components[i].a_bar))
                && (!bb || hits_minus(&cls.q_components[i].b_bar))
        });
        // sentinel bits owe a forgotten v1 / v2
        let c89 = view.r.iter().all(|&(u, b1, b2)| {
            let nu = nbrs_gt(u);
            (!b1 || nu.iter().any(|v| x.contains(v) && in_minus(v)))
                && (!b2 || nu.iter().any(|&v| in_minus(&v) && subset_of_x(&nbrs_gt(v))))
        });
        // FULL bits: neighbourhood in G_t inside X
        let c10 = view.d.iter().all(|&(u, b)| !b || subset_of_x(&nbrs_gt(u)));
        if c2 && c3 && c4 && c5 && c67 && c89 && c10 {
            best = best.min(mask.count_ones());
        }
    }
    best
}

/// Compares every table entry of the DP on the kernel of `inst` against the
/// definitional minimum.
pub fn check_table_semantics(inst: &Instance) -> Result<usize, String> {
    let kz = kernelize(inst);
    let g = kz.kernel.graph();
    let nice = make_nice(&heuristic_td(g));
    let run = run_dp(&kz.kernel, nice).map_err(|e| e.to_string())?;
    let below = subtree_vertices(&run);
    let mut checked = 0;
    for (t, table) in run.tables.iter().enumerate() {
        let bag: VertexSet = run.nice.nodes[t].bag.iter().copied().collect();
        for pat in 0..table.costs.len() as u32 {
            let view = table.layout.decode(pat);
            let want = definitional_cost(g, &run.classification, &below[t], &bag, &view);
            if table.costs[pat as usize] != want {
                return Err(format!(
                    "node {t} ({:?}) pattern {view:?}: table {} definition {}",
                    run.nice.nodes[t].kind, table.costs[pat as usize], want
                ));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

pub fn brute_min(inst: &Instance) -> usize {
    min_target_bruteforce(inst, None).unwrap().min_size
}

/// The restricted CNF fixtures, sorted by file name.
pub fn corpus() -> Vec<(String, RestrictedCnf)> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/cnf");
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let cnf = parse_dimacs(&std::fs::read_to_string(&p).unwrap()).unwrap();
            (p.file_name().unwrap().to_string_lossy().into_owned(), cnf)
        })
        .collect()
}
