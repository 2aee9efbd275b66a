//! The synchronous non-monotone activation process
//! `X_t = { u : |N(u) ∩ X_{t-1}| >= tau(u) }` with exact cycle detection.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::instance::{format_vertex_set, Instance};

/// A set of active vertices; bit `u` stands for vertex `u` (bit 0 unused).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ActiveSet {
    bits: FixedBitSet,
}

impl ActiveSet {
    pub fn empty(n: usize) -> Self {
        ActiveSet {
            bits: FixedBitSet::with_capacity(n + 1),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = ActiveSet::empty(n);
        s.bits.insert_range(1..n + 1);
        s
    }

    pub fn from_ids<'a, I>(n: usize, ids: I) -> Self
    where
        I: IntoIterator<Item = &'a usize>,
    {
        let mut s = ActiveSet::empty(n);
        for &u in ids {
            s.insert(u);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.bits.len() - 1
    }

    pub fn insert(&mut self, u: usize) {
        assert!(u >= 1 && u <= self.capacity(), "vertex {u} out of range");
        self.bits.insert(u);
    }

    pub fn contains(&self, u: usize) -> bool {
        self.bits.contains(u)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_all(&self) -> bool {
        self.len() == self.capacity()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_set(&self) -> VertexSet {
        self.iter().collect()
    }
}

impl fmt::Debug for ActiveSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ActiveSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_vertex_set(&self.to_set()))
    }
}

/// Eventual behaviour of the process from a given start set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcessOutcome {
    pub reached_all: bool,
    /// First time with `X_t = V`, when it exists.
    pub t0: Option<usize>,
    pub cycle_start: usize,
    pub cycle_length: usize,
    /// Number of distinct states stored.
    pub states: usize,
    /// `X_0, X_1, …` up to the last distinct state, when requested.
    pub trace: Option<Vec<ActiveSet>>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub record_trace: bool,
    /// Abort once this many distinct states are stored.
    pub max_states: Option<usize>,
}

/// One synchronous update.
pub fn step(inst: &Instance, x: &ActiveSet) -> ActiveSet {
    let g = inst.graph();
    let mut next = ActiveSet::empty(g.n());
    for u in g.vertices() {
        let tau = inst.tau(u);
        if tau == 0 {
            next.bits.insert(u);
            continue;
        }
        let mut hits = 0;
        for &v in g.neighbors(u) {
            if x.contains(v) {
                hits += 1;
                if hits >= tau {
                    next.bits.insert(u);
                    break;
                }
            }
        }
    }
    next
}

/// Steps the process keeping active-neighbour counts, so that after the
/// first step only neighbours of vertices that just changed are re-evaluated:
/// `u` can change between `X_t` and `X_{t+1}` only if its count did.
struct Stepper<'a> {
    inst: &'a Instance,
    count: Vec<usize>,
    changed: Vec<usize>,
    mark: Vec<bool>,
}

impl<'a> Stepper<'a> {
    fn new(inst: &'a Instance, x: &ActiveSet) -> Self {
        let g = inst.graph();
        let mut count = vec![0; g.n() + 1];
        for v in x.iter() {
            for &w in g.neighbors(v) {
                count[w] += 1;
            }
        }
        Stepper {
            inst,
            count,
            changed: Vec::new(),
            mark: vec![false; g.n() + 1],
        }
    }

    fn active(&self, u: usize) -> bool {
        self.count[u] >= self.inst.tau(u)
    }

    /// `x` must be the state whose counts are held (the previous result).
    fn advance(&mut self, x: &ActiveSet, first: bool) -> ActiveSet {
        let g = self.inst.graph();
        let mut next = x.clone();
        let mut flips = Vec::new();
        if first {
            flips.extend(g.vertices().filter(|&u| self.active(u) != x.contains(u)));
        } else {
            for &v in &self.changed {
                for &w in g.neighbors(v) {
                    if !self.mark[w] {
                        self.mark[w] = true;
                        if self.active(w) != x.contains(w) {
                            flips.push(w);
                        }
                    }
                }
            }
            for &v in &self.changed {
                for &w in g.neighbors(v) {
                    self.mark[w] = false;
                }
            }
        }
        for &u in &flips {
            next.bits.toggle(u);
            let now_on = next.contains(u);
            for &w in g.neighbors(u) {
                if now_on {
                    self.count[w] += 1;
                } else {
                    self.count[w] -= 1;
                }
            }
        }
        self.changed = flips;
        next
    }
}

/// Iterates [`step`] until the all-active state appears or a state repeats.
pub fn run(inst: &Instance, start: &ActiveSet, opts: RunOptions) -> Result<ProcessOutcome> {
    let n = inst.n();
    let mut seen: HashMap<ActiveSet, usize> = HashMap::new();
    let mut trace = opts.record_trace.then(Vec::new);
    let mut current = start.clone();
    let mut stepper = Stepper::new(inst, start);
    let mut t = 0usize;
    loop {
        if current.is_all() {
            if let Some(tr) = trace.as_mut() {
                tr.push(current);
            }
            return Ok(ProcessOutcome {
                reached_all: true,
                t0: Some(t),
                cycle_start: t,
                cycle_length: 1,
                states: seen.len() + 1,
                trace,
            });
        }
        if let Some(&first) = seen.get(&current) {
            return Ok(ProcessOutcome {
                reached_all: false,
                t0: None,
                cycle_start: first,
                cycle_length: t - first,
                states: seen.len(),
                trace,
            });
        }
        if let Some(cap) = opts.max_states {
            if seen.len() >= cap {
                return Err(Error::StateBudgetExceeded(cap));
            }
        }
        let next = stepper.advance(&current, t == 0);
        debug_assert_eq!(next.capacity(), n);
        if let Some(tr) = trace.as_mut() {
            tr.push(current.clone());
        }
        seen.insert(current, t);
        current = next;
        t += 1;
    }
}

/// Whether the process started at `x` eventually reaches (and stays at) `V`.
pub fn is_target_set(inst: &Instance, x: &ActiveSet) -> bool {
    run(inst, x, RunOptions::default())
        .expect("unbounded run cannot exceed its budget")
        .reached_all
}
