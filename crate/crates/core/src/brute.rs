//! Exhaustive ground truth built only on simulation.

use rayon::prelude::*;

use crate::characterize::TargetSetDecider;
use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::instance::Instance;
use crate::random::{random_instance, Lcg};
use crate::sim::{is_target_set, ActiveSet};

pub const DEFAULT_BRUTE_BUDGET: usize = 20;
pub const CROSS_VALIDATE_BUDGET: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub min_size: usize,
    pub witness: VertexSet,
    /// Position of the witness in the enumeration order (1-based), i.e. the
    /// number of subsets that precede it plus one.
    pub subsets_examined: u64,
}

/// All `k`-subsets of `1..=n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (1..=k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - (k - 1 - i) {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Smallest target set of size at most `max_size`, scanning subsets by
/// cardinality and lexicographically within a cardinality.
pub fn search_up_to(inst: &Instance, max_size: usize) -> Option<OracleResult> {
    let n = inst.n();
    let mut examined = 0u64;
    for k in 0..=max_size.min(n) {
        let combos = combinations(n, k);
        let found = combos
            .par_iter()
            .position_first(|c| is_target_set(inst, &ActiveSet::from_ids(n, c)));
        if let Some(pos) = found {
            return Some(OracleResult {
                min_size: k,
                witness: combos[pos].iter().copied().collect(),
                subsets_examined: examined + pos as u64 + 1,
            });
        }
        examined += combos.len() as u64;
    }
    None
}

/// Minimum target set by exhaustive enumeration; `budget` bounds `n`
/// (default [`DEFAULT_BRUTE_BUDGET`]).
pub fn min_target_bruteforce(inst: &Instance, budget: Option<usize>) -> Result<OracleResult> {
    let budget = budget.unwrap_or(DEFAULT_BRUTE_BUDGET);
    if inst.n() > budget {
        return Err(Error::SizeBudgetExceeded {
            n: inst.n(),
            budget,
        });
    }
    Ok(search_up_to(inst, inst.n()).expect("V is always a target set"))
}

fn mask_to_set(n: usize, mask: u64) -> ActiveSet {
    let mut x = ActiveSet::empty(n);
    for i in 0..n {
        if mask >> i & 1 == 1 {
            x.insert(i + 1);
        }
    }
    x
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub set: VertexSet,
    pub simulation: bool,
    pub conditions: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossValidation {
    pub subsets: u64,
    pub target_sets: u64,
    /// First disagreement in subset-mask order.
    pub mismatch: Option<Mismatch>,
}

impl CrossValidation {
    pub fn is_consistent(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Compares simulation against the kernel + conditions decision on every
/// subset of `V`.
pub fn cross_validate(inst: &Instance) -> Result<CrossValidation> {
    let n = inst.n();
    if n > CROSS_VALIDATE_BUDGET {
        return Err(Error::SizeBudgetExceeded {
            n,
            budget: CROSS_VALIDATE_BUDGET,
        });
    }
    let decider = TargetSetDecider::new(inst);
    let verdicts: Vec<(bool, bool)> = (0..1u64 << n)
        .into_par_iter()
        .map(|mask| {
            let x = mask_to_set(n, mask);
            (is_target_set(inst, &x), decider.decide(&x))
        })
        .collect();
    let mismatch = verdicts
        .iter()
        .position(|(a, b)| a != b)
        .map(|mask| Mismatch {
            set: mask_to_set(n, mask as u64).to_set(),
            simulation: verdicts[mask].0,
            conditions: verdicts[mask].1,
        });
    Ok(CrossValidation {
        subsets: verdicts.len() as u64,
        target_sets: verdicts.iter().filter(|v| v.0).count() as u64,
        mismatch,
    })
}

/// Edge density used by the random cross-validation harness.
pub const RANDOM_EDGE_PERCENT: usize = 35;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomCrossValidation {
    pub trials: usize,
    pub subsets: u64,
    /// First failing trial (0-based) with its instance and mismatch.
    pub failure: Option<(usize, Instance, Mismatch)>,
}

/// Runs [`cross_validate`] on `trials` instances drawn from
/// [`random_instance`] with density [`RANDOM_EDGE_PERCENT`].
pub fn cross_validate_random(n: usize, trials: usize, seed: u64) -> Result<RandomCrossValidation> {
    let mut rng = Lcg::new(seed);
    let mut subsets = 0;
    for trial in 0..trials {
        let inst = random_instance(n, RANDOM_EDGE_PERCENT, &mut rng);
        let report = cross_validate(&inst)?;
        subsets += report.subsets;
        if let Some(m) = report.mismatch {
            return Ok(RandomCrossValidation {
                trials: trial + 1,
                subsets,
                failure: Some((trial, inst, m)),
            });
        }
    }
    Ok(RandomCrossValidation {
        trials,
        subsets,
        failure: None,
    })
}
