//! Conflict hypergraphs and exact maximum independent sets.

use itertools::Itertools;
use serde::Serialize;

use super::pattern::Pattern;
use crate::error::{Error, Result};
use crate::family::{Edge, Family};
use crate::subsets;

/// Largest vertex count the branch and bound accepts.
pub const MAX_SEARCH_VERTICES: usize = 128;
/// Largest vertex count for the independence-bound comparison.
pub const MAX_SPENCER_VERTICES: usize = 40;

/// One vertex per edge of a family; one conflict per forbidden `k`-subset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConflictHypergraph {
    pub n: usize,
    pub k: usize,
    pub conflicts: Vec<Vec<u32>>,
}

impl ConflictHypergraph {
    /// Validates, sorts and deduplicates an explicit conflict list.
    pub fn from_edges(n: usize, k: usize, conflicts: Vec<Vec<u32>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::UnsupportedArity { arity: 0, min: 1, max: usize::MAX });
        }
        let mut out = Vec::with_capacity(conflicts.len());
        for c in conflicts {
            let e = Edge::new(c)?.into_inner();
            if e.len() != k {
                return Err(Error::ArityMismatch { expected: k, got: e.len() });
            }
            if let Some(&v) = e.iter().find(|&&v| v as usize >= n) {
                return Err(Error::InvalidParameter(format!("conflict vertex {v} out of range 0..{n}")));
            }
            out.push(e);
        }
        out.sort_unstable();
        out.dedup();
        Ok(ConflictHypergraph { n, k, conflicts: out })
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for c in &self.conflicts {
            for &v in c {
                deg[v as usize] += 1;
            }
        }
        deg
    }

    /// Whether `set` (vertex indices) contains no conflict.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.n];
        for &v in set {
            member[v] = true;
        }
        !self.conflicts.iter().any(|c| c.iter().all(|&v| member[v as usize]))
    }
}

/// Records every `k`-subset of `f` that matches `pattern`.
pub fn conflict_hypergraph(f: &Family, pattern: &Pattern) -> Result<ConflictHypergraph> {
    let k = pattern.arity();
    if k == 0 {
        return Err(Error::UnsupportedArity { arity: 0, min: 1, max: usize::MAX });
    }
    subsets::check_budget(f.len(), k)?;
    let edges = f.edges();
    let conflicts = subsets::par_filter(f.len(), k, |s| {
        let chosen: Vec<&Edge> = s.iter().map(|&i| &edges[i]).collect();
        pattern.matches(&chosen)
    })
    .into_iter()
    .map(|s| s.into_iter().map(|i| i as u32).collect())
    .collect();
    Ok(ConflictHypergraph { n: f.len(), k, conflicts })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndependentSet {
    pub set: Vec<usize>,
    pub explored: u64,
}

struct Search {
    order: Vec<usize>,
    /// For each position, the other members of each incident conflict,
    /// as position masks.
    others: Vec<Vec<u128>>,
    best: u128,
    explored: u64,
}

fn bit(p: usize) -> u128 {
    1u128 << p
}

impl Search {
    fn blocked(&self, p: usize, chosen: u128) -> bool {
        self.others[p].iter().any(|m| m & !chosen == 0)
    }

    fn prune(&self, cand: u128, chosen: u128) -> u128 {
        let mut out = cand;
        let mut rest = cand;
        while rest != 0 {
            let p = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.blocked(p, chosen) {
                out &= !bit(p);
            }
        }
        out
    }

    fn run(&mut self, chosen: u128, cand: u128) {
        self.explored += 1;
        if chosen.count_ones() + cand.count_ones() <= self.best.count_ones() {
            return;
        }
        if cand == 0 {
            self.best = chosen;
            return;
        }
        let p = cand.trailing_zeros() as usize;
        let with = chosen | bit(p);
        let next = self.prune(cand & !bit(p), with);
        self.run(with, next);
        self.run(chosen, cand & !bit(p));
    }
}

/// Exact independence number by branch and bound. Vertices are tried in
/// order of decreasing degree (ties by index), including before excluding,
/// starting from the greedy independent set in that order.
pub fn max_independent_set(g: &ConflictHypergraph) -> Result<IndependentSet> {
    if g.n > MAX_SEARCH_VERTICES {
        return Err(Error::InvalidParameter(format!(
            "exact search supports at most {MAX_SEARCH_VERTICES} vertices, got {}",
            g.n
        )));
    }
    let deg = g.degrees();
    let order: Vec<usize> = (0..g.n).sorted_by_key(|&v| (std::cmp::Reverse(deg[v]), v)).collect();
    let mut pos = vec![0; g.n];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    let mut others = vec![Vec::new(); g.n];
    for c in &g.conflicts {
        for &v in c {
            let mask = c.iter().filter(|&&u| u != v).fold(0u128, |m, &u| m | bit(pos[u as usize]));
            others[pos[v as usize]].push(mask);
        }
    }
    let mut search = Search { order, others, best: 0, explored: 0 };
    let all = if g.n == 128 { u128::MAX } else { bit(g.n) - 1 };
    let start = search.prune(all, 0);

    let mut greedy = 0u128;
    for p in 0..g.n {
        if start & bit(p) != 0 && !search.blocked(p, greedy) {
            greedy |= bit(p);
        }
    }
    search.best = greedy;
    search.run(0, start);

    let mut set: Vec<usize> = (0..g.n).filter(|&p| search.best & bit(p) != 0).map(|p| search.order[p]).collect();
    set.sort_unstable();
    if !g.is_independent(&set) {
        return Err(Error::Invariant("search returned a dependent set".into()));
    }
    Ok(IndependentSet { set, explored: search.explored })
}

/// Largest pattern-free subfamily.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub value: usize,
    pub indices: Vec<usize>,
    pub witness: Family,
    pub explored: u64,
    pub conflicts: usize,
}

/// Scans every `k`-subset of `f` for a copy of `pattern`, independently of
/// any conflict hypergraph. Returns the first copy found.
pub fn find_copy(f: &Family, pattern: &Pattern) -> Result<Option<Vec<usize>>> {
    let k = pattern.arity();
    subsets::check_budget(f.len(), k)?;
    let edges = f.edges();
    Ok((0..f.len()).combinations(k).find(|s| {
        let chosen: Vec<&Edge> = s.iter().map(|&i| &edges[i]).collect();
        pattern.matches(&chosen)
    }))
}

/// `ex(f, pattern)` exactly, with a re-verified witness.
pub fn ex_exact(f: &Family, pattern: &Pattern) -> Result<OracleResult> {
    let g = conflict_hypergraph(f, pattern)?;
    let mis = max_independent_set(&g)?;
    let witness = f.subfamily(&mis.set);
    if let Some(copy) = find_copy(&witness, pattern)? {
        return Err(Error::Invariant(format!("witness contains a copy at {copy:?}")));
    }
    Ok(OracleResult {
        value: mis.set.len(),
        indices: mis.set,
        witness,
        explored: mis.explored,
        conflicts: g.conflicts.len(),
    })
}

/// Exact independence number against the averaging lower bound
/// `((k−1)/k)·(n^k / (k·e))^{1/(k−1)}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpencerReport {
    pub n: usize,
    pub k: usize,
    pub conflicts: usize,
    pub alpha: usize,
    pub bound: f64,
    /// `k·e / n`; the bound is only meaningful when this is at least 1.
    pub average_degree: f64,
    pub witness: Vec<usize>,
    pub holds: bool,
}

pub fn max_independent_spencer(g: &ConflictHypergraph) -> Result<SpencerReport> {
    if g.k < 2 {
        return Err(Error::UnsupportedArity { arity: g.k, min: 2, max: usize::MAX });
    }
    if g.n > MAX_SPENCER_VERTICES {
        return Err(Error::InvalidParameter(format!(
            "at most {MAX_SPENCER_VERTICES} vertices, got {}",
            g.n
        )));
    }
    let mis = max_independent_set(g)?;
    let e = g.conflicts.len();
    let (n, k) = (g.n as f64, g.k as f64);
    let bound = if e == 0 {
        0.0
    } else {
        (k - 1.0) / k * (n.powf(k) / (k * e as f64)).powf(1.0 / (k - 1.0))
    };
    let average_degree = if g.n == 0 { 0.0 } else { k * e as f64 / n };
    let alpha = mis.set.len();
    Ok(SpencerReport {
        n: g.n,
        k: g.k,
        conflicts: e,
        alpha,
        bound,
        average_degree,
        witness: mis.set,
        holds: alpha as f64 + 1e-9 >= bound,
    })
}
