//! Explicit families in which every k-subset has a prescribed shape.

use itertools::Itertools;
use serde::Serialize;

use crate::certificate::Certificate;
use crate::comb::{binom_u128, DVector};
use crate::error::{Error, Result};
use crate::family::{Edge, Family, VertexId};
use crate::profile::{self, BVector};
use crate::subsets;

/// Cap on total vertex memberships a builder may allocate.
pub const MEMBERSHIP_BUDGET: u128 = 100_000_000;

fn check_memberships(total: Option<u128>) -> Result<()> {
    match total {
        Some(t) if t <= MEMBERSHIP_BUDGET && t < VertexId::MAX as u128 => Ok(()),
        Some(t) => Err(Error::BudgetExceeded { needed: t, budget: MEMBERSHIP_BUDGET }),
        None => Err(Error::Overflow),
    }
}

/// `m` edges of size `r` sharing exactly a common core of size `core`.
///
/// The core is `0..core`; petals are numbered consecutively after it.
pub fn build_sunflower(m: usize, r: usize, core: usize) -> Result<Family> {
    if core > r {
        return Err(Error::InvalidCore { core, r });
    }
    if m == 0 {
        return Err(Error::InvalidParameter("sunflower needs m >= 1".into()));
    }
    check_memberships((m as u128).checked_mul(r as u128))?;
    let petal = r - core;
    let edges = (0..m)
        .map(|i| {
            let start = (core + i * petal) as VertexId;
            let members = (0..core as VertexId).chain(start..start + petal as VertexId).collect();
            Edge::from_sorted_unchecked(members)
        })
        .collect();
    Family::new(edges)
}

/// The bipartite-neighbourhood family `F_m^{d_1..d_k}`.
///
/// For each level `ℓ < k`, each `ℓ`-subset `S ⊆ [m]` and `1 ≤ j ≤ d_ℓ` there
/// is a vertex `v_j^S` lying in the edges indexed by `S`; the `d_k` vertices
/// `w_j` lie in every edge. Labels follow level, then subset in
/// lexicographic order, then `j`, so edge `i` is the `i`-th edge in
/// canonical order.
pub fn build_fdk(m: usize, d: &DVector) -> Result<Family> {
    let k = d.k();
    if m < k {
        return Err(Error::TooFewEdges { need: k, have: m });
    }
    let ds = d.as_slice();
    let total = (1..k)
        .try_fold(0u128, |acc, l| {
            let per = binom_u128(m as u64, l as u64)?.checked_mul(l as u128 * ds[l - 1] as u128)?;
            acc.checked_add(per)
        })
        .and_then(|t| t.checked_add((m as u128).checked_mul(ds[k - 1] as u128)?));
    check_memberships(total)?;

    let mut edges: Vec<Vec<VertexId>> = vec![Vec::new(); m];
    let mut next: VertexId = 0;
    for level in 1..k {
        let mult = ds[level - 1];
        if mult == 0 {
            continue;
        }
        for s in (0..m).combinations(level) {
            for _ in 0..mult {
                for &i in &s {
                    edges[i].push(next);
                }
                next += 1;
            }
        }
    }
    for _ in 0..ds[k - 1] {
        for e in edges.iter_mut() {
            e.push(next);
        }
        next += 1;
    }
    Family::new(edges.into_iter().map(Edge::from_sorted_unchecked).collect())
}

/// Edge `F_i` = the `L`-subsets of `[m]` containing `i`, one vertex per subset
/// in lexicographic order. ℓ-wise intersections are nonempty iff `ℓ ≤ L`.
pub fn build_level_intersecting(m: usize, level: usize) -> Result<Family> {
    if level == 0 || level > m {
        return Err(Error::InvalidParameter(format!("need 1 <= L <= m, got L={level}, m={m}")));
    }
    let total = binom_u128(m as u64, level as u64).and_then(|c| c.checked_mul(level as u128));
    check_memberships(total)?;
    let mut edges: Vec<Vec<VertexId>> = vec![Vec::new(); m];
    for (label, s) in (0..m).combinations(level).enumerate() {
        for &i in &s {
            edges[i].push(label as VertexId);
        }
    }
    Family::new(edges.into_iter().map(Edge::from_sorted_unchecked).collect())
}

/// Adds `extra` private vertices to every edge.
pub fn pad_family(f: &Family, extra: usize) -> Result<Family> {
    let base = f.vertex_bound() as u128;
    check_memberships(
        (f.len() as u128).checked_mul(extra as u128).and_then(|t| t.checked_add(base)),
    )?;
    let base = base as VertexId;
    let edges = f
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let start = base + (i * extra) as VertexId;
            let mut members = e.members().to_vec();
            members.extend(start..start + extra as VertexId);
            Edge::from_sorted_unchecked(members)
        })
        .collect();
    Family::new(edges)
}

/// Edge-wise union of `f` and a copy of `g` shifted past `f`'s labels.
pub fn merge_families(f: &Family, g: &Family) -> Result<Family> {
    if f.len() != g.len() {
        return Err(Error::SizeMismatch { left: f.len(), right: g.len() });
    }
    let shift = f.vertex_bound();
    if (shift as u64) + (g.vertex_bound() as u64) >= VertexId::MAX as u64 {
        return Err(Error::Overflow);
    }
    let edges = f
        .edges()
        .iter()
        .zip(g.edges())
        .map(|(a, b)| {
            let mut members = a.members().to_vec();
            members.extend(b.members().iter().map(|v| v + shift));
            Edge::from_sorted_unchecked(members)
        })
        .collect();
    Family::new(edges)
}

/// The first `count` edges in canonical order.
pub fn take_subfamily(f: &Family, count: usize) -> Result<Family> {
    if count > f.len() {
        return Err(Error::TooFewEdges { need: count, have: f.len() });
    }
    Family::new(f.edges()[..count].to_vec())
}

#[derive(Debug, Serialize)]
struct PatternFailure {
    subset: Vec<usize>,
    outcome: profile::EipOutcome,
}

/// Checks that every `b.k()`-subset of `f` is a copy of `H(b)`. A failure
/// carries the lexicographically first offending subset.
pub fn verify_uniform_pattern(f: &Family, b: &BVector) -> Result<Certificate> {
    let k = b.k();
    if f.len() < k {
        return Err(Error::TooFewEdges { need: k, have: f.len() });
    }
    subsets::check_budget(f.len(), k)?;
    let edges = f.edges();
    let failing = subsets::par_find_first(f.len(), k, |s| {
        let chosen: Vec<&Edge> = s.iter().map(|&i| &edges[i]).collect();
        !profile::matches_b(&profile::venn_cells(&chosen), b)
    });
    let cert = Certificate::new("uniform_pattern")
        .param("b", b)
        .param("m", f.len())
        .param("subsets", subsets::subset_count(f.len(), k) as u64);
    Ok(match failing {
        None => cert.passed(),
        Some(subset) => {
            let chosen: Vec<&Edge> = subset.iter().map(|&i| &edges[i]).collect();
            let outcome = profile::eip_extract(&chosen)?;
            cert.failed(PatternFailure { subset, outcome })
        }
    })
}
