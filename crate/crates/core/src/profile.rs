//! Venn-cell analysis of small edge lists: equal-intersection (EIP)
//! detection, b/a-vector conversion and the evenness classification.
//!
//! Index sets in witnesses are 0-based edge positions; levels are 1-based
//! (a level is the number of edges intersected).

use std::borrow::Borrow;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::comb::binom_u128;
use crate::error::{Error, Result};
use crate::family::{ensure_distinct, Edge};

pub const MAX_ARITY: usize = 16;

/// Cell sizes of the Venn diagram of `k` edges, indexed by bitmask.
///
/// `cell(S)` counts vertices lying in exactly the edges whose bits are set in
/// `S`. The empty mask is unused and always zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VennProfile {
    k: usize,
    cells: Vec<u64>,
}

impl VennProfile {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cell(&self, mask: usize) -> u64 {
        self.cells[mask]
    }

    pub fn cells(&self) -> &[u64] {
        &self.cells
    }

    /// `|∩_{i∈S} A_i|` for every mask `S` (entry 0 is the union size).
    pub fn intersections(&self) -> Vec<u64> {
        let mut inter = self.cells.clone();
        for bit in 0..self.k {
            let b = 1usize << bit;
            for mask in 0..inter.len() {
                if mask & b == 0 {
                    inter[mask] += inter[mask | b];
                }
            }
        }
        inter
    }

    pub fn intersection_size(&self, mask: usize) -> u64 {
        self.cells
            .iter()
            .enumerate()
            .filter(|(t, _)| t & mask == mask)
            .map(|(_, c)| *c)
            .sum()
    }

    pub fn edge_size(&self, i: usize) -> u64 {
        self.intersection_size(1 << i)
    }

    pub fn union_size(&self) -> u64 {
        self.cells.iter().sum()
    }

    /// The common cell size at each level, if every level is constant.
    pub fn level_constant(&self) -> Option<BVector> {
        let mut b = vec![None; self.k];
        for mask in 1..self.cells.len() {
            let slot = &mut b[mask.count_ones() as usize - 1];
            match *slot {
                None => *slot = Some(self.cells[mask]),
                Some(v) if v != self.cells[mask] => return None,
                Some(_) => {}
            }
        }
        Some(BVector { b: b.into_iter().map(|v| v.unwrap_or(0)).collect() })
    }

    /// Profile with edge `i` moved to position `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> VennProfile {
        let mut cells = vec![0; self.cells.len()];
        for (mask, &c) in self.cells.iter().enumerate() {
            let mut m2 = 0;
            for (i, &p) in perm.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    m2 |= 1 << p;
                }
            }
            cells[m2] = c;
        }
        VennProfile { k: self.k, cells }
    }
}

/// Level sizes `(b_1..b_k)` of an equal-intersection hypergraph `H(b)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BVector {
    b: Vec<u64>,
}

impl BVector {
    pub fn new(b: Vec<u64>) -> Result<Self> {
        if b.is_empty() || b.len() > MAX_ARITY {
            return Err(Error::UnsupportedArity { arity: b.len(), min: 1, max: MAX_ARITY });
        }
        Ok(BVector { b })
    }

    pub fn k(&self) -> usize {
        self.b.len()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.b
    }

    /// `b_ℓ` with 1-based `level`.
    pub fn level(&self, level: usize) -> u64 {
        self.b[level - 1]
    }

    /// `Σ_i C(k,i)·b_i`, the vertex count of `H(b)`.
    pub fn vertex_count(&self) -> Option<u128> {
        let k = self.k() as u64;
        self.b.iter().enumerate().try_fold(0u128, |acc, (i, &bi)| {
            acc.checked_add(binom_u128(k, i as u64 + 1)?.checked_mul(bi as u128)?)
        })
    }

    /// Builds the canonical `H(b)`: for each nonempty `S ⊆ [k]` in
    /// level-major lexicographic order, `b_|S|` fresh vertices in every
    /// edge indexed by `S`.
    pub fn realize(&self) -> Result<Vec<Edge>> {
        let k = self.k();
        let total = self.vertex_count().ok_or(Error::Overflow)?;
        if total > u32::MAX as u128 {
            return Err(Error::Overflow);
        }
        let mut edges = vec![Vec::new(); k];
        let mut next = 0u32;
        for level in 1..=k {
            for s in (0..k).combinations(level) {
                for _ in 0..self.b[level - 1] {
                    for &i in &s {
                        edges[i].push(next);
                    }
                    next += 1;
                }
            }
        }
        Ok(edges.into_iter().map(Edge::from_sorted_unchecked).collect())
    }

    pub fn add(&self, other: &BVector) -> Result<BVector> {
        if self.k() != other.k() {
            return Err(Error::ArityMismatch { expected: self.k(), got: other.k() });
        }
        let b = self
            .b
            .iter()
            .zip(&other.b)
            .map(|(x, y)| x.checked_add(*y).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(BVector { b })
    }
}

impl std::fmt::Display for BVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.b.iter().join(","))
    }
}

/// Common-intersection sizes `a_i = |A_1 ∩ … ∩ A_i|`, non-increasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AVector {
    a: Vec<u64>,
}

impl AVector {
    pub fn new(a: Vec<u64>) -> Result<Self> {
        if a.is_empty() || a.len() > MAX_ARITY {
            return Err(Error::UnsupportedArity { arity: a.len(), min: 1, max: MAX_ARITY });
        }
        if a.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotMonotone(a));
        }
        Ok(AVector { a })
    }

    pub fn k(&self) -> usize {
        self.a.len()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.a
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EipViolation {
    pub level: usize,
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub first_size: u64,
    pub second_size: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EipOutcome {
    Eip(BVector),
    Violation(EipViolation),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvennessVerdict {
    Even,
    /// `∩_{i∈first}` and `∩_{j∈second}` differ in emptiness.
    Uneven { level: usize, first: Vec<usize>, second: Vec<usize> },
}

fn check_arity(k: usize) -> Result<()> {
    if k == 0 || k > MAX_ARITY {
        return Err(Error::UnsupportedArity { arity: k, min: 1, max: MAX_ARITY });
    }
    Ok(())
}

fn mask_of(indices: &[usize]) -> usize {
    indices.iter().fold(0, |m, i| m | 1 << i)
}

/// Cells by k-way merge over the sorted member lists; no validation.
pub(crate) fn venn_cells<E: Borrow<Edge>>(edges: &[E]) -> Vec<u64> {
    let k = edges.len();
    let mut cells = vec![0u64; 1 << k];
    let mut pos = [0usize; MAX_ARITY];
    loop {
        let mut min: Option<u32> = None;
        for (i, e) in edges.iter().enumerate() {
            if let Some(&v) = e.borrow().members().get(pos[i]) {
                min = Some(min.map_or(v, |m| m.min(v)));
            }
        }
        let Some(min) = min else { break };
        let mut mask = 0;
        for (i, e) in edges.iter().enumerate() {
            if e.borrow().members().get(pos[i]) == Some(&min) {
                mask |= 1 << i;
                pos[i] += 1;
            }
        }
        cells[mask] += 1;
    }
    cells
}

pub fn venn_profile<E: Borrow<Edge>>(edges: &[E]) -> Result<VennProfile> {
    check_arity(edges.len())?;
    ensure_distinct(edges)?;
    Ok(VennProfile { k: edges.len(), cells: venn_cells(edges) })
}

/// Returns `b` when all ℓ-wise intersections agree in size at every level,
/// otherwise the lexicographically first disagreeing pair of index sets.
pub fn eip_extract<E: Borrow<Edge>>(edges: &[E]) -> Result<EipOutcome> {
    let profile = venn_profile(edges)?;
    let k = profile.k;
    let inter = profile.intersections();
    for level in 1..=k {
        let mut subsets = (0..k).combinations(level);
        let first = subsets.next().expect("level <= k");
        let size = inter[mask_of(&first)];
        if let Some(second) = subsets.find(|s| inter[mask_of(s)] != size) {
            let second_size = inter[mask_of(&second)];
            return Ok(EipOutcome::Violation(EipViolation {
                level,
                first,
                second,
                first_size: size,
                second_size,
            }));
        }
    }
    let b = (1..=k).map(|level| profile.cells[(1 << level) - 1]).collect();
    Ok(EipOutcome::Eip(BVector { b }))
}

/// `a_i = |A_1 ∩ … ∩ A_i|` over the given edge order.
pub fn measured_a(profile: &VennProfile) -> AVector {
    let inter = profile.intersections();
    AVector { a: (1..=profile.k).map(|i| inter[(1 << i) - 1]).collect() }
}

/// Inclusion–exclusion: `b_i = Σ_{j≥i} (−1)^{j−i} C(k−i, j−i) a_j`.
pub fn b_from_a(a: &AVector) -> Result<BVector> {
    let k = a.k();
    let mut b = Vec::with_capacity(k);
    for i in 1..=k {
        let mut acc: i128 = 0;
        for j in i..=k {
            let c = binom_u128((k - i) as u64, (j - i) as u64).ok_or(Error::Overflow)?;
            let term = i128::try_from(c)
                .ok()
                .and_then(|c| c.checked_mul(a.a[j - 1] as i128))
                .ok_or(Error::Overflow)?;
            acc = if (j - i) % 2 == 0 { acc.checked_add(term) } else { acc.checked_sub(term) }
                .ok_or(Error::Overflow)?;
        }
        if acc < 0 {
            return Err(Error::NegativeCell { level: i, value: acc });
        }
        b.push(u64::try_from(acc).map_err(|_| Error::Overflow)?);
    }
    Ok(BVector { b })
}

/// `a_i = Σ_{j≥i} C(k−i, j−i) b_j`.
pub fn a_from_b(b: &BVector) -> Result<AVector> {
    let k = b.k();
    let mut a = Vec::with_capacity(k);
    for i in 1..=k {
        let mut acc: u128 = 0;
        for j in i..=k {
            let c = binom_u128((k - i) as u64, (j - i) as u64).ok_or(Error::Overflow)?;
            acc = c
                .checked_mul(b.b[j - 1] as u128)
                .and_then(|t| acc.checked_add(t))
                .ok_or(Error::Overflow)?;
        }
        a.push(u64::try_from(acc).map_err(|_| Error::Overflow)?);
    }
    Ok(AVector { a })
}

pub fn evenness_classify<E: Borrow<Edge>>(edges: &[E]) -> Result<EvennessVerdict> {
    let profile = venn_profile(edges)?;
    let k = profile.k;
    let inter = profile.intersections();
    for level in 1..=k {
        let mut subsets = (0..k).combinations(level);
        let first = subsets.next().expect("level <= k");
        let empty = inter[mask_of(&first)] == 0;
        if let Some(second) = subsets.find(|s| (inter[mask_of(s)] == 0) != empty) {
            return Ok(EvennessVerdict::Uneven { level, first, second });
        }
    }
    Ok(EvennessVerdict::Even)
}

/// True iff the edges form a copy of `H(b)`: every level-ℓ cell has size `b_ℓ`.
pub fn is_pattern_copy<E: Borrow<Edge>>(edges: &[E], b: &BVector) -> Result<bool> {
    if edges.len() != b.k() {
        return Err(Error::ArityMismatch { expected: b.k(), got: edges.len() });
    }
    let profile = venn_profile(edges)?;
    Ok(matches_b(&profile.cells, b))
}

pub(crate) fn matches_b(cells: &[u64], b: &BVector) -> bool {
    cells
        .iter()
        .enumerate()
        .skip(1)
        .all(|(mask, &c)| c == b.b[mask.count_ones() as usize - 1])
}
