//! Finite hypergraphs ("families") with a canonical edge order.

use std::borrow::Borrow;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = u32;

/// A finite set of vertices, stored sorted ascending without repeats.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<VertexId>", into = "Vec<VertexId>")]
pub struct Edge(Vec<VertexId>);

impl Edge {
    /// Sorts `members`; a repeated vertex is an error.
    pub fn new(mut members: Vec<VertexId>) -> Result<Self> {
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex { vertex: w[0] });
        }
        Ok(Edge(members))
    }

    pub(crate) fn from_sorted_unchecked(members: Vec<VertexId>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Edge(members)
    }

    pub fn members(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn intersection_len(&self, other: &Edge) -> usize {
        let (mut i, mut j, mut n) = (0, 0, 0);
        let (a, b) = (&self.0, &other.0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }

    pub fn intersection(&self, other: &Edge) -> Edge {
        Edge(self.0.iter().copied().filter(|v| other.contains(*v)).collect())
    }

    pub fn union(&self, other: &Edge) -> Edge {
        let mut v: Vec<_> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        Edge(v)
    }

    pub fn is_subset(&self, other: &Edge) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    pub fn into_inner(self) -> Vec<VertexId> {
        self.0
    }
}

impl TryFrom<Vec<VertexId>> for Edge {
    type Error = Error;
    fn try_from(v: Vec<VertexId>) -> Result<Self> {
        Edge::new(v)
    }
}

impl From<Edge> for Vec<VertexId> {
    fn from(e: Edge) -> Self {
        e.0
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// A finite set of distinct edges, kept in lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Family {
    edges: Vec<Edge>,
}

impl Family {
    /// Sorts the edges lexicographically and rejects repeats.
    pub fn new(mut edges: Vec<Edge>) -> Result<Self> {
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0.clone()));
        }
        Ok(Family { edges })
    }

    pub fn from_raw<I, E>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<Vec<VertexId>>,
    {
        let edges = edges
            .into_iter()
            .map(|e| Edge::new(e.into()))
            .collect::<Result<Vec<_>>>()?;
        Family::new(edges)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &Edge {
        &self.edges[i]
    }

    /// Number of edges, `m`.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// One past the largest vertex label in use (0 for an edgeless family).
    pub fn vertex_bound(&self) -> VertexId {
        self.edges
            .iter()
            .filter_map(|e| e.members().last())
            .max()
            .map_or(0, |v| v + 1)
    }

    /// Distinct vertices that occur in some edge.
    pub fn vertex_count(&self) -> usize {
        let mut all: Vec<VertexId> = self.edges.iter().flat_map(|e| e.0.iter().copied()).collect();
        all.sort_unstable();
        all.dedup();
        all.len()
    }

    /// The common edge size, if every edge has the same size.
    pub fn uniformity(&self) -> Option<usize> {
        let first = self.edges.first()?.len();
        self.edges.iter().all(|e| e.len() == first).then_some(first)
    }

    pub fn subfamily(&self, indices: &[usize]) -> Family {
        let mut edges: Vec<Edge> = indices.iter().map(|&i| self.edges[i].clone()).collect();
        edges.sort_unstable();
        Family { edges }
    }

    pub fn into_edges(self) -> Vec<Edge> {
        self.edges
    }

    /// Relabels vertices to `0..n` in order of first appearance and re-sorts,
    /// repeating until the labeling is stable.
    pub fn canonicalize(&self) -> Family {
        let mut cur = self.clone();
        // A relabel/sort pass usually reaches a fixpoint within two rounds.
        for _ in 0..64 {
            let next = cur.relabel_first_appearance();
            if next == cur {
                return next;
            }
            cur = next;
        }
        cur
    }

    pub fn relabel_first_appearance(&self) -> Family {
        relabel_first_appearance(self.edges.iter().map(|e| e.members()))
    }
}

/// Relabels a list of vertex lists by first appearance, sorting members and
/// edges afterwards. Used by the loader before duplicate checks.
pub(crate) fn relabel_first_appearance<'a, I>(edges: I) -> Family
where
    I: IntoIterator<Item = &'a [VertexId]>,
{
    let mut map: HashMap<VertexId, VertexId> = HashMap::new();
    let mut out = Vec::new();
    for e in edges {
        let mut members: Vec<VertexId> = e
            .iter()
            .map(|v| {
                let next = map.len() as VertexId;
                *map.entry(*v).or_insert(next)
            })
            .collect();
        members.sort_unstable();
        out.push(Edge(members));
    }
    out.sort_unstable();
    Family { edges: out }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.edges.iter()).finish()
    }
}

/// Checks that no two of the given edges coincide.
pub(crate) fn ensure_distinct<E: Borrow<Edge>>(edges: &[E]) -> Result<()> {
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if edges[i].borrow() == edges[j].borrow() {
                return Err(Error::DuplicateEdge(edges[i].borrow().0.clone()));
            }
        }
    }
    Ok(())
}
