//! Forbidden patterns over `k` edges.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::family::{Edge, Family};
use crate::profile::{self, BVector};

/// Largest explicit pattern whose edge permutations are enumerated.
pub const MAX_PATTERN_EDGES: usize = 8;

type Predicate = Arc<dyn Fn(&[&Edge]) -> bool + Send + Sync>;

/// A property of `k`-edge subfamilies whose copies are forbidden.
#[derive(Clone)]
pub enum Pattern {
    /// A copy of `H(b)`.
    Eip(BVector),
    /// `q` equal-size edges whose pairwise intersections all equal the
    /// common intersection.
    Sunflower { q: usize },
    /// A copy of an explicit hypergraph: some ordering of the chosen edges
    /// has the same Venn cells as the pattern.
    Hypergraph { edges: Family, cells: Arc<HashSet<Vec<u64>>> },
    /// An arbitrary predicate on `arity` edges, given in canonical order.
    Custom { arity: usize, name: String, pred: Predicate },
}

impl Pattern {
    pub fn hypergraph(edges: Family) -> Result<Self> {
        let k = edges.len();
        if k == 0 || k > MAX_PATTERN_EDGES {
            return Err(Error::UnsupportedArity { arity: k, min: 1, max: MAX_PATTERN_EDGES });
        }
        let base = profile::venn_profile(edges.edges())?;
        let cells = (0..k).permutations(k).map(|p| base.permuted(&p).cells().to_vec()).collect();
        Ok(Pattern::Hypergraph { edges, cells: Arc::new(cells) })
    }

    pub fn custom<F>(arity: usize, name: impl Into<String>, pred: F) -> Self
    where
        F: Fn(&[&Edge]) -> bool + Send + Sync + 'static,
    {
        Pattern::Custom { arity, name: name.into(), pred: Arc::new(pred) }
    }

    pub fn arity(&self) -> usize {
        match self {
            Pattern::Eip(b) => b.k(),
            Pattern::Sunflower { q } => *q,
            Pattern::Hypergraph { edges, .. } => edges.len(),
            Pattern::Custom { arity, .. } => *arity,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Pattern::Eip(b) => format!("H{b}"),
            Pattern::Sunflower { q } => format!("{q}-sunflower"),
            Pattern::Hypergraph { edges, .. } => format!("hypergraph {:?}", edges),
            Pattern::Custom { name, .. } => name.clone(),
        }
    }

    /// Whether `edges` (exactly `arity` of them) form a copy.
    pub fn matches(&self, edges: &[&Edge]) -> bool {
        if edges.len() != self.arity() {
            return false;
        }
        match self {
            Pattern::Eip(b) => profile::matches_b(&profile::venn_cells(edges), b),
            Pattern::Sunflower { .. } => is_sunflower(edges),
            Pattern::Hypergraph { cells, .. } => cells.contains(&profile::venn_cells(edges)),
            Pattern::Custom { pred, .. } => pred(edges),
        }
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Equal sizes and every pairwise intersection equal to the common one.
pub fn is_sunflower(edges: &[&Edge]) -> bool {
    let Some(first) = edges.first() else { return true };
    if edges.iter().any(|e| e.len() != first.len()) {
        return false;
    }
    let core = edges.iter().skip(1).fold((*first).clone(), |acc, e| acc.intersection(e));
    edges.iter().tuple_combinations().all(|(a, b)| a.intersection_len(b) == core.len())
}
