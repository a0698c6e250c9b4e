//! Constructive extraction of large structured or pattern-free subfamilies.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::Serialize;

use super::pattern::{is_sunflower, Pattern};
use super::search::find_copy;
use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::family::{Edge, Family, VertexId};

fn greedy_disjoint(edges: &[Edge]) -> Vec<usize> {
    let mut used: Vec<VertexId> = Vec::new();
    let mut out = Vec::new();
    for (i, e) in edges.iter().enumerate() {
        if e.members().iter().all(|v| used.binary_search(v).is_err()) {
            for &v in e.members() {
                let at = used.binary_search(&v).unwrap_err();
                used.insert(at, v);
            }
            out.push(i);
        }
    }
    out
}

/// Indices into `edges` of a sunflower: either a maximal greedy disjoint
/// subfamily, or the best sunflower in the link of the most frequent vertex
/// of that subfamily's union, whichever is larger.
fn sunflower_indices(edges: &[Edge]) -> Vec<usize> {
    let disjoint = greedy_disjoint(edges);
    if edges.len() <= 1 || edges[0].is_empty() {
        return disjoint;
    }
    let mut degree: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &i in &disjoint {
        for &v in edges[i].members() {
            degree.insert(v, 0);
        }
    }
    for e in edges {
        for v in e.members() {
            if let Some(d) = degree.get_mut(v) {
                *d += 1;
            }
        }
    }
    // Highest degree, ties to the smallest label.
    let pivot = degree.iter().max_by_key(|&(v, d)| (*d, std::cmp::Reverse(*v))).map(|(v, _)| *v);
    let Some(pivot) = pivot else { return disjoint };
    let holders: Vec<usize> = (0..edges.len()).filter(|&i| edges[i].contains(pivot)).collect();
    if holders.len() <= disjoint.len() {
        return disjoint;
    }
    let link: Vec<Edge> = holders
        .iter()
        .map(|&i| Edge::from_sorted_unchecked(edges[i].members().iter().copied().filter(|&v| v != pivot).collect()))
        .collect();
    let inner: Vec<usize> = sunflower_indices(&link).into_iter().map(|j| holders[j]).collect();
    if inner.len() > disjoint.len() {
        inner
    } else {
        disjoint
    }
}

/// A sunflower inside an `r`-uniform family, as a subfamily.
pub fn sunflower_extract(f: &Family, r: usize) -> Result<Family> {
    if f.edges().iter().any(|e| e.len() != r) {
        return Err(Error::NotUniform);
    }
    let mut idx = sunflower_indices(f.edges());
    idx.sort_unstable();
    let out = f.subfamily(&idx);
    let refs: Vec<&Edge> = out.edges().iter().collect();
    if !is_sunflower(&refs) {
        return Err(Error::Invariant("extracted subfamily is not a sunflower".into()));
    }
    Ok(out)
}

/// One reduction step of the pattern-free extraction.
#[derive(Clone, Debug, Serialize)]
pub struct ExtractStep {
    pub pattern: usize,
    pub action: String,
    pub before: usize,
    pub after: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct HfreeResult {
    pub indices: Vec<usize>,
    pub family: Family,
    pub steps: Vec<ExtractStep>,
    pub certificate: Certificate,
}

fn uniformity_of(p: &Family) -> Option<usize> {
    p.uniformity()
}

/// A subfamily free of every listed pattern. Non-uniform patterns are handled
/// first by discarding one of two edge sizes they need; each uniform pattern
/// of uniformity `r` then keeps either the edges of size other than `r` or a
/// sunflower among the `r`-edges, whichever is larger.
pub fn hfree_extract(f: &Family, patterns: &[Family]) -> Result<HfreeResult> {
    for (i, p) in patterns.iter().enumerate() {
        if p.is_empty() {
            return Err(Error::InvalidParameter(format!("pattern {i} has no edges")));
        }
        if uniformity_of(p).is_some() {
            let refs: Vec<&Edge> = p.edges().iter().collect();
            if is_sunflower(&refs) {
                return Err(Error::SunflowerPattern(i));
            }
        }
    }
    let m = f.len();
    let mut current: Vec<usize> = (0..m).collect();
    let mut steps = Vec::new();
    let size = |i: &usize| f.edge(*i).len();

    let (uniform, mixed): (Vec<usize>, Vec<usize>) =
        (0..patterns.len()).partition(|&i| uniformity_of(&patterns[i]).is_some());
    for &pi in &mixed {
        let sizes: Vec<usize> = patterns[pi].edges().iter().map(|e| e.len()).sorted().dedup().collect();
        let (a, b) = (sizes[0], sizes[1]);
        let not_a: Vec<usize> = current.iter().copied().filter(|i| size(i) != a).collect();
        let not_b: Vec<usize> = current.iter().copied().filter(|i| size(i) != b).collect();
        let before = current.len();
        let (kept, action) =
            if not_a.len() >= not_b.len() { (not_a, format!("drop size {a}")) } else { (not_b, format!("drop size {b}")) };
        current = kept;
        steps.push(ExtractStep { pattern: pi, action, before, after: current.len() });
    }
    let mut exponent = 1u64;
    for &pi in &uniform {
        let r = uniformity_of(&patterns[pi]).unwrap_or(0);
        exponent = exponent.saturating_mul(r.max(1) as u64);
        let (same, other): (Vec<usize>, Vec<usize>) = current.iter().partition(|i| size(i) == r);
        let before = current.len();
        if other.len() >= same.len() {
            current = other;
            steps.push(ExtractStep { pattern: pi, action: format!("drop size {r}"), before, after: current.len() });
        } else {
            let sub = f.subfamily(&same);
            let flower = sunflower_extract(&sub, r)?;
            let mut picked: Vec<usize> = same
                .iter()
                .copied()
                .filter(|&i| flower.edges().binary_search(f.edge(i)).is_ok())
                .collect();
            picked.sort_unstable();
            current = picked;
            steps.push(ExtractStep {
                pattern: pi,
                action: format!("sunflower among {} edges of size {r}", same.len()),
                before,
                after: current.len(),
            });
        }
    }
    current.sort_unstable();
    let family = f.subfamily(&current);
    let mut copy = None;
    for (pi, p) in patterns.iter().enumerate() {
        if let Some(c) = find_copy(&family, &Pattern::hypergraph(p.clone())?)? {
            copy = Some((pi, c));
            break;
        }
    }
    let achieved = if m == 0 { 0.0 } else { current.len() as f64 / (m as f64).powf(1.0 / exponent as f64) };
    let cert = Certificate::new("hfree_extract")
        .param("m", m)
        .param("patterns", patterns.len())
        .param("uniformity_product", exponent)
        .param("size", current.len())
        .param("achieved_constant", achieved);
    let certificate = match copy {
        None => cert.passed(),
        Some((pattern, subset)) => cert.failed(serde_json::json!({ "pattern": pattern, "subset": subset })),
    };
    Ok(HfreeResult { indices: current, family, steps, certificate })
}

/// A subfamily on which `pred` is constant over all `ℓ`-subsets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomogeneousResult {
    pub indices: Vec<usize>,
    pub color: bool,
}

/// Pivot sequence where each pivot's color toward every later pivot is
/// fixed; `color(p, x)` colors the pair of positions.
fn pivot_chain(items: &[usize], color: impl Fn(usize, usize) -> bool) -> Vec<(usize, bool)> {
    let mut rest: Vec<usize> = items.to_vec();
    let mut chain = Vec::new();
    while !rest.is_empty() {
        let pivot = rest.remove(0);
        let (yes, no): (Vec<usize>, Vec<usize>) = rest.iter().partition(|&&x| color(pivot, x));
        let side = yes.len() >= no.len();
        rest = if side { yes } else { no };
        chain.push((pivot, side));
    }
    chain
}

/// Majority color class of a pivot chain; the last pivot joins it freely.
fn majority(chain: &[(usize, bool)]) -> (Vec<usize>, bool) {
    let Some((&(last, _), body)) = chain.split_last() else { return (Vec::new(), true) };
    let trues = body.iter().filter(|c| c.1).count();
    let color = trues * 2 >= body.len();
    let mut out: Vec<usize> = body.iter().filter(|c| c.1 == color).map(|c| c.0).collect();
    out.push(last);
    (out, color)
}

pub fn homogeneous_extract<F>(f: &Family, arity: usize, pred: F) -> Result<HomogeneousResult>
where
    F: Fn(&[&Edge]) -> bool,
{
    let edges = f.edges();
    let all: Vec<usize> = (0..f.len()).collect();
    let (mut indices, color) = match arity {
        2 => {
            let chain = pivot_chain(&all, |p, x| pred(&[&edges[p], &edges[x]]));
            majority(&chain)
        }
        3 => {
            // Fix the color of every triple by its first two members.
            let mut rest = all;
            let mut pivots: Vec<usize> = Vec::new();
            let mut pair_color: BTreeMap<(usize, usize), bool> = BTreeMap::new();
            while !rest.is_empty() {
                let v = rest.remove(0);
                for &u in &pivots {
                    let (yes, no): (Vec<usize>, Vec<usize>) =
                        rest.iter().partition(|&&w| pred(&[&edges[u], &edges[v], &edges[w]]));
                    let side = yes.len() >= no.len();
                    pair_color.insert((u, v), side);
                    rest = if side { yes } else { no };
                }
                pivots.push(v);
            }
            match pivots.split_last() {
                None => (Vec::new(), true),
                Some((&last, body)) => {
                    let chain = pivot_chain(body, |p, x| pair_color.get(&(p, x)).copied().unwrap_or(true));
                    let (mut set, color) = majority(&chain);
                    set.push(last);
                    (set, color)
                }
            }
        }
        _ => return Err(Error::UnsupportedArity { arity, min: 2, max: 3 }),
    };
    indices.sort_unstable();
    indices.dedup();
    let color = match indices.len() >= arity {
        true => {
            let first: Vec<&Edge> = indices[..arity].iter().map(|&i| &edges[i]).collect();
            pred(&first)
        }
        false => color,
    };
    Ok(HomogeneousResult { indices, color })
}
