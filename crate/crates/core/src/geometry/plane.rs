//! The Miquelian inversive plane `M(q)` and its dual family.

use std::collections::BTreeSet;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::field::{PrimeField, QuadExtField};
use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::family::{Edge, Family};

/// Largest order `build_plane` accepts.
pub const MAX_PLANE_ORDER: u32 = 13;

/// A normalized homogeneous pair `(x : y)` over `F_{q²}`: either `y = 1`
/// or the point at infinity `(1 : 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ProjPoint {
    pub x: u32,
    pub y: u32,
}

impl ProjPoint {
    pub const INFINITY: ProjPoint = ProjPoint { x: 1, y: 0 };

    pub fn finite(x: u32) -> Self {
        ProjPoint { x, y: 1 }
    }

    pub fn is_infinite(&self) -> bool {
        self.y == 0
    }
}

/// Points `0..q²` are the finite field elements by index; point `q²` is ∞.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InversivePlane {
    q: u32,
    circles: Vec<Vec<u32>>,
}

impl InversivePlane {
    /// Wraps an explicit circle list; circles are sorted and deduplicated
    /// so the stored order is canonical.
    pub fn from_circles(q: u32, circles: Vec<Vec<u32>>) -> Result<Self> {
        let n = q * q + 1;
        let mut set = BTreeSet::new();
        for mut c in circles {
            c.sort_unstable();
            if let Some(w) = c.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicatePoint(w[0]));
            }
            if let Some(&p) = c.iter().find(|&&p| p >= n) {
                return Err(Error::UnknownPoint(p));
            }
            set.insert(c);
        }
        Ok(InversivePlane { q, circles: set.into_iter().collect() })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn point_count(&self) -> u32 {
        self.q * self.q + 1
    }

    pub fn infinity(&self) -> u32 {
        self.q * self.q
    }

    pub fn circles(&self) -> &[Vec<u32>] {
        &self.circles
    }

    /// The same plane with circle `index` removed.
    pub fn without_circle(&self, index: usize) -> Result<Self> {
        if index >= self.circles.len() {
            return Err(Error::InvalidParameter(format!("no circle {index}")));
        }
        let mut circles = self.circles.clone();
        circles.remove(index);
        Ok(InversivePlane { q: self.q, circles })
    }

    pub fn points(&self) -> Vec<ProjPoint> {
        (0..self.q * self.q).map(ProjPoint::finite).chain([ProjPoint::INFINITY]).collect()
    }
}

/// `(x : y) ↦ (a·x + c·y : b·x + d·y)`, returned as a point index.
fn apply(k: &QuadExtField, [a, b, c, d]: [u32; 4], point: u32) -> u32 {
    let inf = k.size();
    let (x, y) = if point == inf { (1, 0) } else { (point, 1) };
    let num = k.add(k.mul(a, x), k.mul(c, y));
    let den = k.add(k.mul(b, x), k.mul(d, y));
    match k.inv(den) {
        None => inf,
        Some(inv) => k.mul(num, inv),
    }
}

/// One representative per element of `PGL(2, q²)`: either `d = 1` with
/// `a − b·c ≠ 0`, or `d = 0`, `b = 1`, `c ≠ 0`.
fn mobius_maps_with_a(k: &QuadExtField, a: u32) -> impl Iterator<Item = [u32; 4]> + '_ {
    let n = k.size();
    let normal = (0..n)
        .cartesian_product(0..n)
        .filter(move |&(b, c)| k.sub(a, k.mul(b, c)) != 0)
        .map(move |(b, c)| [a, b, c, 1]);
    let at_zero = (1..n).map(move |c| [a, 1, c, 0]);
    normal.chain(at_zero)
}

/// Circles of `M(q)`: the distinct images of `F_q ∪ {∞}` under all Möbius
/// maps over `F_{q²}`.
pub fn build_plane(q: u32) -> Result<InversivePlane> {
    if q > MAX_PLANE_ORDER {
        return Err(Error::InvalidOrder(q));
    }
    let k = QuadExtField::new(PrimeField::new(q)?);
    let base: Vec<u32> = (0..q).map(|a| k.embed(a)).chain([k.size()]).collect();
    let circles = (0..k.size())
        .into_par_iter()
        .fold(BTreeSet::new, |mut acc, a| {
            for m in mobius_maps_with_a(&k, a) {
                let mut img: Vec<u32> = base.iter().map(|&p| apply(&k, m, p)).collect();
                img.sort_unstable();
                acc.insert(img);
            }
            acc
        })
        .reduce(BTreeSet::new, |mut x, mut y| {
            x.append(&mut y);
            x
        });
    let plane = InversivePlane { q, circles: circles.into_iter().collect() };
    let want = (q * (q * q + 1)) as usize;
    if plane.circles.len() != want || plane.circles.iter().any(|c| c.len() != q as usize + 1) {
        return Err(Error::Invariant(format!(
            "plane of order {q} has {} circles, expected {want}",
            plane.circles.len()
        )));
    }
    Ok(plane)
}

#[derive(Debug, Serialize)]
struct TripleWitness {
    triple: [u32; 3],
    count: u32,
}

/// Checks that every 3 points lie on exactly one circle. A failure
/// carries the lexicographically first bad triple and its circle count.
pub fn verify_3design(p: &InversivePlane) -> Certificate {
    let n = p.point_count() as usize;
    let idx = |i: u32, j: u32, l: u32| (i as usize * n + j as usize) * n + l as usize;
    let mut counts = vec![0u32; n * n * n];
    for c in &p.circles {
        for t in c.iter().combinations(3) {
            counts[idx(*t[0], *t[1], *t[2])] += 1;
        }
    }
    let bad = (0..n as u32)
        .tuple_combinations()
        .map(|(i, j, l)| TripleWitness { triple: [i, j, l], count: counts[idx(i, j, l)] })
        .find(|w| w.count != 1);
    let cert = Certificate::new("inversive_3design")
        .param("q", p.q)
        .param("points", p.point_count())
        .param("circles", p.circles.len());
    match bad {
        None => cert.passed(),
        Some(w) => cert.failed(w),
    }
}

/// Number of circles through all of `pts` (one to three distinct points).
pub fn incidence_counts(p: &InversivePlane, pts: &[u32]) -> Result<usize> {
    if pts.is_empty() || pts.len() > 3 {
        return Err(Error::InvalidParameter(format!("expected 1 to 3 points, got {}", pts.len())));
    }
    if let Some(&x) = pts.iter().find(|&&x| x >= p.point_count()) {
        return Err(Error::UnknownPoint(x));
    }
    for (i, x) in pts.iter().enumerate() {
        if pts[..i].contains(x) {
            return Err(Error::DuplicatePoint(*x));
        }
    }
    Ok(p.circles.iter().filter(|c| pts.iter().all(|x| c.binary_search(x).is_ok())).count())
}

/// One edge per point: the indices of the circles through it.
pub fn dual_family(p: &InversivePlane) -> Result<Family> {
    let mut edges = vec![Vec::new(); p.point_count() as usize];
    for (ci, c) in p.circles.iter().enumerate() {
        for &x in c {
            edges[x as usize].push(ci as u32);
        }
    }
    Family::new(edges.into_iter().map(Edge::from_sorted_unchecked).collect())
}
