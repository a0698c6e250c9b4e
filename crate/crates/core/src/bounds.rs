//! Closed-form bounds on `f(m, H(b))` and a finite-`m` region classifier for
//! `b = (b₁, b₂, 1)`.

use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::comb::{binom_ext, d_from_b};
use crate::error::{Error, Result};
use crate::profile::BVector;

/// Absolute tolerance for comparisons involving real roots.
pub const TOLERANCE: f64 = 1e-9;
/// Largest number of cells `region_grid` evaluates.
pub const GRID_BUDGET: u128 = 100_000;

fn rat(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `min_{i ≤ k−2} b_i / (m·b_{i+1})`, exactly.
pub fn alpha_of(b: &BVector, m: usize) -> Result<BigRational> {
    let k = b.k();
    if k < 3 {
        return Err(Error::UnsupportedArity { arity: k, min: 3, max: crate::profile::MAX_ARITY });
    }
    if m == 0 {
        return Err(Error::InvalidParameter("m must be positive".into()));
    }
    let bs = b.as_slice();
    let mut best: Option<BigRational> = None;
    for i in 0..k - 2 {
        if bs[i + 1] == 0 {
            return Err(Error::UndefinedAlpha { index: i + 2 });
        }
        let r = BigRational::new(BigInt::from(bs[i]), BigInt::from(m as u64) * BigInt::from(bs[i + 1]));
        best = Some(match best {
            Some(cur) if cur <= r => cur,
            _ => r,
        });
    }
    best.ok_or(Error::UndefinedAlpha { index: 2 })
}

/// Every applicable bound at one `(b, m)`; absent values mean the formula's
/// hypotheses fail.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub k: usize,
    pub m: usize,
    pub b: BVector,
    pub alpha: Option<String>,
    pub alpha_value: Option<f64>,
    pub upper_thm24: Option<String>,
    pub upper_thm24_value: Option<f64>,
    pub lower_thm24: Option<f64>,
    pub lower_thm25: Option<f64>,
    pub lower_cor51: Option<f64>,
    pub lower_prop53: Option<f64>,
    pub thm72_necessary: Option<bool>,
}

impl BoundsReport {
    /// All applicable lower bounds.
    pub fn lower_bounds(&self) -> Vec<(&'static str, f64)> {
        [
            ("lower_thm24", self.lower_thm24),
            ("lower_thm25", self.lower_thm25),
            ("lower_cor51", self.lower_cor51),
            ("lower_prop53", self.lower_prop53),
        ]
        .into_iter()
        .filter_map(|(n, v)| v.map(|v| (n, v)))
        .collect()
    }

    /// The largest applicable lower bound, if any.
    pub fn best_lower(&self) -> Option<f64> {
        self.lower_bounds().into_iter().map(|(_, v)| v).reduce(f64::max)
    }
}

/// Lower bound driven by `α` and the top two cells, with the matching
/// upper bound `k(k−1)/α + k − 1`. Needs `b₁..b_{k−2} > 0`, a defined `α`
/// and `m ≥ 6`.
fn alpha_bounds(b: &BVector, m: usize) -> Option<(BigRational, BigRational, f64)> {
    let k = b.k();
    let bs = b.as_slice();
    if k < 3 || m < 6 || bs[..k - 2].contains(&0) {
        return None;
    }
    let alpha = alpha_of(b, m).ok()?;
    let kk = rat(k as u64);
    let upper = &kk * (&kk - rat(1)) / &alpha + &kk - rat(1);
    let choose = binom_ext((bs[k - 2] + bs[k - 1]) as i64, bs[k - 1] as i64);
    let denom = rat(2) * (&alpha + BigRational::new(1.into(), BigInt::from(m as u64))) * BigRational::from_integer(choose);
    let lower = to_f64(&(BigRational::from_integer(1.into()) / denom)).powf(1.0 / k as f64);
    Some((alpha, upper, lower))
}

/// Lower bound growing as a root of `m`, for fixed `b_k`.
fn growth_lower(b: &BVector, m: usize) -> Option<f64> {
    let k = b.k();
    let bs = b.as_slice();
    if k < 3 || m < 6 || bs[k - 3] + 2 * bs[k - 2] == 0 {
        return None;
    }
    let ratio = to_f64(&BigRational::new(
        BigInt::from(bs[k - 2]),
        BigInt::from(4u64) * BigInt::from(bs[k - 3] + 2 * bs[k - 2]),
    ));
    let top = bs[k - 1] as f64;
    let m = m as f64;
    Some(if k == 3 {
        m.powf(1.0 / (top + 2.0)) * ratio.powf((top + 1.0) / (top + 2.0))
    } else {
        m.powf(1.0 / (k as f64 * (top + 1.0))) * ratio.powf(1.0 / k as f64)
    })
}

/// For `b_k = 0`: `max_i (m·b_{i+1} / (2(b_i + b_{i+1})))^{1/k}`.
fn top_zero_lower(b: &BVector, m: usize) -> Option<f64> {
    let k = b.k();
    let bs = b.as_slice();
    if k < 3 || m < 6 || bs[k - 1] != 0 {
        return None;
    }
    (0..k - 2)
        .filter(|&i| bs[i] + bs[i + 1] > 0)
        .map(|i| {
            let r = BigRational::new(
                BigInt::from(m as u64) * BigInt::from(bs[i + 1]),
                BigInt::from(2u64) * BigInt::from(bs[i] + bs[i + 1]),
            );
            to_f64(&r).powf(1.0 / k as f64)
        })
        .reduce(f64::max)
}

/// For `k = 3`, `b₃ = 0`, `m ≥ 4`: `sqrt(m·b₂ / (2(b₁ + 2b₂)))`.
fn triple_top_zero_lower(b: &BVector, m: usize) -> Option<f64> {
    let bs = b.as_slice();
    if b.k() != 3 || bs[2] != 0 || m < 4 || bs[0] + 2 * bs[1] == 0 {
        return None;
    }
    let r = BigRational::new(BigInt::from(m as u64) * BigInt::from(bs[1]), BigInt::from(2 * (bs[0] + 2 * bs[1])));
    Some(to_f64(&r).sqrt())
}

pub fn bounds_eval(b: &BVector, m: usize) -> BoundsReport {
    let k = b.k();
    let (alpha, upper, lower24) = match alpha_bounds(b, m) {
        Some((a, u, l)) => (Some(a), Some(u), Some(l)),
        None => (alpha_of(b, m).ok(), None, None),
    };
    BoundsReport {
        k,
        m,
        b: b.clone(),
        alpha_value: alpha.as_ref().map(to_f64),
        alpha: alpha.map(|a| a.to_string()),
        upper_thm24_value: upper.as_ref().map(to_f64),
        upper_thm24: upper.map(|u| u.to_string()),
        lower_thm24: lower24,
        lower_thm25: growth_lower(b, m),
        lower_cor51: top_zero_lower(b, m),
        lower_prop53: triple_top_zero_lower(b, m),
        thm72_necessary: necessary_f2_check(b, m).ok(),
    }
}

/// Whether `b₁b₃ + b₁b₂/m + b₂b₃/m ≥ b₂²`, compared exactly. Advisory: the
/// inequality is only claimed for large `m`.
pub fn necessary_f2_check(b: &BVector, m: usize) -> Result<bool> {
    if b.k() != 3 {
        return Err(Error::ArityMismatch { expected: 3, got: b.k() });
    }
    if m == 0 {
        return Err(Error::InvalidParameter("m must be positive".into()));
    }
    let [b1, b2, b3] = [0, 1, 2].map(|i| BigInt::from(b.as_slice()[i]));
    let m = BigInt::from(m as u64);
    Ok(&b1 * &b3 * &m + &b1 * &b2 + &b2 * &b3 >= &b2 * &b2 * &m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RegionLabel {
    /// The `F_m^{d}` construction exists at this `m`, so `f = k − 1`.
    #[serde(rename = "BOUNDED_F_EQ_KMINUS1")]
    BoundedFEqKMinus1,
    /// A padded, truncated inversive-plane dual exists at this `m`, so `f = 2`.
    #[serde(rename = "F_EQ_2_INVERSIVE")]
    FEq2Inversive,
    /// An evaluated lower bound already exceeds `k − 1`.
    UnboundedLower,
    Unknown,
}

impl RegionLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegionLabel::BoundedFEqKMinus1 => "BOUNDED_F_EQ_KMINUS1",
            RegionLabel::FEq2Inversive => "F_EQ_2_INVERSIVE",
            RegionLabel::UnboundedLower => "UNBOUNDED_LOWER",
            RegionLabel::Unknown => "UNKNOWN",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegionReport {
    pub label: RegionLabel,
    pub thm72_necessary_violated: bool,
    pub bounds: BoundsReport,
}

/// `Some(q)` when `n = p^e` for an odd prime `p`.
pub fn odd_prime_power(n: u64) -> Option<u64> {
    if n < 3 || n.is_multiple_of(2) {
        return None;
    }
    let p = (3..).step_by(2).take_while(|d| d * d <= n).find(|d| n.is_multiple_of(*d)).unwrap_or(n);
    let mut r = n;
    while r.is_multiple_of(p) {
        r /= p;
    }
    (r == 1).then_some(p)
}

/// Labels `(b₁, b₂, 1)` at `m`, by the first rule that applies:
/// the `F_m^{d}` construction is feasible; `b₂` is an odd prime power `q`
/// with `b₁ ≥ q² − q − 1` and `m ≤ q² + 1`; some lower bound exceeds 2;
/// otherwise unknown.
pub fn classify_region(b1: u64, b2: u64, m: usize) -> Result<RegionReport> {
    if m < 6 {
        return Err(Error::InvalidParameter(format!("region classification needs m >= 6, got {m}")));
    }
    let b = BVector::new(vec![b1, b2, 1])?;
    let bounds = bounds_eval(&b, m);
    let target = 2.0;
    let feasible = (b1 > 0 || b2 > 0) && d_from_b(&b, m)?.feasible;
    let inversive = odd_prime_power(b2).is_some() && {
        let sq = BigInt::from(b2) * BigInt::from(b2);
        let lhs = BigInt::from(b1);
        lhs >= &sq - BigInt::from(b2) - 1 && BigInt::from(m as u64) <= sq + 1
    };
    let label = if feasible {
        RegionLabel::BoundedFEqKMinus1
    } else if inversive {
        RegionLabel::FEq2Inversive
    } else if [bounds.lower_thm24, bounds.lower_thm25].iter().flatten().any(|&v| v > target + TOLERANCE) {
        RegionLabel::UnboundedLower
    } else {
        RegionLabel::Unknown
    };
    Ok(RegionReport { label, thm72_necessary_violated: bounds.thm72_necessary == Some(false), bounds })
}

/// Integers `lo, ⌊lo·s⌉, ⌊lo·s²⌉, …` up to `hi`, deduplicated.
pub fn log_spaced(lo: u64, hi: u64, step: f64) -> Result<Vec<u64>> {
    if lo == 0 || lo > hi || step.is_nan() || step <= 1.0 {
        return Err(Error::InvalidParameter(format!("bad log range {lo}:{hi} step {step}")));
    }
    let mut out = Vec::new();
    let mut x = lo as f64;
    while x.round() <= hi as f64 {
        let v = x.round() as u64;
        if out.last() != Some(&v) {
            out.push(v);
        }
        x *= step;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegionRow {
    pub b1: u64,
    pub b2: u64,
    pub label: RegionLabel,
    pub alpha: Option<f64>,
    pub upper24: Option<f64>,
    pub lower24: Option<f64>,
    pub lower25: Option<f64>,
    pub thm72: Option<bool>,
}

/// Classifies every cell of a log-spaced grid, sorted by `(b₁, b₂)`.
pub fn region_grid(m: usize, b1: (u64, u64), b2: (u64, u64), step: f64) -> Result<Vec<RegionRow>> {
    let xs = log_spaced(b1.0, b1.1, step)?;
    let ys = log_spaced(b2.0, b2.1, step)?;
    let cells = xs.len() as u128 * ys.len() as u128;
    if cells > GRID_BUDGET {
        return Err(Error::BudgetExceeded { needed: cells, budget: GRID_BUDGET });
    }
    let points: Vec<(u64, u64)> = xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x, y))).collect();
    let mut rows = points
        .par_iter()
        .map(|&(x, y)| {
            let r = classify_region(x, y, m)?;
            Ok(RegionRow {
                b1: x,
                b2: y,
                label: r.label,
                alpha: r.bounds.alpha_value,
                upper24: r.bounds.upper_thm24_value,
                lower24: r.bounds.lower_thm24,
                lower25: r.bounds.lower_thm25,
                thm72: r.bounds.thm72_necessary,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| (r.b1, r.b2));
    Ok(rows)
}

pub fn write_region_csv<W: Write>(rows: &[RegionRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["b1", "b2", "label", "alpha", "upper24", "lower24", "lower25", "thm72"])?;
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in rows {
        w.write_record([
            r.b1.to_string(),
            r.b2.to_string(),
            r.label.as_str().to_string(),
            opt(r.alpha),
            opt(r.upper24),
            opt(r.lower24),
            opt(r.lower25),
            r.thm72.map(|t| t.to_string()).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Signed gap `upper − lower` for the α-driven pair, when both apply.
pub fn alpha_gap(report: &BoundsReport) -> Option<f64> {
    Some(report.upper_thm24_value? - report.lower_thm24?)
}
