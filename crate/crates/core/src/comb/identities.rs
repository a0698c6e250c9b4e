//! The binomial matrices relating b-, a- and d-vectors, and the two exact
//! identities behind them: the alternating binomial convolution and
//! `B_{k,k} · D · W' = I_k`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::binom::binom_ext;
use super::matrix::ExactMatrix;
use crate::certificate::Certificate;
use crate::error::{Error, Result};

fn sign(e: usize) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `A_{n,m}`: entry `(i,j)` is `C(m−i, j−i)` (1-based).
pub fn a_matrix(n: usize, m: usize) -> ExactMatrix {
    ExactMatrix::from_fn(n, n, |i, j| binom_ext(m as i64 - (i as i64 + 1), j as i64 - i as i64))
}

/// `B_{n,m}`: entry `(i,j)` is `(−1)^{j−i} C(m−i, j−i)`.
pub fn b_matrix(n: usize, m: usize) -> ExactMatrix {
    ExactMatrix::from_fn(n, n, |i, j| {
        if j < i {
            BigInt::zero()
        } else {
            sign(j - i) * binom_ext(m as i64 - (i as i64 + 1), (j - i) as i64)
        }
    })
}

/// `W_{k−1,m}`: entry `(i,j)` is `(−1)^{j−i} C(m−k+j−i−1, j−i)`.
pub fn w_matrix(k: usize, m: usize) -> ExactMatrix {
    let n = k - 1;
    ExactMatrix::from_fn(n, n, |i, j| {
        if j < i {
            BigInt::zero()
        } else {
            let t = (j - i) as i64;
            sign(j - i) * binom_ext(m as i64 - k as i64 + t - 1, t)
        }
    })
}

/// `D = [[A_{k−1,m}, 1], [0ᵀ, 1]]`.
pub fn d_matrix(k: usize, m: usize) -> ExactMatrix {
    let a = a_matrix(k - 1, m);
    ExactMatrix::from_fn(k, k, |i, j| match (i < k - 1, j < k - 1) {
        (true, true) => a.get(i, j).clone(),
        (_, false) => BigInt::one(),
        (false, true) => BigInt::zero(),
    })
}

/// `W' = [[W_{k−1,m}, 0], [0ᵀ, 1]]`.
pub fn w_prime_matrix(k: usize, m: usize) -> ExactMatrix {
    let w = w_matrix(k, m);
    ExactMatrix::from_fn(k, k, |i, j| match (i < k - 1, j < k - 1) {
        (true, true) => w.get(i, j).clone(),
        (false, false) => BigInt::one(),
        _ => BigInt::zero(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixSuite {
    pub k: usize,
    pub m: usize,
    pub a: ExactMatrix,
    pub b: ExactMatrix,
    pub w: ExactMatrix,
    pub d: ExactMatrix,
    pub w_prime: ExactMatrix,
}

impl MatrixSuite {
    pub fn product(&self) -> ExactMatrix {
        &(&self.b * &self.d) * &self.w_prime
    }
}

pub const SUITE_K_RANGE: std::ops::RangeInclusive<usize> = 3..=10;
pub const SUITE_M_MAX: usize = 64;

pub fn build_matrix_suite(k: usize, m: usize) -> Result<MatrixSuite> {
    if !SUITE_K_RANGE.contains(&k) || m < k || m > SUITE_M_MAX {
        return Err(Error::UnsupportedDimension { k, m });
    }
    Ok(MatrixSuite {
        k,
        m,
        a: a_matrix(k - 1, m),
        b: b_matrix(k, k),
        w: w_matrix(k, m),
        d: d_matrix(k, m),
        w_prime: w_prime_matrix(k, m),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryWitness {
    pub i: usize,
    pub j: usize,
    pub value: String,
}

/// Checks `B_{k,k}·D·W' = I_k` exactly; a failure names the first bad
/// entry (1-based).
pub fn bdw_identity_check(k: usize, m: usize) -> Result<Certificate> {
    let suite = build_matrix_suite(k, m)?;
    let cert = Certificate::new("bdw_identity").param("k", k).param("m", m);
    Ok(match suite.product().first_non_identity_entry() {
        None => cert.passed(),
        Some((i, j, v)) => cert.failed(EntryWitness { i: i + 1, j: j + 1, value: v.to_string() }),
    })
}

/// Runs the identity over `k_lo ≤ k ≤ k_hi`, `k ≤ m ≤ m_hi`.
pub fn bdw_sweep(k_lo: usize, k_hi: usize, m_hi: usize) -> Result<Certificate> {
    let grid: Vec<(usize, usize)> =
        (k_lo..=k_hi).flat_map(|k| (k..=m_hi).map(move |m| (k, m))).collect();
    let results = grid
        .par_iter()
        .map(|&(k, m)| bdw_identity_check(k, m).map(|c| (k, m, c)))
        .collect::<Result<Vec<_>>>()?;
    let cert = Certificate::new("bdw_identity_sweep")
        .param("k_range", [k_lo, k_hi])
        .param("m_max", m_hi)
        .param("instances", results.len());
    Ok(match results.into_iter().find(|(_, _, c)| !c.result) {
        None => cert.passed(),
        Some((k, m, c)) => cert.failed(serde_json::json!({"k": k, "m": m, "entry": c.witness})),
    })
}

/// Both sides of `Σ_{t=0}^{z} (−1)^t C(x,t) C(y−t, z−t) = (−1)^z C(x−y+z−1, z)`.
pub fn vdm_sides(x: i64, y: i64, z: i64) -> (BigInt, BigInt) {
    let lhs = (0..=z)
        .map(|t| sign(t as usize) * binom_ext(x, t) * binom_ext(y - t, z - t))
        .sum::<BigInt>();
    let rhs = sign(z as usize) * binom_ext(x - y + z - 1, z);
    (lhs, rhs)
}

pub fn vdm_identity_check(x: i64, y: i64, z: i64) -> Result<Certificate> {
    if x < 0 || z < 0 || y < z {
        return Err(Error::InvalidParameter(format!(
            "need x >= 0 and y >= z >= 0, got x={x} y={y} z={z}"
        )));
    }
    let (lhs, rhs) = vdm_sides(x, y, z);
    let cert = Certificate::new("vdm_identity").param("x", x).param("y", y).param("z", z);
    Ok(if lhs == rhs {
        cert.passed()
    } else {
        cert.failed(serde_json::json!({"lhs": lhs.to_string(), "rhs": rhs.to_string()}))
    })
}

/// Exhaustive check over `0 ≤ x ≤ n`, `0 ≤ z ≤ y ≤ n`.
pub fn vdm_sweep(n: i64) -> Result<Certificate> {
    let mut checked = 0u64;
    for x in 0..=n {
        for y in 0..=n {
            for z in 0..=y {
                let c = vdm_identity_check(x, y, z)?;
                checked += 1;
                if !c.result {
                    return Ok(Certificate::new("vdm_identity_sweep")
                        .param("range", n)
                        .failed(serde_json::json!({"x": x, "y": y, "z": z, "sides": c.witness})));
                }
            }
        }
    }
    Ok(Certificate::new("vdm_identity_sweep").param("range", n).param("instances", checked).passed())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_entries_for_k3_m5() {
        let s = build_matrix_suite(3, 5).unwrap();
        assert_eq!(s.b, ExactMatrix::from_rows(&[vec![1, -2, 1], vec![0, 1, -1], vec![0, 0, 1]]));
        assert_eq!(s.w_prime, ExactMatrix::from_rows(&[vec![1, -2, 0], vec![0, 1, 0], vec![0, 0, 1]]));
        assert_eq!(s.d, ExactMatrix::from_rows(&[vec![1, 4, 1], vec![0, 1, 1], vec![0, 0, 1]]));
        assert_eq!(&s.b * &s.d, ExactMatrix::from_rows(&[vec![1, 2, 0], vec![0, 1, 0], vec![0, 0, 1]]));
        assert_eq!(s.product(), ExactMatrix::identity(3));
    }

    #[test]
    fn suites_are_unitriangular() {
        for k in 3..=10 {
            for m in k..=20 {
                let s = build_matrix_suite(k, m).unwrap();
                for mat in [&s.a, &s.b, &s.w, &s.d, &s.w_prime] {
                    assert!(mat.is_upper_unitriangular(), "k={k} m={m}");
                }
            }
        }
    }

    #[test]
    fn dimension_errors() {
        assert!(matches!(build_matrix_suite(2, 5), Err(Error::UnsupportedDimension { .. })));
        assert!(matches!(build_matrix_suite(11, 20), Err(Error::UnsupportedDimension { .. })));
        assert!(matches!(build_matrix_suite(5, 4), Err(Error::UnsupportedDimension { .. })));
        assert!(matches!(build_matrix_suite(5, 65), Err(Error::UnsupportedDimension { .. })));
    }

    #[test]
    fn bdw_minimal_and_sweep() {
        for k in 3..=10 {
            assert!(bdw_identity_check(k, k).unwrap().result);
        }
        assert!(bdw_sweep(3, 8, 25).unwrap().result);
    }

    #[test]
    fn vdm_examples() {
        let c = vdm_identity_check(2, 3, 2).unwrap();
        assert!(c.result);
        assert_eq!(vdm_sides(2, 3, 2), (BigInt::zero(), BigInt::zero()));
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(vdm_sides(x, y, 0), (BigInt::one(), BigInt::one()));
            }
        }
        assert!(vdm_sweep(20).unwrap().result);
        assert!(vdm_identity_check(1, 1, 2).is_err());
    }

    #[test]
    fn perturbed_product_is_caught() {
        let s = build_matrix_suite(4, 7).unwrap();
        let mut w = s.w_prime.clone();
        w.set(0, 1, w.get(0, 1) + BigInt::one());
        let p = &(&s.b * &s.d) * &w;
        assert_eq!(p.first_non_identity_entry().map(|(i, j, _)| (i, j)), Some((0, 1)));
    }
}
