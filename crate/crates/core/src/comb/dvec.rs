//! Multiplicity vectors `d` for the `F_m^{d}` construction and their
//! relation to the b- and a-vectors.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::binom::binom_ext;
use crate::error::{Error, Result};
use crate::profile::{AVector, BVector};

/// Non-negative cell multiplicities `(d_1..d_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DVector {
    d: Vec<u64>,
}

impl DVector {
    pub fn new(d: Vec<u64>) -> Result<Self> {
        if d.is_empty() {
            return Err(Error::InvalidParameter("empty d-vector".into()));
        }
        Ok(DVector { d })
    }

    pub fn k(&self) -> usize {
        self.d.len()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.d
    }
}

/// Exact `d` solved from `b`; `feasible` iff every entry is non-negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DSolve {
    pub d: Vec<BigInt>,
    pub feasible: bool,
}

impl DSolve {
    pub fn dvector(&self) -> Result<DVector> {
        if !self.feasible {
            let i = self.d.iter().position(|x| x.is_negative()).unwrap_or(0);
            return Err(Error::InvalidParameter(format!("d_{} = {} is negative", i + 1, self.d[i])));
        }
        let d = self.d.iter().map(|x| x.to_u64().ok_or(Error::Overflow)).collect::<Result<_>>()?;
        Ok(DVector { d })
    }
}

fn check_m(k: usize, m: usize) -> Result<()> {
    if m < k {
        return Err(Error::TooFewEdges { need: k, have: m });
    }
    Ok(())
}

/// `d_i = Σ_{j=i}^{k−1} (−1)^{j−i} C(m−k+j−i−1, j−i) b_j` for `i < k`, `d_k = b_k`.
pub fn d_from_b(b: &BVector, m: usize) -> Result<DSolve> {
    let k = b.k();
    check_m(k, m)?;
    let bs = b.as_slice();
    let mut d = Vec::with_capacity(k);
    for i in 1..k {
        let mut acc = BigInt::zero();
        for j in i..k {
            let t = (j - i) as i64;
            let c = binom_ext(m as i64 - k as i64 + t - 1, t) * bs[j - 1];
            if t % 2 == 0 {
                acc += c;
            } else {
                acc -= c;
            }
        }
        d.push(acc);
    }
    d.push(BigInt::from(bs[k - 1]));
    let feasible = d.iter().all(|x| !x.is_negative());
    Ok(DSolve { d, feasible })
}

/// Common `i`-wise intersection size in `F_m^{d}`:
/// `a_i = d_i + C(m−i,1) d_{i+1} + … + C(m−i,k−1−i) d_{k−1} + d_k`.
pub fn a_from_d(d: &DVector, m: usize) -> Result<AVector> {
    let k = d.k();
    check_m(k, m)?;
    let ds = d.as_slice();
    let mut a = Vec::with_capacity(k);
    for i in 1..=k {
        let mut acc = BigInt::from(ds[k - 1]);
        for j in i..k {
            acc += binom_ext(m as i64 - i as i64, (j - i) as i64) * ds[j - 1];
        }
        a.push(acc.to_u64().ok_or(Error::Overflow)?);
    }
    AVector::new(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comb::identities::{d_matrix, w_prime_matrix};
    use crate::profile::b_from_a;
    use proptest::prelude::*;

    fn bv(b: &[u64]) -> BVector {
        BVector::new(b.to_vec()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn d_from_b_examples() {
        let s = d_from_b(&bv(&[3, 1, 0]), 6).unwrap();
        assert!(s.feasible);
        assert_eq!(s.d, ints(&[0, 1, 0]));
        let s = d_from_b(&bv(&[5, 1, 0]), 10).unwrap();
        assert!(!s.feasible);
        assert_eq!(s.d, ints(&[-2, 1, 0]));
        assert!(s.dvector().is_err());
        for m in 4..20 {
            let s = d_from_b(&bv(&[7, 0, 0, 2]), m).unwrap();
            assert_eq!(s.d, ints(&[7, 0, 0, 2]));
        }
        assert!(matches!(d_from_b(&bv(&[1, 1, 1]), 2), Err(Error::TooFewEdges { .. })));
    }

    #[test]
    fn a_from_d_examples() {
        let d = DVector::new(vec![1, 2, 3]).unwrap();
        assert_eq!(a_from_d(&d, 4).unwrap().as_slice(), &[10, 5, 3]);
        let d = DVector::new(vec![0, 0, 0, 4]).unwrap();
        assert_eq!(a_from_d(&d, 9).unwrap().as_slice(), &[4, 4, 4, 4]);
        let d = DVector::new(vec![0, 1, 0]).unwrap();
        assert_eq!(a_from_d(&d, 6).unwrap().as_slice(), &[5, 1, 0]);
    }

    proptest! {
        #[test]
        fn chain_b_d_a_b_is_identity(
            b in prop::collection::vec(0u64..=20, 2..=6),
            extra in 0usize..=24,
        ) {
            let b = BVector::new(b).unwrap();
            let m = b.k() + extra;
            let s = d_from_b(&b, m).unwrap();
            if s.feasible {
                let a = a_from_d(&s.dvector().unwrap(), m).unwrap();
                prop_assert_eq!(b_from_a(&a).unwrap(), b);
            }
        }

        #[test]
        fn matrix_routes_agree(
            b in prop::collection::vec(0u64..=20, 3..=6),
            extra in 0usize..=20,
        ) {
            let b = BVector::new(b).unwrap();
            let (k, m) = (b.k(), b.k() + extra);
            let bb: Vec<BigInt> = b.as_slice().iter().map(|&x| BigInt::from(x)).collect();
            let s = d_from_b(&b, m).unwrap();
            prop_assert_eq!(&w_prime_matrix(k, m).mul_vec(&bb), &s.d);
            if s.feasible {
                let a = a_from_d(&s.dvector().unwrap(), m).unwrap();
                let via_d: Vec<BigInt> = d_matrix(k, m).mul_vec(&s.d);
                let a_big: Vec<BigInt> = a.as_slice().iter().map(|&x| BigInt::from(x)).collect();
                prop_assert_eq!(via_d, a_big);
            }
        }
    }
}
