use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `C(n, r)` in `u128`, `None` on overflow.
pub fn binom_u128(n: u64, r: u64) -> Option<u128> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

fn binom_nonneg(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Extended binomial coefficient.
///
/// `y < 0` gives 0; for `x >= 0` this is the ordinary `C(x, y)`; for `x < 0`
/// it is `(−1)^y C(−x+y−1, y)`, so Pascal's rule holds everywhere.
pub fn binom_ext(x: i64, y: i64) -> BigInt {
    if y < 0 {
        return BigInt::zero();
    }
    if x >= 0 {
        return binom_nonneg(x as u64, y as u64);
    }
    let n = (-(x as i128) + y as i128 - 1) as u64;
    let v = binom_nonneg(n, y as u64);
    if y % 2 == 0 {
        v
    } else {
        -v
    }
}
