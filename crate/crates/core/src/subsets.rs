//! Lexicographic k-subset enumeration, optionally split across threads by
//! first element. Results are always reported in lexicographic order.

use itertools::Itertools;
use rayon::prelude::*;

use crate::comb::binom_u128;
use crate::error::{Error, Result};

/// Largest number of k-subsets any exhaustive scan will enumerate.
pub const SUBSET_BUDGET: u128 = 10_000_000;

pub fn subset_count(n: usize, k: usize) -> u128 {
    binom_u128(n as u64, k as u64).unwrap_or(u128::MAX)
}

pub fn check_budget(n: usize, k: usize) -> Result<()> {
    let needed = subset_count(n, k);
    if needed > SUBSET_BUDGET {
        return Err(Error::BudgetExceeded { needed, budget: SUBSET_BUDGET });
    }
    Ok(())
}

fn with_first(first: usize, rest: Vec<usize>) -> Vec<usize> {
    let mut s = Vec::with_capacity(rest.len() + 1);
    s.push(first);
    s.extend(rest);
    s
}

/// Lexicographically smallest k-subset of `0..n` satisfying `pred`.
pub fn par_find_first<F>(n: usize, k: usize, pred: F) -> Option<Vec<usize>>
where
    F: Fn(&[usize]) -> bool + Sync,
{
    if k == 0 {
        return pred(&[]).then(Vec::new);
    }
    if k > n {
        return None;
    }
    (0..=n - k).into_par_iter().find_map_first(|first| {
        (first + 1..n)
            .combinations(k - 1)
            .map(|rest| with_first(first, rest))
            .find(|s| pred(s))
    })
}

/// All k-subsets of `0..n` satisfying `pred`, in lexicographic order.
pub fn par_filter<F>(n: usize, k: usize, pred: F) -> Vec<Vec<usize>>
where
    F: Fn(&[usize]) -> bool + Sync,
{
    if k == 0 {
        return if pred(&[]) { vec![Vec::new()] } else { Vec::new() };
    }
    if k > n {
        return Vec::new();
    }
    let chunks: Vec<Vec<Vec<usize>>> = (0..=n - k)
        .into_par_iter()
        .map(|first| {
            (first + 1..n)
                .combinations(k - 1)
                .map(|rest| with_first(first, rest))
                .filter(|s| pred(s))
                .collect()
        })
        .collect();
    chunks.into_iter().flatten().collect()
}
