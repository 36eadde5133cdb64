//! Lexicographic enumeration of fixed-size committees with a size guard.

use crate::error::{Error, Result};
use crate::profile::Committee;

/// Default cap on the number of committees an exhaustive search may visit.
pub const DEFAULT_COMMITTEE_LIMIT: u128 = 10_000_000;

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Checks `m` and `k` describe a searchable committee space.
pub fn check_space(m: usize, k: usize, limit: u128) -> Result<()> {
    if k == 0 || k > m {
        return Err(Error::invalid(
            "committee size",
            format!("need 1 <= K <= {m}, got K = {k}"),
        ));
    }
    let count = binomial(m, k);
    if count > limit {
        return Err(Error::TooLarge {
            what: "committees",
            count,
            limit,
        });
    }
    Ok(())
}

/// All `k`-subsets of `0..m` in lexicographic order.
pub fn committees(m: usize, k: usize) -> impl Iterator<Item = Committee> {
    itertools::Itertools::combinations(0..m, k).map(Committee::from_sorted_unchecked)
}

/// Lexicographically first maximizer of `objective` over all `k`-subsets.
/// A later committee replaces the incumbent only if it is better by more
/// than [`crate::TIE_EPS`].
pub(crate) fn argmax_committee<F>(
    m: usize,
    k: usize,
    limit: u128,
    mut objective: F,
) -> Result<(Committee, f64)>
where
    F: FnMut(&Committee) -> Result<f64>,
{
    check_space(m, k, limit)?;
    let mut best: Option<(Committee, f64)> = None;
    for committee in committees(m, k) {
        let value = objective(&committee)?;
        match &best {
            Some((_, b)) if value <= b + crate::TIE_EPS => {}
            _ => best = Some((committee, value)),
        }
    }
    Ok(best.expect("check_space guarantees at least one committee"))
}
