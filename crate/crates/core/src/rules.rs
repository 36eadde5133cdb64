//! OWA-based multiwinner election rules.

use crate::enumerate::{argmax_committee, check_space, DEFAULT_COMMITTEE_LIMIT};
use crate::error::{Error, Result};
use crate::owa::OwaVector;
use crate::profile::{Committee, ScoreProfile};
use crate::TIE_EPS;

/// `alpha(i, S)`: the voter's scores of the members of `S`, sorted from
/// best to worst, weighted by `alpha`.
pub fn owa_satisfaction(
    alpha: &OwaVector,
    profile: &ScoreProfile,
    voter: usize,
    committee: &Committee,
) -> Result<f64> {
    if alpha.len() != committee.len() {
        return Err(Error::Dimension {
            what: "OWA vector",
            expected: committee.len(),
            got: alpha.len(),
        });
    }
    profile.check_voter(voter)?;
    profile.check_committee(committee)?;
    Ok(satisfaction_unchecked(
        alpha.weights(),
        profile.row(voter),
        committee,
    ))
}

fn satisfaction_unchecked(weights: &[f64], row: &[f64], committee: &Committee) -> f64 {
    let mut scores: Vec<f64> = committee.members().iter().map(|&c| row[c]).collect();
    scores.sort_unstable_by(|a, b| b.total_cmp(a));
    weights.iter().zip(&scores).map(|(w, s)| w * s).sum()
}

/// Total OWA satisfaction `sum_i alpha(i, S)`.
pub fn owa_total(alpha: &OwaVector, profile: &ScoreProfile, committee: &Committee) -> Result<f64> {
    if alpha.len() != committee.len() {
        return Err(Error::Dimension {
            what: "OWA vector",
            expected: committee.len(),
            got: alpha.len(),
        });
    }
    profile.check_committee(committee)?;
    Ok(profile
        .rows()
        .map(|row| satisfaction_unchecked(alpha.weights(), row, committee))
        .sum())
}

/// Exact `alpha`-rule winner by exhaustive enumeration, guarded at
/// [`DEFAULT_COMMITTEE_LIMIT`] committees.
pub fn owa_winner_exact(
    alpha: &OwaVector,
    profile: &ScoreProfile,
    k: usize,
) -> Result<(Committee, f64)> {
    owa_winner_exact_with_limit(alpha, profile, k, DEFAULT_COMMITTEE_LIMIT)
}

pub fn owa_winner_exact_with_limit(
    alpha: &OwaVector,
    profile: &ScoreProfile,
    k: usize,
    limit: u128,
) -> Result<(Committee, f64)> {
    ensure_profile(profile)?;
    if alpha.len() != k {
        return Err(Error::Dimension {
            what: "OWA vector",
            expected: k,
            got: alpha.len(),
        });
    }
    argmax_committee(profile.n_candidates(), k, limit, |s| {
        Ok(profile
            .rows()
            .map(|row| satisfaction_unchecked(alpha.weights(), row, s))
            .sum())
    })
}

/// Sequential (greedy) `alpha`-rule. Returns the committee and its total
/// under the full `alpha`.
pub fn owa_winner_sequential(
    alpha: &OwaVector,
    profile: &ScoreProfile,
    k: usize,
) -> Result<(Committee, f64)> {
    let (committee, steps) = sequential_trace(alpha, profile, k)?;
    Ok((committee, *steps.last().expect("k >= 1")))
}

/// Sequential `alpha`-rule with the partial-committee total after every
/// step. At step `t` the partial committee is scored with the first `t`
/// weights of `alpha`; each step adds the lowest-indexed candidate whose
/// total is within [`TIE_EPS`] of the best.
pub fn sequential_trace(
    alpha: &OwaVector,
    profile: &ScoreProfile,
    k: usize,
) -> Result<(Committee, Vec<f64>)> {
    ensure_profile(profile)?;
    if alpha.len() != k {
        return Err(Error::Dimension {
            what: "OWA vector",
            expected: k,
            got: alpha.len(),
        });
    }
    check_space(profile.n_candidates(), k, u128::MAX)?;

    let weights = alpha.weights();
    let n = profile.n_voters();
    let m = profile.n_candidates();
    // Per voter, scores of the current members sorted best first.
    let mut sorted: Vec<Vec<f64>> = vec![Vec::with_capacity(k); n];
    let mut chosen = vec![false; m];
    let mut members = Vec::with_capacity(k);
    let mut steps = Vec::with_capacity(k);

    for t in 0..k {
        let w = &weights[..=t];
        let mut best: Option<(usize, f64)> = None;
        for c in (0..m).filter(|&c| !chosen[c]) {
            let total: f64 = (0..n)
                .map(|i| with_inserted(w, &sorted[i], profile.score(i, c)))
                .sum();
            match best {
                Some((_, b)) if total <= b + TIE_EPS => {}
                _ => best = Some((c, total)),
            }
        }
        let (c, total) = best.expect("K <= m leaves a candidate at every step");
        chosen[c] = true;
        members.push(c);
        steps.push(total);
        for (i, scores) in sorted.iter_mut().enumerate() {
            let x = profile.score(i, c);
            let pos = scores.partition_point(|&s| s >= x);
            scores.insert(pos, x);
        }
    }
    members.sort_unstable();
    Ok((Committee::from_sorted_unchecked(members), steps))
}

/// OWA value of `sorted` (best first) with `x` inserted, using all of `w`
/// (`w.len() == sorted.len() + 1`).
#[inline]
fn with_inserted(w: &[f64], sorted: &[f64], x: f64) -> f64 {
    let pos = sorted.partition_point(|&s| s >= x);
    let mut v = w[pos] * x;
    for (j, &s) in sorted.iter().enumerate() {
        v += if j < pos { w[j] * s } else { w[j + 1] * s };
    }
    v
}

/// Top-K winner: the `k` candidates with the largest total score, ties to
/// lower indices. Agrees with [`owa_winner_exact`] for the all-ones vector
/// but runs in `O(nm + m log m)`.
pub fn top_k_winner(profile: &ScoreProfile, k: usize) -> Result<(Committee, f64)> {
    ensure_profile(profile)?;
    check_space(profile.n_candidates(), k, u128::MAX)?;
    let sums = profile.column_sums();
    let mut order: Vec<usize> = (0..profile.n_candidates()).collect();
    order.sort_by(|&a, &b| sums[b].total_cmp(&sums[a]).then(a.cmp(&b)));
    let mut members = order[..k].to_vec();
    members.sort_unstable();
    let total = members.iter().map(|&c| sums[c]).sum();
    Ok((Committee::from_sorted_unchecked(members), total))
}

fn ensure_profile(profile: &ScoreProfile) -> Result<()> {
    if profile.n_voters() == 0 || profile.n_candidates() == 0 {
        return Err(Error::invalid("profile", "no voters or no candidates"));
    }
    Ok(())
}
