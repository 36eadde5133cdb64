//! Ultimate satisfaction of voters from a committee and its decision rule.
//!
//! In the deterministic model a committee member votes the way voter `i`
//! wants iff `i` approves of it. In the probabilistic model member `c` votes
//! the way `i` wants independently with probability `p[i][c]`, the profile
//! entry. Either way the voter's ultimate satisfaction is the probability
//! that the committee's decision matches the voter's preference.

use crate::decision::DecisionRule;
use crate::enumerate::{argmax_committee, DEFAULT_COMMITTEE_LIMIT};
use crate::error::{Error, Result};
use crate::profile::{Alternative, Committee, DeterministicInstance, ScoreProfile};

/// Largest committee the pattern-enumeration oracle accepts.
pub const BRUTE_FORCE_MAX_K: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub per_voter: Vec<f64>,
    pub total: f64,
}

impl EvalReport {
    pub fn from_per_voter(per_voter: Vec<f64>) -> Self {
        let total = per_voter.iter().sum();
        EvalReport { per_voter, total }
    }
}

/// Which model to evaluate committees in.
#[derive(Debug, Clone, Copy)]
pub enum Electorate<'a> {
    Deterministic(&'a DeterministicInstance),
    Probabilistic(&'a ScoreProfile),
}

impl Electorate<'_> {
    pub fn n_candidates(&self) -> usize {
        match self {
            Electorate::Deterministic(inst) => inst.n_candidates(),
            Electorate::Probabilistic(p) => p.n_candidates(),
        }
    }

    pub fn evaluate(&self, committee: &Committee, rule: &DecisionRule) -> Result<EvalReport> {
        match self {
            Electorate::Deterministic(inst) => eval_deterministic(inst, committee, rule),
            Electorate::Probabilistic(p) => eval_probabilistic(p, committee, rule),
        }
    }

    fn total(&self, committee: &Committee, rule: &DecisionRule) -> Result<f64> {
        self.evaluate(committee, rule).map(|r| r.total)
    }
}

/// Probability that a committee with `approved` of `rule.k()` members on the
/// voter's side decides the way a voter preferring `preferred` wants.
///
/// A voter preferring accept gets `probs[l]`; one preferring reject sees
/// `K - l` accept-votes and gets `1 - probs[K - l]`. For symmetric rules
/// both equal `probs[l]`.
pub fn deterministic_satisfaction(
    rule: &DecisionRule,
    approved: usize,
    preferred: Alternative,
) -> f64 {
    let probs = rule.probs();
    match preferred {
        Alternative::Accept => probs[approved],
        Alternative::Reject => 1.0 - probs[rule.k() - approved],
    }
}

pub fn eval_deterministic(
    inst: &DeterministicInstance,
    committee: &Committee,
    rule: &DecisionRule,
) -> Result<EvalReport> {
    rule.ensure_size(committee.len())?;
    inst.approvals().check_committee(committee)?;
    let per_voter = (0..inst.n_voters())
        .map(|i| {
            deterministic_satisfaction(rule, inst.approved_count(i, committee), inst.preferred()[i])
        })
        .collect();
    Ok(EvalReport::from_per_voter(per_voter))
}

/// Distribution of the number of members voting the voter's way: entry `l`
/// is the probability that exactly `l` of them do.
pub fn agreement_distribution(probabilities: impl IntoIterator<Item = f64>) -> Vec<f64> {
    let mut table = vec![1.0];
    for p in probabilities {
        let mut next = vec![0.0; table.len() + 1];
        for (l, &a) in table.iter().enumerate() {
            next[l] += (1.0 - p) * a;
            next[l + 1] += p * a;
        }
        table = next;
    }
    table
}

/// Ultimate satisfaction of one voter by dynamic programming over the
/// members, `O(K^2)`. Sums `probs[l] * A[K][l]` over `l = 0..=K`.
pub fn eval_probabilistic_dp(
    profile: &ScoreProfile,
    voter: usize,
    committee: &Committee,
    rule: &DecisionRule,
) -> Result<f64> {
    check_probabilistic(profile, voter, committee, rule)?;
    let row = profile.row(voter);
    let dist = agreement_distribution(committee.members().iter().map(|&c| row[c]));
    Ok(rule.dot(&dist))
}

/// Same quantity as [`eval_probabilistic_dp`] by enumerating all `2^K`
/// vote patterns of the committee.
pub fn eval_probabilistic_bruteforce(
    profile: &ScoreProfile,
    voter: usize,
    committee: &Committee,
    rule: &DecisionRule,
) -> Result<f64> {
    check_probabilistic(profile, voter, committee, rule)?;
    let k = committee.len();
    if k > BRUTE_FORCE_MAX_K {
        return Err(Error::TooLarge {
            what: "committee members for pattern enumeration",
            count: k as u128,
            limit: BRUTE_FORCE_MAX_K as u128,
        });
    }
    let row = profile.row(voter);
    let probs: Vec<f64> = committee.members().iter().map(|&c| row[c]).collect();
    let mut value = 0.0;
    for pattern in 0u32..(1 << k) {
        // Bit j set: member j votes the voter's way.
        let mut weight = 1.0;
        for (j, &p) in probs.iter().enumerate() {
            weight *= if pattern >> j & 1 == 1 { p } else { 1.0 - p };
        }
        value += weight * rule.probs()[pattern.count_ones() as usize];
    }
    Ok(value)
}

pub fn eval_probabilistic(
    profile: &ScoreProfile,
    committee: &Committee,
    rule: &DecisionRule,
) -> Result<EvalReport> {
    rule.ensure_size(committee.len())?;
    profile.check_committee(committee)?;
    let per_voter = profile
        .rows()
        .map(|row| {
            rule.dot(&agreement_distribution(
                committee.members().iter().map(|&c| row[c]),
            ))
        })
        .collect();
    Ok(EvalReport::from_per_voter(per_voter))
}

fn check_probabilistic(
    profile: &ScoreProfile,
    voter: usize,
    committee: &Committee,
    rule: &DecisionRule,
) -> Result<()> {
    rule.ensure_size(committee.len())?;
    profile.check_voter(voter)?;
    profile.check_committee(committee)
}

/// Committee maximizing total ultimate satisfaction; ties go to the
/// lexicographically first committee.
pub fn optimal_committee(
    electorate: Electorate<'_>,
    k: usize,
    rule: &DecisionRule,
) -> Result<(Committee, EvalReport)> {
    optimal_committee_with_limit(electorate, k, rule, DEFAULT_COMMITTEE_LIMIT)
}

pub fn optimal_committee_with_limit(
    electorate: Electorate<'_>,
    k: usize,
    rule: &DecisionRule,
    limit: u128,
) -> Result<(Committee, EvalReport)> {
    rule.ensure_size(k)?;
    let (committee, _) = argmax_committee(electorate.n_candidates(), k, limit, |s| {
        electorate.total(s, rule)
    })?;
    let report = electorate.evaluate(&committee, rule)?;
    Ok((committee, report))
}

/// Committees ranked by total ultimate satisfaction, best first; equal
/// totals keep lexicographic order of the committees.
pub fn compare_committees(
    electorate: Electorate<'_>,
    rule: &DecisionRule,
    committees: &[Committee],
) -> Result<Vec<(Committee, f64)>> {
    let mut ranked = committees
        .iter()
        .map(|c| Ok((c.clone(), electorate.total(c, rule)?)))
        .collect::<Result<Vec<_>>>()?;
    ranked.sort_by(|(ca, ta), (cb, tb)| tb.total_cmp(ta).then_with(|| ca.cmp(cb)));
    Ok(ranked)
}
