//! Multiwinner rules and full multiwinner rules that are optimal for a
//! given decision rule.

use crate::decision::DecisionRule;
use crate::enumerate::{argmax_committee, binomial, DEFAULT_COMMITTEE_LIMIT};
use crate::error::{Error, Result};
use crate::eval::eval_deterministic;
use crate::owa::OwaVector;
use crate::profile::{Committee, DeterministicInstance};
use crate::rules::{owa_winner_exact_with_limit, top_k_winner};
use crate::TIE_EPS;

/// `P(s | l)` for the approval model: probability that exactly `s` of `K`
/// members vote the voter's way when `l` of them are approved. Approved
/// members agree with probability `p`, the others with probability `q`.
/// Row `l`, column `s`.
pub fn agreement_given_approvals(k: usize, p: f64, q: f64) -> Vec<Vec<f64>> {
    (0..=k)
        .map(|l| {
            (0..=k)
                .map(|s| {
                    // x approved members agree, s - x disapproved ones do.
                    (s.saturating_sub(k - l)..=s.min(l))
                        .map(|x| {
                            binomial(l, x) as f64
                                * p.powi(x as i32)
                                * (1.0 - p).powi((l - x) as i32)
                                * binomial(k - l, s - x) as f64
                                * q.powi((s - x) as i32)
                                * (1.0 - q).powi((k - l + x - s) as i32)
                        })
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// Ultimate satisfaction of a voter with `l` approved members, for
/// `l = 0..=K`, under a symmetric `rule` in the approval model.
pub fn satisfaction_by_approvals(rule: &DecisionRule, p: f64, q: f64) -> Result<Vec<f64>> {
    check_approval_model(rule, p, q)?;
    Ok(agreement_given_approvals(rule.k(), p, q)
        .iter()
        .map(|row| rule.dot(row))
        .collect())
}

/// OWA vector whose rule elects optimal committees for `rule` in the
/// approval model with agreement probabilities `p > q`:
/// `alpha_j = P_j - P_(j-1)` for `j = 1..=K`. The constant `P_0` per voter
/// is dropped, so OWA totals are `n * P_0` below the satisfaction totals.
pub fn alpha_from_decision_rule(
    rule: &DecisionRule,
    k: usize,
    p: f64,
    q: f64,
) -> Result<OwaVector> {
    rule.ensure_size(k)?;
    let levels = satisfaction_by_approvals(rule, p, q)?;
    OwaVector::new(levels.windows(2).map(|w| w[1] - w[0]).collect())
}

fn check_approval_model(rule: &DecisionRule, p: f64, q: f64) -> Result<()> {
    if !rule.is_symmetric() {
        return Err(Error::invalid(
            "decision rule",
            "OWA synthesis needs a symmetric decision rule",
        ));
    }
    if !(0.0 <= q && q < p && p <= 1.0) {
        return Err(Error::invalid(
            "approval model",
            format!("need 0 <= q < p <= 1, got p = {p}, q = {q}"),
        ));
    }
    Ok(())
}

/// A committee together with the decision rule it will use.
#[derive(Debug, Clone, PartialEq)]
pub struct FullRuleOutcome {
    pub committee: Committee,
    pub decision: DecisionRule,
    pub total: f64,
}

impl FullRuleOutcome {
    fn evaluated(
        inst: &DeterministicInstance,
        committee: Committee,
        decision: DecisionRule,
    ) -> Result<Self> {
        let total = eval_deterministic(inst, &committee, &decision)?.total;
        Ok(FullRuleOutcome {
            committee,
            decision,
            total,
        })
    }
}

/// `(K+1)/2`-median committee followed by majority.
pub fn median_then_majority(inst: &DeterministicInstance, k: usize) -> Result<FullRuleOutcome> {
    let (committee, owa) = median_winner(inst, k)?;
    Ok(FullRuleOutcome {
        committee,
        decision: DecisionRule::majority(k)?,
        total: owa,
    })
}

/// Top-K committee followed by random dictatorship.
pub fn top_k_then_random_dictatorship(
    inst: &DeterministicInstance,
    k: usize,
) -> Result<FullRuleOutcome> {
    let (committee, apprv) = top_k_winner(inst.approvals(), k)?;
    Ok(FullRuleOutcome {
        committee,
        decision: DecisionRule::random_dictatorship(k)?,
        total: apprv / k as f64,
    })
}

fn median_winner(inst: &DeterministicInstance, k: usize) -> Result<(Committee, f64)> {
    if k.is_multiple_of(2) {
        return Err(Error::invalid(
            "committee size",
            format!("the median rule needs an odd committee size, got {k}"),
        ));
    }
    let alpha = OwaVector::k_median(k.div_ceil(2), k)?;
    owa_winner_exact_with_limit(&alpha, inst.approvals(), k, DEFAULT_COMMITTEE_LIMIT)
}

/// Picks top-K with random dictatorship if `apprv / K > owa`, otherwise the
/// `(K+1)/2`-median committee with majority.
pub fn comb(inst: &DeterministicInstance, k: usize) -> Result<FullRuleOutcome> {
    let median = median_then_majority(inst, k)?;
    let top = top_k_then_random_dictatorship(inst, k)?;
    Ok(if top.total > median.total {
        top
    } else {
        median
    })
}

/// `w[l]`: number of voters approving exactly `l` members of `committee`.
pub fn approval_level_counts(inst: &DeterministicInstance, committee: &Committee) -> Vec<f64> {
    let mut w = vec![0.0; committee.len() + 1];
    for i in 0..inst.n_voters() {
        w[inst.approved_count(i, committee)] += 1.0;
    }
    w
}

/// Best symmetric monotone decision rule for maximizing `sum_l w[l] * R(l)`.
///
/// After substituting symmetry the problem is a linear objective over the
/// chain `1/2 <= R(a_0) <= ... <= R(K) <= 1` of upper-half values, whose
/// vertices are exactly the quota rules with the 1/2 plateau. Candidates
/// are tried by increasing threshold, no-plateau first; a later candidate
/// wins only if better by more than [`TIE_EPS`].
pub fn best_quota_rule(weights: &[f64]) -> Result<(DecisionRule, f64)> {
    let k = weights
        .len()
        .checked_sub(1)
        .filter(|&k| k > 0)
        .ok_or_else(|| Error::invalid("level counts", "need counts for 0..=K with K >= 1"))?;
    let mut best: Option<(DecisionRule, f64)> = None;
    for t in k / 2 + 1..=k + 1 {
        for plateau in [false, true] {
            let rule = DecisionRule::quota(k, t, plateau)?;
            let value = rule.dot(weights);
            match &best {
                Some((_, b)) if value <= b + TIE_EPS => {}
                _ => best = Some((rule, value)),
            }
        }
    }
    Ok(best.expect("at least one threshold"))
}

/// Optimal symmetric monotone decision rule for a fixed committee.
pub fn optimal_decision_rule_for_committee(
    inst: &DeterministicInstance,
    committee: &Committee,
) -> Result<DecisionRule> {
    inst.approvals().check_committee(committee)?;
    best_quota_rule(&approval_level_counts(inst, committee)).map(|(rule, _)| rule)
}

/// Tries every committee with its optimal decision rule.
pub fn optimal_full_multiwinner(inst: &DeterministicInstance, k: usize) -> Result<FullRuleOutcome> {
    optimal_full_multiwinner_with_limit(inst, k, DEFAULT_COMMITTEE_LIMIT)
}

pub fn optimal_full_multiwinner_with_limit(
    inst: &DeterministicInstance,
    k: usize,
    limit: u128,
) -> Result<FullRuleOutcome> {
    let (committee, _) = argmax_committee(inst.n_candidates(), k, limit, |s| {
        best_quota_rule(&approval_level_counts(inst, s)).map(|(_, v)| v)
    })?;
    let decision = optimal_decision_rule_for_committee(inst, &committee)?;
    FullRuleOutcome::evaluated(inst, committee, decision)
}

/// A rule electing a committee together with its decision rule.
pub trait FullMultiwinnerRule {
    fn elect(&self, inst: &DeterministicInstance, k: usize) -> Result<FullRuleOutcome>;
}

impl<F> FullMultiwinnerRule for F
where
    F: Fn(&DeterministicInstance, usize) -> Result<FullRuleOutcome>,
{
    fn elect(&self, inst: &DeterministicInstance, k: usize) -> Result<FullRuleOutcome> {
        self(inst, k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FullRule {
    Comb,
    MedianThenMajority,
    TopKThenRandomDictatorship,
    Optimal,
}

impl FullMultiwinnerRule for FullRule {
    fn elect(&self, inst: &DeterministicInstance, k: usize) -> Result<FullRuleOutcome> {
        match self {
            FullRule::Comb => comb(inst, k),
            FullRule::MedianThenMajority => median_then_majority(inst, k),
            FullRule::TopKThenRandomDictatorship => top_k_then_random_dictatorship(inst, k),
            FullRule::Optimal => optimal_full_multiwinner(inst, k),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    /// At least as good on every instance, strictly better on none.
    Weak,
    /// At least as good everywhere and strictly better somewhere.
    Strong,
    None,
}

/// Compares the totals of two full rules over `instances`, with tolerance
/// [`TIE_EPS`].
pub fn dominance_check(
    a: &dyn FullMultiwinnerRule,
    b: &dyn FullMultiwinnerRule,
    instances: &[DeterministicInstance],
    k: usize,
) -> Result<Dominance> {
    let mut strict = false;
    for inst in instances {
        let ta = a.elect(inst, k)?.total;
        let tb = b.elect(inst, k)?.total;
        if ta < tb - TIE_EPS {
            return Ok(Dominance::None);
        }
        strict |= ta > tb + TIE_EPS;
    }
    Ok(if strict {
        Dominance::Strong
    } else {
        Dominance::Weak
    })
}
