//! Randomized decision rules of a `K`-member committee.
//!
//! A rule is stored as its full table: `probs[a]` is the probability that the
//! committee accepts an issue when `a` of its members vote accept.

use std::fmt;

use crate::error::{Error, Result};

/// Tolerance for the symmetry check `probs[a] + probs[K - a] = 1`.
pub const SYMMETRY_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct DecisionRule {
    probs: Vec<f64>,
    symmetric: bool,
}

impl DecisionRule {
    /// A rule from an explicit table of `K + 1` probabilities. The symmetry
    /// flag is derived from the table.
    pub fn from_probs(probs: Vec<f64>) -> Result<Self> {
        if probs.len() < 2 {
            return Err(Error::invalid(
                "decision rule",
                "needs K + 1 >= 2 probabilities",
            ));
        }
        if let Some((a, p)) = probs
            .iter()
            .enumerate()
            .find(|(_, p)| !(0.0..=1.0).contains(*p))
        {
            return Err(Error::invalid(
                "decision rule",
                format!("probs[{a}] = {p} is outside [0, 1]"),
            ));
        }
        let symmetric = is_symmetric(&probs);
        Ok(DecisionRule { probs, symmetric })
    }

    /// Accept iff a strict majority votes accept. `K` must be odd.
    pub fn majority(k: usize) -> Result<Self> {
        if k.is_multiple_of(2) {
            return Err(Error::invalid(
                "committee size",
                format!("majority needs an odd committee size, got {k}"),
            ));
        }
        let probs = (0..=k).map(|a| if 2 * a > k { 1.0 } else { 0.0 }).collect();
        Ok(DecisionRule {
            probs,
            symmetric: true,
        })
    }

    /// Majority that flips a fair coin on an exact tie. Defined for every `K`
    /// and equal to [`DecisionRule::majority`] for odd `K`.
    pub fn majority_with_coin_flip(k: usize) -> Result<Self> {
        check_size(k)?;
        let probs = (0..=k)
            .map(|a| match (2 * a).cmp(&k) {
                std::cmp::Ordering::Greater => 1.0,
                std::cmp::Ordering::Equal => 0.5,
                std::cmp::Ordering::Less => 0.0,
            })
            .collect();
        Ok(DecisionRule {
            probs,
            symmetric: true,
        })
    }

    /// A uniformly random member decides: `probs[a] = a / K`.
    pub fn random_dictatorship(k: usize) -> Result<Self> {
        check_size(k)?;
        let probs = (0..=k).map(|a| a as f64 / k as f64).collect();
        Ok(DecisionRule {
            probs,
            symmetric: true,
        })
    }

    /// Accept iff every member votes accept.
    pub fn unanimity(k: usize) -> Result<Self> {
        check_size(k)?;
        let probs = (0..=k).map(|a| if a == k { 1.0 } else { 0.0 }).collect();
        Ok(DecisionRule {
            probs,
            symmetric: k == 1,
        })
    }

    /// Symmetric monotone quota rule.
    ///
    /// Above the center (`a > K/2`) the rule accepts with probability 1 when
    /// `a >= t` and, with `half_plateau`, with probability 1/2 on
    /// `ceil((K+1)/2) <= a < t`. Without the plateau that band accepts with
    /// probability 1, so the rule coincides with majority (fair coin at an
    /// exact tie). For even `K` the center `a = K/2` is always 1/2 and the
    /// lower half mirrors the upper half. `t = K + 1` with the plateau gives
    /// the constant 1/2 rule.
    pub fn quota(k: usize, threshold: usize, half_plateau: bool) -> Result<Self> {
        check_size(k)?;
        if 2 * threshold <= k || threshold > k + 1 {
            return Err(Error::invalid(
                "quota threshold",
                format!("need K/2 < t <= K + 1, got t = {threshold} for K = {k}"),
            ));
        }
        let mut probs = vec![0.0; k + 1];
        for a in (0..=k).filter(|&a| 2 * a > k) {
            probs[a] = if a >= threshold || !half_plateau {
                1.0
            } else {
                0.5
            };
            probs[k - a] = 1.0 - probs[a];
        }
        if k.is_multiple_of(2) {
            probs[k / 2] = 0.5;
        }
        Ok(DecisionRule {
            probs,
            symmetric: true,
        })
    }

    /// Committee size `K`.
    pub fn k(&self) -> usize {
        self.probs.len() - 1
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn is_monotone(&self) -> bool {
        self.probs.windows(2).all(|w| w[1] >= w[0])
    }

    /// Probability of accepting given `accepts` accept-votes.
    pub fn decision_prob(&self, accepts: usize) -> Result<f64> {
        self.probs.get(accepts).copied().ok_or(Error::OutOfRange {
            what: "accept-vote count",
            value: accepts,
            max: self.k(),
        })
    }

    /// Linear objective `sum_a weights[a] * probs[a]`.
    pub fn dot(&self, weights: &[f64]) -> f64 {
        self.probs.iter().zip(weights).map(|(p, w)| p * w).sum()
    }

    pub(crate) fn ensure_size(&self, k: usize) -> Result<()> {
        if self.k() != k {
            return Err(Error::Dimension {
                what: "decision rule size",
                expected: k,
                got: self.k(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for DecisionRule {
    /// Space-separated probabilities with six decimals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.probs.iter().map(|&p| crate::fmt::real(p)).collect();
        f.write_str(&parts.join(" "))
    }
}

fn is_symmetric(probs: &[f64]) -> bool {
    let k = probs.len() - 1;
    (0..=k).all(|a| (probs[a] + probs[k - a] - 1.0).abs() <= SYMMETRY_EPS)
}

fn check_size(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::invalid("committee size", "K must be at least 1"));
    }
    Ok(())
}

/// The decision rules that have names on the command line and in configs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedDecision {
    Majority,
    RandomDictatorship,
    Unanimity,
    /// Quota rule with threshold `t` and the 1/2 plateau.
    Quota(usize),
}

impl NamedDecision {
    pub fn build(self, k: usize) -> Result<DecisionRule> {
        match self {
            NamedDecision::Majority => DecisionRule::majority(k),
            NamedDecision::RandomDictatorship => DecisionRule::random_dictatorship(k),
            NamedDecision::Unanimity => DecisionRule::unanimity(k),
            NamedDecision::Quota(t) => DecisionRule::quota(k, t, true),
        }
    }

    /// The name of `rule` if its table equals majority, random
    /// dictatorship or unanimity of the same size.
    pub fn identify(rule: &DecisionRule) -> Option<NamedDecision> {
        [
            NamedDecision::Majority,
            NamedDecision::RandomDictatorship,
            NamedDecision::Unanimity,
        ]
        .into_iter()
        .find(|named| {
            named
                .build(rule.k())
                .is_ok_and(|r| r.probs() == rule.probs())
        })
    }
}

impl std::str::FromStr for NamedDecision {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "majority" => Ok(NamedDecision::Majority),
            "rd" | "random-dictatorship" => Ok(NamedDecision::RandomDictatorship),
            "unanimity" => Ok(NamedDecision::Unanimity),
            _ => match s.strip_prefix("quota:") {
                Some(t) => t.parse().map(NamedDecision::Quota).map_err(|_| {
                    Error::invalid("decision rule", format!("bad quota threshold `{t}`"))
                }),
                None => Err(Error::invalid(
                    "decision rule",
                    format!("unknown rule `{s}` (majority, rd, unanimity, quota:t)"),
                )),
            },
        }
    }
}

impl fmt::Display for NamedDecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedDecision::Majority => f.write_str("majority"),
            NamedDecision::RandomDictatorship => f.write_str("random-dictatorship"),
            NamedDecision::Unanimity => f.write_str("unanimity"),
            NamedDecision::Quota(t) => write!(f, "quota:{t}"),
        }
    }
}
