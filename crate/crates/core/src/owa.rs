//! Ordered weighted average (OWA) weight vectors.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Weights `alpha_1..alpha_K` applied to a voter's committee-member scores
/// sorted from best to worst.
#[derive(Debug, Clone, PartialEq)]
pub struct OwaVector {
    weights: Vec<f64>,
}

impl OwaVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::invalid("OWA vector", "needs at least one weight"));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite()) {
            return Err(Error::invalid(
                "OWA vector",
                format!("weight {w} is not finite"),
            ));
        }
        Ok(OwaVector { weights })
    }

    /// All ones: the top-K (K-Borda for Borda scores) rule.
    pub fn top_k(k: usize) -> Result<Self> {
        Self::new(vec![1.0; k])
    }

    /// Chamberlin--Courant: only the best member counts.
    pub fn chamberlin_courant(k: usize) -> Result<Self> {
        Self::k_median(1, k)
    }

    /// Proportional approval voting: harmonic weights.
    pub fn pav(k: usize) -> Result<Self> {
        Self::new((1..=k).map(|j| 1.0 / j as f64).collect())
    }

    /// Only the `position`-th best member counts (1-based).
    pub fn k_median(position: usize, k: usize) -> Result<Self> {
        if position == 0 || position > k {
            return Err(Error::invalid(
                "k-median position",
                format!("need 1 <= k <= K, got k = {position}, K = {k}"),
            ));
        }
        let mut w = vec![0.0; k];
        w[position - 1] = 1.0;
        Self::new(w)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Named OWA rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedRule {
    TopK,
    ChamberlinCourant,
    Pav,
    /// `k`-median, 1-based position.
    KMedian(usize),
}

impl NamedRule {
    pub fn weights(self, k: usize) -> Result<OwaVector> {
        match self {
            NamedRule::TopK => OwaVector::top_k(k),
            NamedRule::ChamberlinCourant => OwaVector::chamberlin_courant(k),
            NamedRule::Pav => OwaVector::pav(k),
            NamedRule::KMedian(pos) => OwaVector::k_median(pos, k),
        }
    }
}

/// Shorthand for [`NamedRule::weights`].
pub fn named_rule(name: NamedRule, k: usize) -> Result<OwaVector> {
    name.weights(k)
}

impl FromStr for NamedRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "topk" => Ok(NamedRule::TopK),
            "cc" => Ok(NamedRule::ChamberlinCourant),
            "pav" => Ok(NamedRule::Pav),
            _ => s
                .strip_prefix("kmedian:")
                .and_then(|k| k.parse().ok())
                .map(NamedRule::KMedian)
                .ok_or_else(|| {
                    Error::invalid(
                        "rule",
                        format!("unknown rule `{s}` (topk, cc, pav, kmedian:k)"),
                    )
                }),
        }
    }
}

impl fmt::Display for NamedRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedRule::TopK => f.write_str("topk"),
            NamedRule::ChamberlinCourant => f.write_str("cc"),
            NamedRule::Pav => f.write_str("pav"),
            NamedRule::KMedian(k) => write!(f, "kmedian:{k}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_vectors() {
        assert_eq!(
            named_rule(NamedRule::Pav, 3).unwrap().weights(),
            &[1.0, 0.5, 1.0 / 3.0]
        );
        assert_eq!(
            named_rule(NamedRule::ChamberlinCourant, 4)
                .unwrap()
                .weights(),
            &[1.0, 0.0, 0.0, 0.0]
        );
        assert_eq!(
            named_rule(NamedRule::KMedian(2), 3).unwrap().weights(),
            &[0.0, 1.0, 0.0]
        );
        assert_eq!(
            named_rule(NamedRule::TopK, 2).unwrap().weights(),
            &[1.0, 1.0]
        );
        assert!(named_rule(NamedRule::KMedian(4), 3).is_err());
        assert!(named_rule(NamedRule::KMedian(0), 3).is_err());
    }

    #[test]
    fn parse_names() {
        assert_eq!(
            "kmedian:2".parse::<NamedRule>().unwrap(),
            NamedRule::KMedian(2)
        );
        assert_eq!(
            "cc".parse::<NamedRule>().unwrap(),
            NamedRule::ChamberlinCourant
        );
        assert!("kmedian".parse::<NamedRule>().is_err());
    }
}
