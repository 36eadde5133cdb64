use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::decision::DecisionRule;
use crate::error::{Error, Result};

/// Committees built in every trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommitteeSpec {
    /// The `K` candidates with the highest total score.
    Topk,
    /// Sequential PAV.
    SeqPav,
    /// Sequential Chamberlin-Courant.
    SeqCc,
    /// One candidate: nearest to the middle of the line, or the top-1
    /// winner on ranked data. Decides with `K = 1` rules.
    SingleCentrist,
    /// Every voter is a member and votes their own preference.
    DirectDemocracy,
}

impl CommitteeSpec {
    pub const ALL: [CommitteeSpec; 5] = [
        CommitteeSpec::Topk,
        CommitteeSpec::SeqPav,
        CommitteeSpec::SeqCc,
        CommitteeSpec::SingleCentrist,
        CommitteeSpec::DirectDemocracy,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CommitteeSpec::Topk => "topk",
            CommitteeSpec::SeqPav => "seq-pav",
            CommitteeSpec::SeqCc => "seq-cc",
            CommitteeSpec::SingleCentrist => "single-centrist",
            CommitteeSpec::DirectDemocracy => "direct-democracy",
        }
    }
}

impl fmt::Display for CommitteeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CommitteeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CommitteeSpec::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::invalid("committee rule", format!("unknown rule `{s}`")))
    }
}

/// Decision rules used by the simulated committees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecisionSpec {
    Majority,
    RandomDictatorship,
}

impl DecisionSpec {
    pub const ALL: [DecisionSpec; 2] = [DecisionSpec::Majority, DecisionSpec::RandomDictatorship];

    pub fn as_str(self) -> &'static str {
        match self {
            DecisionSpec::Majority => "majority",
            DecisionSpec::RandomDictatorship => "random-dictatorship",
        }
    }

    /// The rule for a committee of `k` members. Majority flips a fair coin
    /// on an exact tie, which only arises for even `k`.
    pub fn build(self, k: usize) -> Result<DecisionRule> {
        match self {
            DecisionSpec::Majority => DecisionRule::majority_with_coin_flip(k),
            DecisionSpec::RandomDictatorship => DecisionRule::random_dictatorship(k),
        }
    }
}

impl fmt::Display for DecisionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DecisionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "majority" => Ok(DecisionSpec::Majority),
            "random-dictatorship" | "rd" => Ok(DecisionSpec::RandomDictatorship),
            _ => Err(Error::invalid(
                "decision rule",
                format!("unknown rule `{s}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Line,
    Preflib,
}

impl Mode {
    pub fn default_p_range(self) -> [f64; 2] {
        match self {
            Mode::Line => [1.5, 2.5],
            Mode::Preflib => [0.0, 3.0],
        }
    }
}

/// Monte-Carlo experiment parameters. Loadable from TOML; omitted fields
/// take the desk-scale line defaults, and an omitted `p_range` takes the
/// default of the mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub mode: Mode,
    /// Line mode only; ranked data fixes its own electorate.
    pub n_voters: usize,
    pub n_candidates: usize,
    pub committee_size: usize,
    pub n_trials: usize,
    pub seed: u64,
    pub p_range: Option<[f64; 2]>,
    /// Issue `i` is ignored for voter `v` when `p * dist(i, v)` falls in
    /// this closed interval.
    pub insignificance_band: Option<[f64; 2]>,
    pub rules: Vec<CommitteeSpec>,
    pub decision_rules: Vec<DecisionSpec>,
}

/// Band used by the `--insignificant` variant.
pub const DEFAULT_INSIGNIFICANCE_BAND: [f64; 2] = [0.4, 0.6];

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig::desk_line()
    }
}

impl ExperimentConfig {
    /// `n = m = 100`, `K = 11`, 200 trials.
    pub fn desk_line() -> Self {
        ExperimentConfig {
            mode: Mode::Line,
            n_voters: 100,
            n_candidates: 100,
            committee_size: 11,
            n_trials: 200,
            seed: 0,
            p_range: None,
            insignificance_band: None,
            rules: CommitteeSpec::ALL.to_vec(),
            decision_rules: DecisionSpec::ALL.to_vec(),
        }
    }

    /// `n = m = 500`, `K = 51`, 500 trials.
    pub fn full_line() -> Self {
        ExperimentConfig {
            n_voters: 500,
            n_candidates: 500,
            committee_size: 51,
            n_trials: 500,
            ..ExperimentConfig::desk_line()
        }
    }

    /// `K = 11`, 10 trials per dataset.
    pub fn desk_preflib() -> Self {
        ExperimentConfig {
            mode: Mode::Preflib,
            n_trials: 10,
            ..ExperimentConfig::desk_line()
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let config: ExperimentConfig =
            toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn p_range(&self) -> [f64; 2] {
        self.p_range.unwrap_or_else(|| self.mode.default_p_range())
    }

    /// Checks everything that does not depend on the data. `n_candidates`
    /// is the candidate count of the electorate actually used.
    pub fn validate(&self, n_candidates: usize) -> Result<()> {
        let k = self.committee_size;
        if k == 0 {
            return Err(Error::Config("committee_size must be at least 1".into()));
        }
        if k > n_candidates {
            return Err(Error::Config(format!(
                "committee_size {k} exceeds the {n_candidates} candidates"
            )));
        }
        let needs_k = self.rules.iter().any(|r| {
            matches!(
                r,
                CommitteeSpec::Topk | CommitteeSpec::SeqPav | CommitteeSpec::SeqCc
            )
        });
        if needs_k && k.is_multiple_of(2) && self.decision_rules.contains(&DecisionSpec::Majority) {
            return Err(Error::Config(format!(
                "committee_size must be odd under majority, got {k}"
            )));
        }
        if self.n_trials == 0 {
            return Err(Error::Config("n_trials must be at least 1".into()));
        }
        if self.rules.is_empty() || self.decision_rules.is_empty() {
            return Err(Error::Config(
                "rules and decision_rules must be nonempty".into(),
            ));
        }
        let [lo, hi] = self.p_range();
        if !(lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo <= hi) {
            return Err(Error::Config(format!("invalid p_range [{lo}, {hi}]")));
        }
        if let Some([a, b]) = self.insignificance_band {
            if !(a.is_finite() && b.is_finite() && a <= b) {
                return Err(Error::Config(format!(
                    "invalid insignificance_band [{a}, {b}]"
                )));
            }
        }
        if self.mode == Mode::Line && self.n_voters == 0 {
            return Err(Error::Config("n_voters must be at least 1".into()));
        }
        Ok(())
    }
}
