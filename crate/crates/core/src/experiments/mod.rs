//! Seeded Monte-Carlo experiments: voters and candidates on the unit line,
//! and electorates read from ranked data.
//!
//! Every voter owns one issue. In each trial every voter and candidate
//! independently accepts issue `i` with probability
//! `clamp(1 - p_i * dist(i, x), 0, 1)`, with `p_i` drawn per issue; the
//! draw is the voter's preference and the candidate's vote. Each committee
//! then decides every issue, and a voter's satisfaction in the trial is the
//! expected fraction of their (significant) issues decided their way.
//!
//! The seed is the ChaCha key and trial `t` reads stream `t`, so trials are
//! independent of each other and of scheduling. Per-trial results are
//! reduced in trial order, and the output does not depend on the number of
//! worker threads.

mod config;
mod csv;
mod line;
mod preflib;

pub use config::{
    CommitteeSpec, DecisionSpec, ExperimentConfig, Mode, DEFAULT_INSIGNIFICANCE_BAND,
};
pub use csv::{emit_csv, to_csv, CSV_HEADER};
pub use line::run_line_experiment;
pub use preflib::{run_preflib_corpus, run_preflib_experiment};

use crate::decision::DecisionRule;
use crate::error::{Error, Result};
use crate::profile::Committee;

/// One output point of an experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    /// Voter position on the line, or the voter's fraction along the
    /// sorted satisfaction curve.
    pub x: f64,
    pub rule: CommitteeSpec,
    pub decision: DecisionSpec,
    pub satisfaction: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExperimentResults {
    /// Grouped by rule, then decision rule (both in config order), then
    /// ascending `x`.
    pub records: Vec<TrialRecord>,
}

impl ExperimentResults {
    /// The satisfaction series of one (rule, decision) pair, in `x` order.
    pub fn series(&self, rule: CommitteeSpec, decision: DecisionSpec) -> Vec<&TrialRecord> {
        self.records
            .iter()
            .filter(|r| r.rule == rule && r.decision == decision)
            .collect()
    }

    pub fn satisfactions(&self, rule: CommitteeSpec, decision: DecisionSpec) -> Vec<f64> {
        self.series(rule, decision)
            .iter()
            .map(|r| r.satisfaction)
            .collect()
    }
}

/// `clamp(1 - p * distance, 0, 1)`.
pub fn acceptance_probability(p: f64, distance: f64) -> f64 {
    (1.0 - p * distance).clamp(0.0, 1.0)
}

/// Sampled outcomes of one trial. Indexed by issue first.
#[derive(Debug, Clone, PartialEq)]
pub struct IssueDraws {
    /// The slope `p` of each issue.
    pub p: Vec<f64>,
    /// `preferences[i][v]`: voter `v` prefers Accept on issue `i`.
    pub preferences: Vec<Vec<bool>>,
    /// `candidate_votes[i][c]`: candidate `c` votes Accept on issue `i`.
    pub candidate_votes: Vec<Vec<bool>>,
}

impl IssueDraws {
    pub fn n_issues(&self) -> usize {
        self.p.len()
    }
}

/// Who sits on a simulated committee.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Members {
    Candidates(Committee),
    /// All voters, each voting their own preference.
    Electorate,
}

impl Members {
    pub fn size(&self, n_voters: usize) -> usize {
        match self {
            Members::Candidates(c) => c.len(),
            Members::Electorate => n_voters,
        }
    }
}

/// Probability that the committee accepts each issue.
pub fn accept_probabilities(
    draws: &IssueDraws,
    members: &Members,
    rule: &DecisionRule,
) -> Result<Vec<f64>> {
    let probs = rule.probs();
    (0..draws.n_issues())
        .map(|i| {
            let (size, accepts) = match members {
                Members::Candidates(c) => {
                    let votes = &draws.candidate_votes[i];
                    if let Some(&bad) = c.members().iter().find(|&&m| m >= votes.len()) {
                        return Err(Error::OutOfRange {
                            what: "candidate",
                            value: bad,
                            max: votes.len(),
                        });
                    }
                    (c.len(), c.members().iter().filter(|&&m| votes[m]).count())
                }
                Members::Electorate => {
                    let prefs = &draws.preferences[i];
                    (prefs.len(), prefs.iter().filter(|&&a| a).count())
                }
            };
            rule.ensure_size(size)?;
            Ok(probs[accepts])
        })
        .collect()
}

/// Per voter, the mean probability over significant issues that the
/// decision matches the voter's preference, with the number of significant
/// issues. `significant(i, v)` says whether issue `i` counts for voter `v`.
pub fn voter_satisfaction(
    draws: &IssueDraws,
    accept: &[f64],
    significant: impl Fn(usize, usize) -> bool,
) -> Vec<(f64, usize)> {
    let n_voters = draws.preferences.first().map_or(0, Vec::len);
    (0..n_voters)
        .map(|v| {
            let mut sum = 0.0;
            let mut count = 0;
            for (i, &a) in accept.iter().enumerate() {
                if significant(i, v) {
                    sum += if draws.preferences[i][v] { a } else { 1.0 - a };
                    count += 1;
                }
            }
            (if count > 0 { sum / count as f64 } else { 0.0 }, count)
        })
        .collect()
}

/// Whether `p * distance` misses the closed band.
fn is_significant(band: Option<[f64; 2]>, p: f64, distance: f64) -> bool {
    match band {
        Some([lo, hi]) => {
            let x = p * distance;
            !(lo <= x && x <= hi)
        }
        None => true,
    }
}

/// Per (rule, decision) pair in config order, per voter: satisfaction and
/// count of significant issues.
type TrialOutcome = Vec<Vec<(f64, usize)>>;

fn score_trial(
    config: &ExperimentConfig,
    draws: &IssueDraws,
    committees: &[Members],
    distance: impl Fn(usize, usize) -> f64,
) -> Result<TrialOutcome> {
    let n_voters = draws.preferences.first().map_or(0, Vec::len);
    let significant =
        |i: usize, v: usize| is_significant(config.insignificance_band, draws.p[i], distance(i, v));
    let mut out = Vec::with_capacity(committees.len() * config.decision_rules.len());
    for members in committees {
        for decision in &config.decision_rules {
            let rule = decision.build(members.size(n_voters))?;
            let accept = accept_probabilities(draws, members, &rule)?;
            out.push(voter_satisfaction(draws, &accept, significant));
        }
    }
    Ok(out)
}

/// Runs `f` on a dedicated pool of `threads` workers, or on the global
/// pool when `threads` is `None`.
fn in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(Error::Config("thread count must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Config(format!("cannot start thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}
