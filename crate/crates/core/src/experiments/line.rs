use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    acceptance_probability, in_pool, score_trial, CommitteeSpec, ExperimentConfig,
    ExperimentResults, IssueDraws, Members, Mode, TrialOutcome, TrialRecord,
};
use crate::error::{Error, Result};
use crate::owa::OwaVector;
use crate::profile::{Committee, ProfileKind, ScoreProfile};
use crate::rules::{owa_winner_sequential, top_k_winner};

/// Voters and candidates uniform on `[0, 1]`, one issue at each voter's
/// position.
///
/// Within a trial voters are ranked by position, and output point `r`
/// averages the voter of rank `r` over all trials: `x` is the mean
/// position, `satisfaction` the mean satisfaction.
pub fn run_line_experiment(
    config: &ExperimentConfig,
    threads: Option<usize>,
) -> Result<ExperimentResults> {
    if config.mode != Mode::Line {
        return Err(Error::Config(
            "run_line_experiment needs mode = \"line\"".into(),
        ));
    }
    config.validate(config.n_candidates)?;
    let n = config.n_voters;

    let trials: Vec<(Vec<f64>, TrialOutcome)> = in_pool(threads, || {
        (0..config.n_trials)
            .into_par_iter()
            .map(|t| run_trial(config, t as u64))
            .collect::<Result<Vec<_>>>()
    })??;

    let pairs = config.rules.len() * config.decision_rules.len();
    let mut x_sum = vec![0.0; n];
    let mut sat_sum = vec![vec![0.0; n]; pairs];
    let mut sat_count = vec![vec![0usize; n]; pairs];
    for (positions, outcome) in &trials {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| positions[a].total_cmp(&positions[b]).then(a.cmp(&b)));
        for (rank, &v) in order.iter().enumerate() {
            x_sum[rank] += positions[v];
            for (pair, per_voter) in outcome.iter().enumerate() {
                let (s, issues) = per_voter[v];
                if issues > 0 {
                    sat_sum[pair][rank] += s;
                    sat_count[pair][rank] += 1;
                }
            }
        }
    }

    let trials_f = config.n_trials as f64;
    let mut records = Vec::with_capacity(pairs * n);
    let mut pair = 0;
    for &rule in &config.rules {
        for &decision in &config.decision_rules {
            for rank in 0..n {
                let count = sat_count[pair][rank].max(1) as f64;
                records.push(TrialRecord {
                    x: x_sum[rank] / trials_f,
                    rule,
                    decision,
                    satisfaction: sat_sum[pair][rank] / count,
                });
            }
            pair += 1;
        }
    }
    Ok(ExperimentResults { records })
}

fn run_trial(config: &ExperimentConfig, trial: u64) -> Result<(Vec<f64>, TrialOutcome)> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(trial);
    let n = config.n_voters;
    let m = config.n_candidates;
    let [p_lo, p_hi] = config.p_range();

    let voters: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
    let candidates: Vec<f64> = (0..m).map(|_| rng.random::<f64>()).collect();
    let p: Vec<f64> = (0..n)
        .map(|_| p_lo + (p_hi - p_lo) * rng.random::<f64>())
        .collect();
    let mut preferences = Vec::with_capacity(n);
    let mut candidate_votes = Vec::with_capacity(n);
    for (i, &issue) in voters.iter().enumerate() {
        let pi = p[i];
        let prefs: Vec<bool> = voters
            .iter()
            .map(|&x| rng.random::<f64>() < acceptance_probability(pi, (issue - x).abs()))
            .collect();
        let votes: Vec<bool> = candidates
            .iter()
            .map(|&x| rng.random::<f64>() < acceptance_probability(pi, (issue - x).abs()))
            .collect();
        preferences.push(prefs);
        candidate_votes.push(votes);
    }
    let draws = IssueDraws {
        p,
        preferences,
        candidate_votes,
    };

    let scores: Vec<f64> = voters
        .iter()
        .flat_map(|&v| candidates.iter().map(move |&c| 1.0 - (v - c).abs()))
        .collect();
    let profile = ScoreProfile::new(n, m, ProfileKind::General, scores)?;
    let committees = config
        .rules
        .iter()
        .map(|&rule| line_committee(rule, &profile, &candidates, config.committee_size))
        .collect::<Result<Vec<_>>>()?;

    let outcome = score_trial(config, &draws, &committees, |i, v| {
        (voters[i] - voters[v]).abs()
    })?;
    Ok((voters, outcome))
}

fn line_committee(
    rule: CommitteeSpec,
    profile: &ScoreProfile,
    candidates: &[f64],
    k: usize,
) -> Result<Members> {
    Ok(match rule {
        CommitteeSpec::Topk => Members::Candidates(top_k_winner(profile, k)?.0),
        CommitteeSpec::SeqPav => {
            Members::Candidates(owa_winner_sequential(&OwaVector::pav(k)?, profile, k)?.0)
        }
        CommitteeSpec::SeqCc => Members::Candidates(
            owa_winner_sequential(&OwaVector::chamberlin_courant(k)?, profile, k)?.0,
        ),
        CommitteeSpec::SingleCentrist => {
            let (best, _) =
                candidates
                    .iter()
                    .enumerate()
                    .fold((0, f64::INFINITY), |(bi, bd), (c, &x)| {
                        let d = (x - 0.5).abs();
                        if d < bd {
                            (c, d)
                        } else {
                            (bi, bd)
                        }
                    });
            Members::Candidates(Committee::new(vec![best])?)
        }
        CommitteeSpec::DirectDemocracy => Members::Electorate,
    })
}
