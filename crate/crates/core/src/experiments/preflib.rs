use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    acceptance_probability, in_pool, score_trial, CommitteeSpec, ExperimentConfig,
    ExperimentResults, IssueDraws, Members, Mode, TrialOutcome, TrialRecord,
};
use crate::error::{Error, Result};
use crate::owa::OwaVector;
use crate::preflib::{borda_scores, filter_dataset, issue_distances, IssueDistances, RankProfile};
use crate::profile::ScoreProfile;
use crate::rules::{owa_winner_sequential, top_k_winner};

/// Sorted satisfaction curves on one ranked dataset. Committees are elected
/// once from normalized Borda scores; the single centrist is the Borda
/// winner. Each voter's satisfaction is averaged over trials, then every
/// (rule, decision) curve is sorted ascending with `x = (r + 1) / n` for
/// the voter at sorted position `r`.
pub fn run_preflib_experiment(
    config: &ExperimentConfig,
    profile: &RankProfile,
    threads: Option<usize>,
) -> Result<ExperimentResults> {
    run_preflib_corpus(config, std::slice::from_ref(profile), threads)
}

/// Like [`run_preflib_experiment`], pooling the voters of every dataset
/// into one curve per (rule, decision). Trial `t` of dataset `d` uses
/// stream `d * n_trials + t`.
pub fn run_preflib_corpus(
    config: &ExperimentConfig,
    profiles: &[RankProfile],
    threads: Option<usize>,
) -> Result<ExperimentResults> {
    if config.mode != Mode::Preflib {
        return Err(Error::Config(
            "run_preflib_experiment needs mode = \"preflib\"".into(),
        ));
    }
    if profiles.is_empty() {
        return Err(Error::invalid("dataset", "no datasets given"));
    }
    for p in profiles {
        if !filter_dataset(p) {
            return Err(Error::invalid(
                "dataset",
                format!(
                    "{} voters and {} candidates is below the minimum of 15 voters and 20 candidates",
                    p.n_voters(),
                    p.n_candidates()
                ),
            ));
        }
        config.validate(p.n_candidates())?;
    }

    let pairs = config.rules.len() * config.decision_rules.len();
    let mut pooled: Vec<Vec<f64>> = vec![Vec::new(); pairs];
    for (d, profile) in profiles.iter().enumerate() {
        let first_stream = (d * config.n_trials) as u64;
        let means = in_pool(threads, || dataset_means(config, profile, first_stream))??;
        for (curve, m) in pooled.iter_mut().zip(means) {
            curve.extend(m);
        }
    }

    let mut records = Vec::new();
    let mut pair = 0;
    for &rule in &config.rules {
        for &decision in &config.decision_rules {
            let curve = &mut pooled[pair];
            curve.sort_by(f64::total_cmp);
            let n = curve.len() as f64;
            records.extend(curve.iter().enumerate().map(|(r, &s)| TrialRecord {
                x: (r + 1) as f64 / n,
                rule,
                decision,
                satisfaction: s,
            }));
            pair += 1;
        }
    }
    Ok(ExperimentResults { records })
}

/// Per (rule, decision), per voter: mean satisfaction over trials.
fn dataset_means(
    config: &ExperimentConfig,
    profile: &RankProfile,
    first_stream: u64,
) -> Result<Vec<Vec<f64>>> {
    let n = profile.n_voters();
    let dist = issue_distances(profile);
    let borda = borda_scores(profile);
    let committees = config
        .rules
        .iter()
        .map(|&rule| ranked_committee(rule, &borda, config.committee_size))
        .collect::<Result<Vec<_>>>()?;

    let trials: Vec<TrialOutcome> = (0..config.n_trials)
        .into_par_iter()
        .map(|t| {
            let draws = sample(config, &dist, first_stream + t as u64);
            score_trial(config, &draws, &committees, |i, v| dist.voter[i][v])
        })
        .collect::<Result<_>>()?;

    let pairs = config.rules.len() * config.decision_rules.len();
    let mut sums = vec![vec![0.0; n]; pairs];
    let mut counts = vec![vec![0usize; n]; pairs];
    for outcome in &trials {
        for (pair, per_voter) in outcome.iter().enumerate() {
            for (v, &(s, issues)) in per_voter.iter().enumerate() {
                if issues > 0 {
                    sums[pair][v] += s;
                    counts[pair][v] += 1;
                }
            }
        }
    }
    Ok(sums
        .into_iter()
        .zip(counts)
        .map(|(s, c)| {
            s.iter()
                .zip(&c)
                .map(|(s, &c)| s / c.max(1) as f64)
                .collect()
        })
        .collect())
}

fn sample(config: &ExperimentConfig, dist: &IssueDistances, stream: u64) -> IssueDraws {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(stream);
    let [p_lo, p_hi] = config.p_range();
    let n = dist.voter.len();
    let p: Vec<f64> = (0..n)
        .map(|_| p_lo + (p_hi - p_lo) * rng.random::<f64>())
        .collect();
    let mut preferences = Vec::with_capacity(n);
    let mut candidate_votes = Vec::with_capacity(n);
    for ((&pi, voter_row), cand_row) in p.iter().zip(&dist.voter).zip(&dist.candidate) {
        let prefs: Vec<bool> = voter_row
            .iter()
            .map(|&d| rng.random::<f64>() < acceptance_probability(pi, d))
            .collect();
        let votes: Vec<bool> = cand_row
            .iter()
            .map(|&d| rng.random::<f64>() < acceptance_probability(pi, d))
            .collect();
        preferences.push(prefs);
        candidate_votes.push(votes);
    }
    IssueDraws {
        p,
        preferences,
        candidate_votes,
    }
}

fn ranked_committee(rule: CommitteeSpec, borda: &ScoreProfile, k: usize) -> Result<Members> {
    Ok(match rule {
        CommitteeSpec::Topk => Members::Candidates(top_k_winner(borda, k)?.0),
        CommitteeSpec::SeqPav => {
            Members::Candidates(owa_winner_sequential(&OwaVector::pav(k)?, borda, k)?.0)
        }
        CommitteeSpec::SeqCc => Members::Candidates(
            owa_winner_sequential(&OwaVector::chamberlin_courant(k)?, borda, k)?.0,
        ),
        CommitteeSpec::SingleCentrist => Members::Candidates(top_k_winner(borda, 1)?.0),
        CommitteeSpec::DirectDemocracy => Members::Electorate,
    })
}
