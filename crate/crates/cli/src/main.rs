//! `committee`: command-line front end for the voting committee model.
//!
//! Candidates and voters are 1-based on the command line. Results go to
//! standard output as CSV; failures print one diagnostic line on standard
//! error and exit with 1 (domain errors) or 2 (usage errors).

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use committee_model::decision::NamedDecision;
use committee_model::eval::{
    eval_deterministic, eval_probabilistic, optimal_committee, Electorate,
};
use committee_model::experiments::{
    run_line_experiment, run_preflib_corpus, to_csv, ExperimentConfig, Mode,
    DEFAULT_INSIGNIFICANCE_BAND,
};
use committee_model::fmt::real;
use committee_model::optimal::{comb, optimal_full_multiwinner};
use committee_model::owa::NamedRule;
use committee_model::preflib::{borda_scores, filter_dataset, load_dir, parse_preflib};
use committee_model::profile::parse_profile;
use committee_model::rules::{owa_winner_exact, owa_winner_sequential};
use committee_model::{
    Committee, DecisionRule, DeterministicInstance, FullRuleOutcome, ScoreProfile,
};

#[derive(Parser)]
#[command(
    name = "committee",
    version,
    about = "Elect committees and measure how well they decide issues"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Elect a committee with an OWA rule.
    Winners {
        #[arg(long)]
        profile: PathBuf,
        /// topk, cc, pav or kmedian:j
        #[arg(long)]
        rule: NamedRule,
        #[arg(long)]
        k: usize,
        /// Greedy sequential variant instead of exhaustive search.
        #[arg(long)]
        sequential: bool,
    },
    /// Ultimate satisfaction of every voter for a given committee.
    Evaluate {
        #[arg(long)]
        profile: PathBuf,
        /// Comma-separated 1-based candidate ids.
        #[arg(long, value_delimiter = ',', required = true)]
        committee: Vec<usize>,
        #[command(flatten)]
        decision: DecisionArgs,
    },
    /// Committee of size k with maximal total ultimate satisfaction.
    OptimalCommittee {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        decision: DecisionArgs,
    },
    /// Committee and quota decision rule jointly optimal for a
    /// deterministic instance.
    OptimalFull {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Better of (median committee, majority) and (top-K, random
    /// dictatorship) on a deterministic instance.
    Comb {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Monte-Carlo simulation with voters and candidates on a line.
    SimulateLine {
        #[arg(long)]
        voters: Option<usize>,
        #[arg(long)]
        candidates: Option<usize>,
        /// Start from the full-scale defaults (500 voters and candidates,
        /// K = 51, 500 trials).
        #[arg(long)]
        full_scale: bool,
        #[command(flatten)]
        sim: SimArgs,
    },
    /// Monte-Carlo simulation on every strict-order `.soc` file in a
    /// directory.
    SimulatePreflib {
        #[arg(long)]
        dir: PathBuf,
        #[command(flatten)]
        sim: SimArgs,
    },
    /// Convert a strict-order PrefLib file to a normalized Borda profile.
    ParsePreflib {
        #[arg(long)]
        file: PathBuf,
        /// Write to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct DecisionArgs {
    /// majority, rd, unanimity or quota:t
    #[arg(long)]
    decision: NamedDecision,
    #[arg(long, value_enum, default_value_t = Model::Det)]
    model: Model,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    /// Approval profile with a preferred alternative per voter.
    Det,
    /// Scores are probabilities that each candidate votes the voter's way.
    Prob,
}

#[derive(Args)]
struct SimArgs {
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Ignore issues whose `p * distance` falls in [0.4, 0.6].
    #[arg(long)]
    insignificant: bool,
    /// TOML experiment config; flags given on the command line override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Worker threads; the output does not depend on this.
    #[arg(long)]
    threads: Option<usize>,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl SimArgs {
    fn config(&self, defaults: ExperimentConfig) -> Result<ExperimentConfig> {
        let mut config = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => defaults,
        };
        if let Some(k) = self.k {
            config.committee_size = k;
        }
        if let Some(t) = self.trials {
            config.n_trials = t;
        }
        if let Some(s) = self.seed {
            config.seed = s;
        }
        if self.insignificant && config.insignificance_band.is_none() {
            config.insignificance_band = Some(DEFAULT_INSIGNIFICANCE_BAND);
        }
        Ok(config)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code().clamp(0, 255) as u8);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Winners {
            profile,
            rule,
            k,
            sequential,
        } => {
            let profile = read_profile(&profile)?;
            let alpha = rule.weights(k)?;
            let (committee, total) = if sequential {
                owa_winner_sequential(&alpha, &profile, k)?
            } else {
                owa_winner_exact(&alpha, &profile, k)?
            };
            print(
                format!("committee,total\n{committee},{}\n", real(total)),
                None,
            )
        }
        Command::Evaluate {
            profile,
            committee,
            decision,
        } => {
            let text = read(&profile)?;
            let committee = one_based_committee(&committee)?;
            let rule = decision.decision.build(committee.len())?;
            let report = match decision.model {
                Model::Det => {
                    eval_deterministic(&DeterministicInstance::parse(&text)?, &committee, &rule)?
                }
                Model::Prob => eval_probabilistic(&parse_profile(&text)?.0, &committee, &rule)?,
            };
            let mut out = String::from("voter,satisfaction\n");
            for (i, s) in report.per_voter.iter().enumerate() {
                let _ = writeln!(out, "{},{}", i + 1, real(*s));
            }
            let _ = writeln!(out, "total,{}", real(report.total));
            print(out, None)
        }
        Command::OptimalCommittee {
            profile,
            k,
            decision,
        } => {
            let text = read(&profile)?;
            let rule = decision.decision.build(k)?;
            let (committee, report) = match decision.model {
                Model::Det => {
                    let inst = DeterministicInstance::parse(&text)?;
                    optimal_committee(Electorate::Deterministic(&inst), k, &rule)?
                }
                Model::Prob => {
                    let profile = parse_profile(&text)?.0;
                    optimal_committee(Electorate::Probabilistic(&profile), k, &rule)?
                }
            };
            print(
                format!("committee,total\n{committee},{}\n", real(report.total)),
                None,
            )
        }
        Command::OptimalFull { profile, k } => {
            let inst = DeterministicInstance::parse(&read(&profile)?)?;
            print(full_rule_csv(&optimal_full_multiwinner(&inst, k)?), None)
        }
        Command::Comb { profile, k } => {
            let inst = DeterministicInstance::parse(&read(&profile)?)?;
            print(full_rule_csv(&comb(&inst, k)?), None)
        }
        Command::SimulateLine {
            voters,
            candidates,
            full_scale,
            sim,
        } => {
            let defaults = if full_scale {
                ExperimentConfig::full_line()
            } else {
                ExperimentConfig::desk_line()
            };
            let mut config = sim.config(defaults)?;
            if let Some(n) = voters {
                config.n_voters = n;
            }
            if let Some(m) = candidates {
                config.n_candidates = m;
            }
            if config.mode != Mode::Line {
                bail!("config mode must be \"line\" for simulate-line");
            }
            let results = run_line_experiment(&config, sim.threads)?;
            print(to_csv(&results), sim.out.as_deref())
        }
        Command::SimulatePreflib { dir, sim } => {
            let config = sim.config(ExperimentConfig::desk_preflib())?;
            if config.mode != Mode::Preflib {
                bail!("config mode must be \"preflib\" for simulate-preflib");
            }
            let mut datasets = Vec::new();
            for (path, parsed) in load_dir(&dir)? {
                let profile = parsed.with_context(|| format!("{}", path.display()))?;
                if filter_dataset(&profile) {
                    datasets.push(profile);
                } else {
                    eprintln!(
                        "skipping {}: {} voters, {} candidates",
                        path.display(),
                        profile.n_voters(),
                        profile.n_candidates()
                    );
                }
            }
            if datasets.is_empty() {
                bail!(
                    "no dataset in {} has at least 15 voters and 20 candidates",
                    dir.display()
                );
            }
            let results = run_preflib_corpus(&config, &datasets, sim.threads)?;
            print(to_csv(&results), sim.out.as_deref())
        }
        Command::ParsePreflib { file, out } => {
            let ranks =
                parse_preflib(&read(&file)?).with_context(|| format!("{}", file.display()))?;
            print(borda_scores(&ranks).to_text(None), out.as_deref())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_profile(path: &Path) -> Result<ScoreProfile> {
    let (profile, _) =
        parse_profile(&read(path)?).with_context(|| format!("{}", path.display()))?;
    Ok(profile)
}

fn one_based_committee(ids: &[usize]) -> Result<Committee> {
    if ids.contains(&0) {
        bail!("candidate ids are 1-based");
    }
    Ok(Committee::new(ids.iter().map(|c| c - 1).collect())?)
}

fn decision_label(rule: &DecisionRule) -> String {
    match NamedDecision::identify(rule) {
        Some(named) => named.to_string(),
        None => rule.to_string(),
    }
}

fn full_rule_csv(outcome: &FullRuleOutcome) -> String {
    format!(
        "committee,decision,total\n{},{},{}\n",
        outcome.committee,
        decision_label(&outcome.decision),
        real(outcome.total)
    )
}

fn print(text: String, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}
