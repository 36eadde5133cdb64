//! The voting committee model.
//!
//! A committee of `K` candidates is elected from a score profile and then
//! decides a sequence of accept/reject issues with a (randomized) decision
//! rule. A voter's *ultimate satisfaction* is the probability that the
//! committee decides an issue the way the voter wants. This crate provides:
//!
//! - domain types for score profiles, committees and decision rules
//!   ([`profile`], [`decision`], [`owa`]);
//! - OWA-based multiwinner rules, exact and sequential ([`rules`]);
//! - exact evaluation of ultimate satisfaction and optimal committees
//!   ([`eval`]);
//! - constructors for OWA vectors and full multiwinner rules that are
//!   optimal for a given decision rule ([`optimal`]);
//! - a strict-order PrefLib reader and the rank-distance machinery
//!   ([`preflib`]);
//! - seeded Monte-Carlo experiments on the line and on ranked data
//!   ([`experiments`]).
//!
//! Candidates and voters are 0-based everywhere in the library.

pub mod decision;
pub mod enumerate;
pub mod error;
pub mod eval;
pub mod experiments;
pub mod fixtures;
pub mod fmt;
pub mod optimal;
pub mod owa;
pub mod preflib;
pub mod profile;
pub mod rules;

pub use decision::DecisionRule;
pub use error::{Error, Result};
pub use eval::EvalReport;
pub use optimal::FullRuleOutcome;
pub use owa::OwaVector;
pub use profile::{Alternative, Committee, DeterministicInstance, ProfileKind, ScoreProfile};

/// Absolute tolerance used when comparing objective values of committees
/// and decision rules. A candidate solution only replaces the incumbent if
/// it is better by more than this amount, which makes every argmax pick the
/// lexicographically first near-tied solution.
pub const TIE_EPS: f64 = 1e-9;
