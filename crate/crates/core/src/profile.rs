//! Score profiles, committees and single-issue deterministic instances.
//!
//! Text format (one profile per file):
//!
//! ```text
//! n m kind            # kind is approval, borda or general
//! s11 s12 ... s1m     # n rows of m scores in [0, 1]
//! ...
//! A R A ...           # optional: the preferred alternative of each voter
//! ```
//!
//! Blank lines and everything after a `#` are ignored.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::{Error, Result};

const BORDA_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProfileKind {
    /// Scores in `{0, 1}`.
    Approval,
    /// Each voter's scores are a permutation of `{0, 1/(m-1), ..., 1}`.
    Borda,
    /// Arbitrary scores in `[0, 1]`.
    General,
}

impl ProfileKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ProfileKind::Approval => "approval",
            ProfileKind::Borda => "borda",
            ProfileKind::General => "general",
        }
    }
}

impl fmt::Display for ProfileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProfileKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "approval" => Ok(ProfileKind::Approval),
            "borda" => Ok(ProfileKind::Borda),
            "general" => Ok(ProfileKind::General),
            other => Err(Error::invalid(
                "profile kind",
                format!("unknown kind `{other}`"),
            )),
        }
    }
}

/// An `n x m` matrix of scores `u[i][c]` in `[0, 1]`.
///
/// The same matrix doubles as the matrix of representation probabilities
/// `p[i][c]` in the probabilistic model.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreProfile {
    n_voters: usize,
    n_candidates: usize,
    kind: ProfileKind,
    scores: Vec<f64>,
}

impl ScoreProfile {
    /// Builds a profile from row-major scores, validating them against `kind`.
    pub fn new(
        n_voters: usize,
        n_candidates: usize,
        kind: ProfileKind,
        scores: Vec<f64>,
    ) -> Result<Self> {
        if scores.len() != n_voters * n_candidates {
            return Err(Error::Dimension {
                what: "score matrix",
                expected: n_voters * n_candidates,
                got: scores.len(),
            });
        }
        let profile = ScoreProfile {
            n_voters,
            n_candidates,
            kind,
            scores,
        };
        profile.validate()?;
        Ok(profile)
    }

    pub fn from_rows(kind: ProfileKind, rows: &[Vec<f64>]) -> Result<Self> {
        let m = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != m) {
            return Err(Error::Dimension {
                what: "profile row",
                expected: m,
                got: bad.len(),
            });
        }
        Self::new(rows.len(), m, kind, rows.concat())
    }

    /// Approval profile from boolean rows.
    pub fn approval(rows: &[Vec<bool>]) -> Result<Self> {
        let rows: Vec<Vec<f64>> = rows
            .iter()
            .map(|r| r.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect())
            .collect();
        Self::from_rows(ProfileKind::Approval, &rows)
    }

    fn validate(&self) -> Result<()> {
        for (idx, &s) in self.scores.iter().enumerate() {
            let (i, c) = (
                idx / self.n_candidates.max(1),
                idx % self.n_candidates.max(1),
            );
            if !(0.0..=1.0).contains(&s) {
                return Err(Error::invalid(
                    "score",
                    format!("u[{i}][{c}] = {s} is outside [0, 1]"),
                ));
            }
            if self.kind == ProfileKind::Approval && s != 0.0 && s != 1.0 {
                return Err(Error::invalid(
                    "score",
                    format!("approval score u[{i}][{c}] = {s} is not 0 or 1"),
                ));
            }
        }
        if self.kind == ProfileKind::Borda {
            let m = self.n_candidates;
            for i in 0..self.n_voters {
                let mut row = self.row(i).to_vec();
                row.sort_by(f64::total_cmp);
                let ok = row.iter().enumerate().all(|(r, &s)| {
                    let expected = if m > 1 {
                        r as f64 / (m - 1) as f64
                    } else {
                        1.0
                    };
                    (s - expected).abs() <= BORDA_EPS
                });
                if !ok {
                    return Err(Error::invalid(
                        "score",
                        format!("voter {i} does not have normalized Borda scores"),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn n_voters(&self) -> usize {
        self.n_voters
    }

    pub fn n_candidates(&self) -> usize {
        self.n_candidates
    }

    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    #[inline]
    pub fn score(&self, voter: usize, candidate: usize) -> f64 {
        self.scores[voter * self.n_candidates + candidate]
    }

    #[inline]
    pub fn row(&self, voter: usize) -> &[f64] {
        let m = self.n_candidates;
        &self.scores[voter * m..(voter + 1) * m]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        (0..self.n_voters).map(move |i| self.row(i))
    }

    /// Total score of every candidate.
    pub fn column_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.n_candidates];
        for row in self.rows() {
            for (acc, &s) in sums.iter_mut().zip(row) {
                *acc += s;
            }
        }
        sums
    }

    /// Same profile with candidate columns reordered: column `c` of the
    /// result is column `perm[c]` of `self`.
    pub fn permute_candidates(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n_candidates {
            return Err(Error::Dimension {
                what: "permutation",
                expected: self.n_candidates,
                got: perm.len(),
            });
        }
        let scores = self
            .rows()
            .flat_map(|row| perm.iter().map(move |&c| row[c]))
            .collect();
        Self::new(self.n_voters, self.n_candidates, self.kind, scores)
    }

    fn ensure_voter(&self, voter: usize) -> Result<()> {
        if voter >= self.n_voters {
            return Err(Error::OutOfRange {
                what: "voter",
                value: voter,
                max: self.n_voters.saturating_sub(1),
            });
        }
        Ok(())
    }

    pub(crate) fn check_voter(&self, voter: usize) -> Result<()> {
        self.ensure_voter(voter)
    }

    pub(crate) fn check_committee(&self, committee: &Committee) -> Result<()> {
        match committee.members().last() {
            Some(&c) if c >= self.n_candidates => Err(Error::OutOfRange {
                what: "committee member",
                value: c,
                max: self.n_candidates.saturating_sub(1),
            }),
            _ => Ok(()),
        }
    }

    /// Serializes the profile, optionally followed by a row of preferred
    /// alternatives.
    pub fn to_text(&self, preferred: Option<&[Alternative]>) -> String {
        let mut out = format!("{} {} {}\n", self.n_voters, self.n_candidates, self.kind);
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|s| s.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        if let Some(pref) = preferred {
            let line: Vec<&str> = pref.iter().map(|a| a.as_str()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

/// Parses a profile file. The trailing preference row is optional.
pub fn parse_profile(text: &str) -> Result<(ScoreProfile, Option<Vec<Alternative>>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty profile: missing `n m kind` header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(Error::parse(header_line, "header must be `n m kind`"));
    }
    let n: usize = fields[0]
        .parse()
        .map_err(|_| Error::parse(header_line, format!("bad voter count `{}`", fields[0])))?;
    let m: usize = fields[1]
        .parse()
        .map_err(|_| Error::parse(header_line, format!("bad candidate count `{}`", fields[1])))?;
    let kind: ProfileKind = fields[2]
        .parse()
        .map_err(|e: Error| Error::parse(header_line, e.to_string()))?;
    if n == 0 || m == 0 {
        return Err(Error::parse(
            header_line,
            "profile needs at least one voter and one candidate",
        ));
    }

    let mut scores = Vec::with_capacity(n * m);
    for voter in 0..n {
        let (line_no, line) = lines.next().ok_or_else(|| {
            Error::parse(
                header_line,
                format!("expected {n} score rows, found {voter}"),
            )
        })?;
        let row: Vec<f64> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>()
                    .map_err(|_| Error::parse(line_no, format!("bad score `{tok}`")))
            })
            .collect::<Result<_>>()?;
        if row.len() != m {
            return Err(Error::parse(
                line_no,
                format!("expected {m} scores, found {}", row.len()),
            ));
        }
        scores.extend(row);
    }

    let preferred = match lines.next() {
        None => None,
        Some((line_no, line)) => {
            let pref: Vec<Alternative> = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse()
                        .map_err(|e: Error| Error::parse(line_no, e.to_string()))
                })
                .collect::<Result<_>>()?;
            if pref.len() != n {
                return Err(Error::parse(
                    line_no,
                    format!("expected {n} preferred alternatives, found {}", pref.len()),
                ));
            }
            Some(pref)
        }
    };
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::parse(line_no, "unexpected trailing content"));
    }

    let profile = ScoreProfile::new(n, m, kind, scores)
        .map_err(|e| Error::parse(header_line, e.to_string()))?;
    Ok((profile, preferred))
}

/// A committee: a nonempty set of distinct candidates, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Committee {
    members: Vec<usize>,
}

impl Committee {
    pub fn new(mut members: Vec<usize>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::invalid(
                "committee",
                "a committee needs at least one member",
            ));
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(
                "committee",
                format!("candidate {} listed twice", w[0]),
            ));
        }
        Ok(Committee { members })
    }

    /// Like [`Committee::new`] but also checks every member is below `n_candidates`.
    pub fn for_profile(members: Vec<usize>, n_candidates: usize) -> Result<Self> {
        let committee = Self::new(members)?;
        if committee.len() > n_candidates {
            return Err(Error::invalid(
                "committee",
                format!("size {} exceeds {n_candidates} candidates", committee.len()),
            ));
        }
        if let Some(&c) = committee.members.last() {
            if c >= n_candidates {
                return Err(Error::OutOfRange {
                    what: "committee member",
                    value: c,
                    max: n_candidates - 1,
                });
            }
        }
        Ok(committee)
    }

    /// Caller guarantees `members` is strictly increasing and nonempty.
    pub(crate) fn from_sorted_unchecked(members: Vec<usize>) -> Self {
        debug_assert!(!members.is_empty() && members.windows(2).all(|w| w[0] < w[1]));
        Committee { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, candidate: usize) -> bool {
        self.members.binary_search(&candidate).is_ok()
    }
}

impl fmt::Display for Committee {
    /// 1-based, space separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_char(' ')?;
            }
            write!(f, "{}", c + 1)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alternative {
    Accept,
    Reject,
}

impl Alternative {
    pub fn as_str(self) -> &'static str {
        match self {
            Alternative::Accept => "A",
            Alternative::Reject => "R",
        }
    }
}

impl FromStr for Alternative {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(Alternative::Accept),
            "R" => Ok(Alternative::Reject),
            other => Err(Error::invalid(
                "alternative",
                format!("expected A or R, got `{other}`"),
            )),
        }
    }
}

/// Single-issue deterministic model: voter `i` approves exactly the
/// candidates that share its view on its own issue, and prefers
/// `preferred[i]` on that issue.
#[derive(Debug, Clone, PartialEq)]
pub struct DeterministicInstance {
    approvals: ScoreProfile,
    preferred: Vec<Alternative>,
}

impl DeterministicInstance {
    pub fn new(approvals: ScoreProfile, preferred: Vec<Alternative>) -> Result<Self> {
        if approvals.kind() != ProfileKind::Approval {
            return Err(Error::invalid(
                "deterministic instance",
                format!("needs an approval profile, got {}", approvals.kind()),
            ));
        }
        if preferred.len() != approvals.n_voters() {
            return Err(Error::Dimension {
                what: "preferred alternatives",
                expected: approvals.n_voters(),
                got: preferred.len(),
            });
        }
        Ok(DeterministicInstance {
            approvals,
            preferred,
        })
    }

    /// Every voter prefers the same alternative.
    pub fn uniform(approvals: ScoreProfile, alternative: Alternative) -> Result<Self> {
        let n = approvals.n_voters();
        Self::new(approvals, vec![alternative; n])
    }

    pub fn approvals(&self) -> &ScoreProfile {
        &self.approvals
    }

    pub fn preferred(&self) -> &[Alternative] {
        &self.preferred
    }

    pub fn n_voters(&self) -> usize {
        self.approvals.n_voters()
    }

    pub fn n_candidates(&self) -> usize {
        self.approvals.n_candidates()
    }

    /// Number of members of `committee` approved by `voter`.
    pub fn approved_count(&self, voter: usize, committee: &Committee) -> usize {
        let row = self.approvals.row(voter);
        committee
            .members()
            .iter()
            .filter(|&&c| row[c] == 1.0)
            .count()
    }

    pub fn to_text(&self) -> String {
        self.approvals.to_text(Some(&self.preferred))
    }

    /// Parses the profile format; the preference row is required.
    pub fn parse(text: &str) -> Result<Self> {
        let (profile, preferred) = parse_profile(text)?;
        let preferred = preferred.ok_or_else(|| {
            Error::parse(
                1,
                "deterministic instance needs a row of preferred alternatives",
            )
        })?;
        Self::new(profile, preferred)
    }
}
