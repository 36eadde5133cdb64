//! PrefLib strict complete orders (`.soc`) and rank distances.
//!
//! Accepted format: metadata lines starting with `#`, then one line per
//! distinct ranking, `count: c_a, c_b, ...`, with 1-based candidate ids from
//! most to least preferred. `# NUMBER ALTERNATIVES: m` fixes the candidate
//! count; without it the count is the length of the rankings. Weak orders
//! (`{...}` groups) and incomplete rankings are rejected.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::profile::{ProfileKind, ScoreProfile};

/// Minimum dataset size kept by [`filter_dataset`].
pub const MIN_VOTERS: usize = 15;
pub const MIN_CANDIDATES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankProfile {
    n_candidates: usize,
    rankings: Vec<Vec<usize>>,
    multiplicities: Vec<usize>,
}

impl RankProfile {
    /// Each ranking must be a permutation of `0..n_candidates`; each
    /// multiplicity at least 1.
    pub fn new(
        n_candidates: usize,
        rankings: Vec<Vec<usize>>,
        multiplicities: Vec<usize>,
    ) -> Result<Self> {
        if rankings.len() != multiplicities.len() {
            return Err(Error::Dimension {
                what: "multiplicities",
                expected: rankings.len(),
                got: multiplicities.len(),
            });
        }
        if multiplicities.contains(&0) {
            return Err(Error::invalid(
                "rank profile",
                "multiplicities must be at least 1",
            ));
        }
        for (i, r) in rankings.iter().enumerate() {
            if !is_permutation(r, n_candidates) {
                return Err(Error::invalid(
                    "rank profile",
                    format!("ranking {i} is not a permutation of {n_candidates} candidates"),
                ));
            }
        }
        Ok(RankProfile {
            n_candidates,
            rankings,
            multiplicities,
        })
    }

    /// One voter per ranking.
    pub fn from_voters(n_candidates: usize, voters: Vec<Vec<usize>>) -> Result<Self> {
        let ones = vec![1; voters.len()];
        Self::new(n_candidates, voters, ones)
    }

    pub fn n_candidates(&self) -> usize {
        self.n_candidates
    }

    pub fn n_voters(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    pub fn rankings(&self) -> &[Vec<usize>] {
        &self.rankings
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// Rankings expanded by multiplicity, one entry per voter.
    pub fn voters(&self) -> Vec<&[usize]> {
        self.rankings
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(r, &k)| std::iter::repeat_n(r.as_slice(), k))
            .collect()
    }

    pub fn to_preflib(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# DATA TYPE: soc");
        let _ = writeln!(out, "# NUMBER ALTERNATIVES: {}", self.n_candidates);
        let _ = writeln!(out, "# NUMBER VOTERS: {}", self.n_voters());
        let _ = writeln!(out, "# NUMBER UNIQUE ORDERS: {}", self.rankings.len());
        for (r, k) in self.rankings.iter().zip(&self.multiplicities) {
            let ids: Vec<String> = r.iter().map(|c| (c + 1).to_string()).collect();
            let _ = writeln!(out, "{k}: {}", ids.join(","));
        }
        out
    }
}

fn is_permutation(r: &[usize], m: usize) -> bool {
    if r.len() != m {
        return false;
    }
    let mut seen = vec![false; m];
    r.iter()
        .all(|&c| c < m && !std::mem::replace(&mut seen[c], true))
}

pub fn parse_preflib(text: &str) -> Result<RankProfile> {
    let mut declared: Option<usize> = None;
    let mut rows: Vec<(usize, usize, Vec<usize>)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(meta) = line.strip_prefix('#') {
            if let Some((key, value)) = meta.split_once(':') {
                if key.trim().eq_ignore_ascii_case("NUMBER ALTERNATIVES") {
                    let m = value.trim().parse().map_err(|_| {
                        Error::parse(line_no, format!("bad alternative count `{}`", value.trim()))
                    })?;
                    declared = Some(m);
                }
            }
            continue;
        }
        if line.contains('{') || line.contains('}') {
            return Err(Error::parse(
                line_no,
                "tied candidates (weak orders) are not supported",
            ));
        }
        let (count, order) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(line_no, "expected `count: c1, c2, ...`"))?;
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| Error::parse(line_no, format!("bad voter count `{}`", count.trim())))?;
        if count == 0 {
            return Err(Error::parse(line_no, "voter count must be at least 1"));
        }
        let ids = order
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<usize>()
                    .map_err(|_| Error::parse(line_no, format!("bad candidate id `{tok}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push((line_no, count, ids));
    }

    let m = match (declared, rows.first()) {
        (Some(m), _) => m,
        (None, Some((_, _, ids))) => ids.len(),
        (None, None) => {
            return Err(Error::parse(
                text.lines().count().max(1),
                "no rankings found",
            ))
        }
    };
    if rows.is_empty() {
        return Err(Error::parse(
            text.lines().count().max(1),
            "no rankings found",
        ));
    }

    let mut rankings = Vec::with_capacity(rows.len());
    let mut multiplicities = Vec::with_capacity(rows.len());
    for (line_no, count, ids) in rows {
        let mut seen = vec![false; m];
        let mut ranking = Vec::with_capacity(m);
        for id in ids {
            if id == 0 || id > m {
                return Err(Error::parse(
                    line_no,
                    format!("unknown candidate id {id} (1..={m})"),
                ));
            }
            if std::mem::replace(&mut seen[id - 1], true) {
                return Err(Error::parse(
                    line_no,
                    format!("candidate {id} ranked twice"),
                ));
            }
            ranking.push(id - 1);
        }
        if ranking.len() != m {
            return Err(Error::parse(
                line_no,
                format!("incomplete ranking: {} of {m} candidates", ranking.len()),
            ));
        }
        rankings.push(ranking);
        multiplicities.push(count);
    }
    RankProfile::new(m, rankings, multiplicities)
}

/// Keeps datasets with at least [`MIN_VOTERS`] voters and
/// [`MIN_CANDIDATES`] candidates.
pub fn filter_dataset(profile: &RankProfile) -> bool {
    profile.n_voters() >= MIN_VOTERS && profile.n_candidates() >= MIN_CANDIDATES
}

/// Number of candidate pairs ordered oppositely by the two rankings,
/// by merge-sort inversion counting.
pub fn kendall_tau(a: &[usize], b: &[usize]) -> Result<u64> {
    if a.len() != b.len() {
        return Err(Error::Dimension {
            what: "ranking length",
            expected: a.len(),
            got: b.len(),
        });
    }
    let m = a.len();
    if !is_permutation(a, m) || !is_permutation(b, m) {
        return Err(Error::invalid(
            "ranking",
            "both rankings must be permutations of 0..m",
        ));
    }
    let mut pos_b = vec![0; m];
    for (r, &c) in b.iter().enumerate() {
        pos_b[c] = r;
    }
    let mut seq: Vec<usize> = a.iter().map(|&c| pos_b[c]).collect();
    let mut buf = vec![0; m];
    Ok(count_inversions(&mut seq, &mut buf))
}

fn count_inversions(seq: &mut [usize], buf: &mut [usize]) -> u64 {
    let n = seq.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut count = {
        let (left, right) = seq.split_at_mut(mid);
        let (bl, br) = buf.split_at_mut(mid);
        count_inversions(left, bl) + count_inversions(right, br)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if seq[i] <= seq[j] {
            buf[k] = seq[i];
            i += 1;
        } else {
            buf[k] = seq[j];
            count += (mid - i) as u64;
            j += 1;
        }
        k += 1;
    }
    buf[k..k + mid - i].copy_from_slice(&seq[i..mid]);
    k += mid - i;
    buf[k..k + n - j].copy_from_slice(&seq[j..n]);
    seq.copy_from_slice(&buf[..n]);
    count
}

/// Distances from each voter's issue to every voter and every candidate.
#[derive(Debug, Clone, PartialEq)]
pub struct IssueDistances {
    /// `voter[v][w]`: Kendall-tau distance between voters `v` and `w`,
    /// row-scaled to mean 1/2.
    pub voter: Vec<Vec<f64>>,
    /// `candidate[v][c]`: 0-based position of `c` in `v`'s ranking,
    /// row-scaled to mean 1/2.
    pub candidate: Vec<Vec<f64>>,
}

/// One issue per voter. Rows whose raw distances are all zero stay zero.
/// Voter rows are computed in parallel on the current rayon pool.
pub fn issue_distances(profile: &RankProfile) -> IssueDistances {
    let voters = profile.voters();
    let m = profile.n_candidates();
    let voter = voters
        .par_iter()
        .map(|v| {
            let raw: Vec<f64> = voters
                .iter()
                .map(|w| kendall_tau(v, w).expect("validated permutations") as f64)
                .collect();
            scale_to_half_mean(raw)
        })
        .collect();
    let candidate = voters
        .iter()
        .map(|v| {
            let mut raw = vec![0.0; m];
            for (pos, &c) in v.iter().enumerate() {
                raw[c] = pos as f64;
            }
            scale_to_half_mean(raw)
        })
        .collect();
    IssueDistances { voter, candidate }
}

fn scale_to_half_mean(mut row: Vec<f64>) -> Vec<f64> {
    let mean = row.iter().sum::<f64>() / row.len() as f64;
    if mean > 0.0 {
        let factor = 0.5 / mean;
        row.iter_mut().for_each(|d| *d *= factor);
    }
    row
}

/// Normalized Borda scores: the rank-`r` candidate (0-based) of a voter
/// gets `(m - 1 - r) / (m - 1)`; with one candidate it gets 1.
pub fn borda_scores(profile: &RankProfile) -> ScoreProfile {
    let m = profile.n_candidates();
    let voters = profile.voters();
    let mut scores = vec![0.0; voters.len() * m];
    for (i, v) in voters.iter().enumerate() {
        for (r, &c) in v.iter().enumerate() {
            scores[i * m + c] = if m > 1 {
                (m - 1 - r) as f64 / (m - 1) as f64
            } else {
                1.0
            };
        }
    }
    ScoreProfile::new(voters.len(), m, ProfileKind::Borda, scores).expect("Borda rows are valid")
}

/// Parses every `.soc` file in `dir`, in file-name order.
pub fn load_dir(dir: &Path) -> Result<Vec<(PathBuf, Result<RankProfile>)>> {
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|ext| ext == "soc"))
        .collect();
    paths.sort();
    Ok(paths
        .into_iter()
        .map(|path| {
            let parsed = fs::read_to_string(&path)
                .map_err(|e| Error::io(&path, e))
                .and_then(|text| parse_preflib(&text));
            (path, parsed)
        })
        .collect())
}
