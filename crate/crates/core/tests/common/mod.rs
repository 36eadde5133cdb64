//! Brute-force oracles written independently of the library code paths.
#![allow(dead_code)]

use committee_model::{Alternative, Committee};

pub const TOL: f64 = 1e-9;

/// All `k`-subsets of `0..m` in lexicographic order, by recursion.
pub fn all_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..m {
            if m - c < k - cur.len() {
                break;
            }
            cur.push(c);
            go(c + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// Subsets attaining the maximum of `f` within [`TOL`], and the maximum.
pub fn argmax_set(m: usize, k: usize, f: impl Fn(&[usize]) -> f64) -> (Vec<Vec<usize>>, f64) {
    let scored: Vec<(Vec<usize>, f64)> = all_subsets(m, k)
        .into_iter()
        .map(|s| {
            let v = f(&s);
            (s, v)
        })
        .collect();
    let best = scored
        .iter()
        .map(|(_, v)| *v)
        .fold(f64::NEG_INFINITY, f64::max);
    let set = scored
        .into_iter()
        .filter(|(_, v)| *v >= best - TOL)
        .map(|(s, _)| s)
        .collect();
    (set, best)
}

/// Probability that the decision goes the voter's way, summing over all
/// `2^K` agree/disagree patterns of the members. `agree[j]` is the chance
/// member `j` votes the voter's way; `probs[a]` the chance the decision
/// goes the voter's way when `a` members do.
pub fn pattern_satisfaction(agree: &[f64], probs: &[f64]) -> f64 {
    let k = agree.len();
    let mut total = 0.0;
    for mask in 0u32..(1u32 << k) {
        let mut weight = 1.0;
        for (j, &p) in agree.iter().enumerate() {
            weight *= if mask & (1 << j) != 0 { p } else { 1.0 - p };
        }
        total += weight * probs[mask.count_ones() as usize];
    }
    total
}

/// Deterministic model by simulating the vote: approved members vote the
/// voter's way, the others the opposite way.
pub fn vote_satisfaction(approved: usize, k: usize, preferred: Alternative, probs: &[f64]) -> f64 {
    let accepts = match preferred {
        Alternative::Accept => approved,
        Alternative::Reject => k - approved,
    };
    let p_accept = probs[accepts];
    match preferred {
        Alternative::Accept => p_accept,
        Alternative::Reject => 1.0 - p_accept,
    }
}

/// OWA value of a voter's scores over `members`.
pub fn owa_value(weights: &[f64], row: &[f64], members: &[usize]) -> f64 {
    let mut s: Vec<f64> = members.iter().map(|&c| row[c]).collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    weights.iter().zip(&s).map(|(w, x)| w * x).sum()
}

/// Table of a symmetric rule from its values at `a = K/2 + 1 ..= K`
/// (upper half, excluding the even-K center).
pub fn symmetric_table(k: usize, upper: &[f64]) -> Vec<f64> {
    let mut probs = vec![0.0; k + 1];
    let first = k / 2 + 1;
    assert_eq!(upper.len(), k + 1 - first);
    for (a, &v) in (first..=k).zip(upper) {
        probs[a] = v;
        probs[k - a] = 1.0 - v;
    }
    if k.is_multiple_of(2) {
        probs[k / 2] = 0.5;
    }
    probs
}

pub fn committee(members: &[usize]) -> Committee {
    Committee::new(members.to_vec()).unwrap()
}

/// Every symmetric monotone rule whose upper-half values lie on the grid
/// `1/2, 1/2 + step, ..., 1`.
pub fn grid_rules(k: usize, steps: usize) -> Vec<Vec<f64>> {
    let half = k + 1 - (k / 2 + 1);
    let grid: Vec<f64> = (0..=steps)
        .map(|s| 0.5 + 0.5 * s as f64 / steps as f64)
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; half];
    loop {
        let upper: Vec<f64> = idx.iter().map(|&i| grid[i]).collect();
        out.push(symmetric_table(k, &upper));
        // Next nondecreasing index sequence.
        let mut pos = half;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if idx[pos] < steps {
                idx[pos] += 1;
                for j in pos + 1..half {
                    idx[j] = idx[pos];
                }
                break;
            }
        }
    }
}
