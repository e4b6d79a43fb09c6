// SPDX-License-Identifier: Apache-2.0

//! Deterministic ordering helpers shared by score tables, dismantling and
//! rank correlation.
//!
//! Scores that agree to within [`TIE_TOLERANCE`] (relative) are treated as
//! tied; ties are always resolved by ascending node label. Labels compare
//! numerically when both parse as unsigned integers, lexicographically
//! otherwise.

use std::cmp::Ordering;

pub const TIE_TOLERANCE: f64 = 1e-10;

pub fn tied(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIE_TOLERANCE * 1f64.max(a.abs()).max(b.abs())
}

pub fn label_cmp(a: &str, b: &str) -> Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        _ => a.cmp(b),
    }
}

/// Index of the highest score; near-ties go to the smallest label.
pub fn top<S: AsRef<str>>(scores: &[f64], labels: &[S]) -> Option<usize> {
    let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (0..scores.len())
        .filter(|&i| tied(scores[i], max))
        .min_by(|&a, &b| label_cmp(labels[a].as_ref(), labels[b].as_ref()))
}

/// Indices sorted by descending score, near-ties by ascending label, paired
/// with their dense rank (1, 2, 2, 3, ...).
pub fn dense_ranking<S: AsRef<str>>(scores: &[f64], labels: &[S]) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    // group consecutive near-equal scores, anchored at the group head
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut head = f64::NAN;
    for i in order {
        match groups.last_mut() {
            Some(g) if tied(scores[i], head) => g.push(i),
            _ => {
                head = scores[i];
                groups.push(vec![i]);
            }
        }
    }
    let mut out = Vec::with_capacity(scores.len());
    for (r, mut g) in groups.into_iter().enumerate() {
        g.sort_by(|&a, &b| label_cmp(labels[a].as_ref(), labels[b].as_ref()));
        out.extend(g.into_iter().map(|i| (i, r + 1)));
    }
    out
}

/// Fractional (average) ranks, 1-based, ascending by score. Near-ties share
/// the mean of the positions they occupy.
pub fn fractional_ranks(scores: &[f64]) -> Vec<f64> {
    let n = scores.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));
    let mut ranks = vec![0.0; n];
    let mut start = 0;
    while start < n {
        let head = scores[order[start]];
        let mut end = start + 1;
        while end < n && tied(scores[order[end]], head) {
            end += 1;
        }
        let avg = (start + end + 1) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = avg;
        }
        start = end;
    }
    ranks
}
