// SPDX-License-Identifier: Apache-2.0

//! Degree-local approximations built on power traces of the normalized
//! Laplacian.
//!
//! Truncating `ln x` around `x = 1` turns `-Σ t ln t` (with `t = λ/2`) into a
//! polynomial in the eigenvalues, i.e. a combination of `Tr(ℒ^k)`, and those
//! traces are sums over closed walks weighted by inverse degrees. Sums over
//! adjacent pairs run over ordered pairs: every edge counts twice, every
//! triangle six times.

use crate::centrality::{CentralityScores, Method};
use crate::error::{Error, Result};
use crate::graph::Graph;

fn require_no_isolated(g: &Graph) -> Result<()> {
    match g.isolated_nodes().next() {
        Some(v) => Err(Error::domain(format!(
            "node '{}' is isolated; degree-based approximations need every degree > 0",
            g.label(v)
        ))),
        None => Ok(()),
    }
}

/// `Σ_{i~j} 1/(d_i d_j)` over ordered adjacent pairs.
fn pair_sum(g: &Graph) -> f64 {
    let deg = g.degrees();
    2.0 * g
        .edges()
        .map(|(i, j)| 1.0 / (deg[i] * deg[j]) as f64)
        .sum::<f64>()
}

/// `Σ_{i~j~k~i} 1/(d_i d_j d_k)` over ordered triangles.
fn triangle_sum(g: &Graph) -> f64 {
    let deg = g.degrees();
    let mut sum = 0.0;
    for (i, j) in g.edges() {
        // common neighbours above j, so each triangle is met once
        let (a, b) = (g.neighbors(i), g.neighbors(j));
        let (mut p, mut q) = (0, 0);
        while p < a.len() && q < b.len() {
            match a[p].cmp(&b[q]) {
                std::cmp::Ordering::Less => p += 1,
                std::cmp::Ordering::Greater => q += 1,
                std::cmp::Ordering::Equal => {
                    let k = a[p];
                    if k > j {
                        sum += 1.0 / (deg[i] * deg[j] * deg[k]) as f64;
                    }
                    p += 1;
                    q += 1;
                }
            }
        }
    }
    6.0 * sum
}

/// `Tr(ℒ^t)` for `t ∈ {1, 2, 3}` from degrees alone.
pub fn trace_power(g: &Graph, t: u32) -> Result<f64> {
    if !(1..=3).contains(&t) {
        return Err(Error::domain(format!("trace power {t} not in 1..=3")));
    }
    require_no_isolated(g)?;
    let n = g.node_count() as f64;
    Ok(match t {
        1 => n,
        2 => n + pair_sum(g),
        _ => n + 3.0 * pair_sum(g) - triangle_sum(g),
    })
}

/// First-order entropy, `Tr(ℒ)/2 - Tr(ℒ²)/4 = |V|/4 - Σ_{i~j} 1/(4 d_i d_j)`.
pub fn entropy_s1(g: &Graph) -> Result<f64> {
    require_no_isolated(g)?;
    Ok((g.node_count() as f64 - pair_sum(g)) / 4.0)
}

/// Second-order entropy from the `k = 2` truncation of the logarithm:
/// `Σ (3/2)t - 2t² + (1/2)t³` with `t = λ/2`, which expands to
/// `(3/4)Tr ℒ - (1/2)Tr ℒ² + (1/16)Tr ℒ³`
/// `= (5/16)|V| - (5/16)Σ_{i~j} 1/(d_i d_j) - (1/16)Σ_{i~j~k~i} 1/(d_i d_j d_k)`.
pub fn entropy_s2(g: &Graph) -> Result<f64> {
    require_no_isolated(g)?;
    let n = g.node_count() as f64;
    Ok((5.0 * n - 5.0 * pair_sum(g) - triangle_sum(g)) / 16.0)
}

/// The second-order formula with the coefficients as originally published,
/// `(5/16)|V| - (11/16)Σ 1/(d_i d_j) + (1/16)Σ 1/(d_i d_j d_k)`, using the same
/// ordered-pair sums. Kept for comparison only; it does not agree with the
/// truncated series (on K2 it gives -3/4 instead of 0).
pub fn entropy_s2_published(g: &Graph) -> Result<f64> {
    require_no_isolated(g)?;
    let n = g.node_count() as f64;
    Ok((5.0 * n - 11.0 * pair_sum(g) + triangle_sum(g)) / 16.0)
}

fn approx_at(g: &Graph, deg: &[usize], v: usize) -> f64 {
    let dv = deg[v];
    if dv == 0 {
        // removing an isolated node drops a zero eigenvalue and leaves S unchanged
        return 0.0;
    }
    let mut score = 0.25;
    for &j in g.neighbors(v) {
        let dj = deg[j];
        score -= 1.0 / (4 * dv * dj) as f64;
        if dj < 2 {
            continue;
        }
        for &k in g.neighbors(j) {
            if k != v {
                score += 1.0 / (4 * (dj - 1) * dj * deg[k]) as f64;
            }
        }
    }
    score
}

/// Two-hop approximation of the entropy centrality of `v`:
/// `1/4 - Σ_{j~v} 1/(4 d_v d_j) + Σ_{v~j~k, k≠v} 1/(4 (d_j - 1) d_j d_k)`.
///
/// Neighbours of degree one have no onward paths and contribute only to the
/// middle term. Isolated nodes score 0.
pub fn entropy_centrality_approx(g: &Graph, v: usize) -> Result<f64> {
    g.check_node(v)?;
    Ok(approx_at(g, &g.degrees(), v))
}

pub fn entropy_centrality_approx_all(g: &Graph) -> CentralityScores {
    let deg = g.degrees();
    let scores = (0..g.node_count()).map(|v| approx_at(g, &deg, v)).collect();
    CentralityScores::new(Method::CeApprox, g, scores)
}
