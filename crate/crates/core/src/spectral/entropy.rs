// SPDX-License-Identifier: Apache-2.0

use rayon::prelude::*;

use super::eigen::{Spectrum, symmetric_eigenvalues};
use super::matrix::normalized_laplacian;
use crate::centrality::{CentralityScores, Method};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Eigenvalues below this count as zero when counting components.
pub const ZERO_EIGENVALUE_TOLERANCE: f64 = 1e-8;

pub fn laplacian_spectrum(g: &Graph) -> Result<Spectrum> {
    symmetric_eigenvalues(&normalized_laplacian(g))
}

/// `-Σ (λ/2) ln(λ/2)` with `0 ln 0 = 0`.
pub fn entropy_of_spectrum(s: &Spectrum) -> f64 {
    s.eigenvalues
        .iter()
        .map(|&l| {
            let t = l / 2.0;
            if t > 0.0 { -t * t.ln() } else { 0.0 }
        })
        .sum()
}

/// Von Neumann entropy (nats) of the normalized Laplacian spectrum.
pub fn von_neumann_entropy(g: &Graph) -> Result<f64> {
    Ok(entropy_of_spectrum(&laplacian_spectrum(g)?))
}

fn centrality_given(g: &Graph, base: f64, nodes: &[usize]) -> Result<f64> {
    let rest = g.remove_nodes(nodes)?;
    Ok((base - von_neumann_entropy(&rest)?).abs())
}

/// `|S(G) - S(G \ v)|`.
pub fn entropy_centrality_exact(g: &Graph, v: usize) -> Result<f64> {
    g.check_node(v)?;
    centrality_given(g, von_neumann_entropy(g)?, &[v])
}

/// `|S(G) - S(G \ s)|` for a node set `s` that leaves at least one node.
pub fn entropy_centrality_subgraph(g: &Graph, s: &[usize]) -> Result<f64> {
    for &v in s {
        g.check_node(v)?;
    }
    let mut distinct = s.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() == g.node_count() {
        return Err(Error::domain(
            "subgraph covers every node; nothing would remain",
        ));
    }
    centrality_given(g, von_neumann_entropy(g)?, &distinct)
}

/// Exact entropy centrality of every node. One eigendecomposition per node,
/// run in parallel.
pub fn entropy_centrality_all(g: &Graph) -> Result<CentralityScores> {
    if g.node_count() < 2 {
        return Err(Error::domain("entropy centrality needs at least two nodes"));
    }
    let base = von_neumann_entropy(g)?;
    let scores = (0..g.node_count())
        .into_par_iter()
        .map(|v| centrality_given(g, base, &[v]))
        .collect::<Result<Vec<f64>>>()?;
    Ok(CentralityScores::new(Method::CeExact, g, scores))
}
