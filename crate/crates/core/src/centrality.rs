// SPDX-License-Identifier: Apache-2.0

//! Baseline node centralities and the common score container.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ranking;
use crate::spectral;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Dc,
    Bc,
    Cc,
    Ec,
    Pr,
    Kc,
    Clc,
    Ci,
    CeExact,
    CeApprox,
}

impl Method {
    pub const ALL: [Method; 10] = [
        Method::Dc,
        Method::Bc,
        Method::Cc,
        Method::Ec,
        Method::Pr,
        Method::Kc,
        Method::Clc,
        Method::Ci,
        Method::CeExact,
        Method::CeApprox,
    ];

    /// Tag used in CSV headers and metadata.
    pub fn tag(self) -> &'static str {
        match self {
            Method::Dc => "DC",
            Method::Bc => "BC",
            Method::Cc => "CC",
            Method::Ec => "EC",
            Method::Pr => "PR",
            Method::Kc => "KC",
            Method::Clc => "CLC",
            Method::Ci => "CI",
            Method::CeExact => "CE_EXACT",
            Method::CeApprox => "CE_APPROX",
        }
    }

    pub fn is_entropy(self) -> bool {
        matches!(self, Method::CeExact | Method::CeApprox)
    }

    /// Scores of every node under this method. Eigenvector centrality of a
    /// graph without edges is reported as all zeros rather than an error, so
    /// that dismantling can run to exhaustion.
    pub fn compute(self, g: &Graph, params: &CentralityParams) -> Result<CentralityScores> {
        match self {
            Method::Dc => Ok(degree_centrality(g)),
            Method::Bc => Ok(betweenness_centrality(g)),
            Method::Cc => Ok(closeness_centrality(g)),
            Method::Ec if g.edge_count() == 0 => Ok(CentralityScores::new(
                Method::Ec,
                g,
                vec![0.0; g.node_count()],
            )),
            Method::Ec => eigenvector_centrality(g),
            Method::Pr => Ok(pagerank(g, params.damping, params.pagerank_tol)),
            Method::Kc => Ok(k_core(g)),
            Method::Clc => Ok(clustering_centrality(g)),
            Method::Ci => Ok(collective_influence(g, params.ci_radius)),
            Method::CeExact => spectral::entropy_centrality_all(g),
            Method::CeApprox => Ok(spectral::entropy_centrality_approx_all(g)),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        Method::ALL
            .into_iter()
            .find(|m| m.tag() == norm)
            .ok_or_else(|| Error::domain(format!("unknown centrality method '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralityParams {
    pub damping: f64,
    pub pagerank_tol: f64,
    pub ci_radius: usize,
}

impl Default for CentralityParams {
    fn default() -> Self {
        Self {
            damping: 0.85,
            pagerank_tol: 1e-10,
            ci_radius: 2,
        }
    }
}

/// One score per node of the source graph, in the graph's node order.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityScores {
    pub method: Method,
    pub labels: Vec<String>,
    pub scores: Vec<f64>,
}

/// A row of a ranked score table.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedNode {
    pub label: String,
    pub score: f64,
    pub rank: usize,
}

impl CentralityScores {
    pub fn new(method: Method, g: &Graph, scores: Vec<f64>) -> Self {
        assert_eq!(scores.len(), g.node_count());
        Self {
            method,
            labels: g.labels().to_vec(),
            scores,
        }
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<f64> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.scores[i])
    }

    /// Index of the top-ranked node.
    pub fn top(&self) -> Option<usize> {
        ranking::top(&self.scores, &self.labels)
    }

    pub fn top_label(&self) -> Option<&str> {
        self.top().map(|i| self.labels[i].as_str())
    }

    /// Descending by score, ties by ascending label, dense ranks.
    pub fn ranking(&self) -> Vec<RankedNode> {
        ranking::dense_ranking(&self.scores, &self.labels)
            .into_iter()
            .map(|(i, rank)| RankedNode {
                label: self.labels[i].clone(),
                score: self.scores[i],
                rank,
            })
            .collect()
    }

    /// Labels in ranking order.
    pub fn order(&self) -> Vec<&str> {
        ranking::dense_ranking(&self.scores, &self.labels)
            .into_iter()
            .map(|(i, _)| self.labels[i].as_str())
            .collect()
    }
}

pub fn degree_centrality(g: &Graph) -> CentralityScores {
    let scores = g.degrees().into_iter().map(|d| d as f64).collect();
    CentralityScores::new(Method::Dc, g, scores)
}

/// Single-source Brandes dependencies.
fn brandes_source(g: &Graph, s: usize, acc: &mut [f64]) {
    let n = g.node_count();
    let mut stack = Vec::with_capacity(n);
    let mut queue = VecDeque::with_capacity(n);
    let mut dist = vec![usize::MAX; n];
    let mut sigma = vec![0f64; n];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    dist[s] = 0;
    sigma[s] = 1.0;
    queue.push_back(s);
    while let Some(v) = queue.pop_front() {
        stack.push(v);
        for &w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                sigma[w] += sigma[v];
                preds[w].push(v);
            }
        }
    }
    let mut delta = vec![0.0; n];
    while let Some(w) = stack.pop() {
        for &v in &preds[w] {
            delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        }
        if w != s {
            acc[w] += delta[w];
        }
    }
}

const BRANDES_CHUNK: usize = 32;

/// Shortest-path betweenness (Brandes), unnormalized: the number of
/// unordered node pairs a node lies between, fractionally. Sources are
/// processed in fixed-size chunks and summed in chunk order, so results are
/// bit-identical regardless of thread count.
pub fn betweenness_centrality(g: &Graph) -> CentralityScores {
    let n = g.node_count();
    let sources: Vec<usize> = (0..n).collect();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(BRANDES_CHUNK)
        .map(|chunk| {
            let mut acc = vec![0.0; n];
            for &s in chunk {
                brandes_source(g, s, &mut acc);
            }
            acc
        })
        .collect();
    let mut scores = vec![0.0; n];
    for p in partials {
        for (x, y) in scores.iter_mut().zip(p) {
            *x += y;
        }
    }
    // each unordered pair was visited from both ends
    for x in &mut scores {
        *x /= 2.0;
    }
    CentralityScores::new(Method::Bc, g, scores)
}

/// Closeness within the reachable set: `(r - 1) / Σ dist` where `r` counts
/// the nodes reachable from `v` including itself. Isolated nodes score 0.
pub fn closeness_centrality(g: &Graph) -> CentralityScores {
    let scores = (0..g.node_count())
        .into_par_iter()
        .map(|v| {
            let (reach, total) = g
                .distances_from(v)
                .into_iter()
                .flatten()
                .fold((0usize, 0usize), |(r, t), d| (r + 1, t + d));
            if total == 0 {
                0.0
            } else {
                (reach - 1) as f64 / total as f64
            }
        })
        .collect();
    CentralityScores::new(Method::Cc, g, scores)
}

pub const EIGENVECTOR_TOL: f64 = 1e-10;
pub const EIGENVECTOR_MAX_ITER: usize = 100_000;

/// Principal adjacency eigenvector on the largest component, max-normalized
/// to 1; nodes outside that component score 0. Iterates with `A + I`, which
/// has the same eigenvectors but no ±λ oscillation on bipartite graphs.
pub fn eigenvector_centrality(g: &Graph) -> Result<CentralityScores> {
    if g.edge_count() == 0 {
        return Err(Error::domain("eigenvector centrality needs at least one edge"));
    }
    let n = g.node_count();
    let parts = g.connected_components();
    let inside: Vec<bool> = parts.labels.iter().map(|&c| c == 0).collect();
    let mut x: Vec<f64> = inside.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect();
    let mut next = vec![0.0; n];
    for _ in 0..EIGENVECTOR_MAX_ITER {
        for v in 0..n {
            next[v] = if inside[v] {
                x[v] + g.neighbors(v).iter().map(|&w| x[w]).sum::<f64>()
            } else {
                0.0
            };
        }
        let max = next.iter().copied().fold(0.0, f64::max);
        for y in &mut next {
            *y /= max;
        }
        let diff = x
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        std::mem::swap(&mut x, &mut next);
        if diff < EIGENVECTOR_TOL {
            return Ok(CentralityScores::new(Method::Ec, g, x));
        }
    }
    Err(Error::IterationCap {
        what: "eigenvector centrality",
        iterations: EIGENVECTOR_MAX_ITER,
    })
}

const PAGERANK_MAX_ITER: usize = 10_000;

/// PageRank of the undirected random walk with uniform teleport. Isolated
/// nodes spread their mass uniformly. Stops when successive iterates differ
/// by less than `tol` in L1 norm.
pub fn pagerank(g: &Graph, damping: f64, tol: f64) -> CentralityScores {
    let n = g.node_count();
    if n == 0 {
        return CentralityScores::new(Method::Pr, g, Vec::new());
    }
    let nf = n as f64;
    let deg = g.degrees();
    let mut x = vec![1.0 / nf; n];
    let mut next = vec![0.0; n];
    for _ in 0..PAGERANK_MAX_ITER {
        let dangling: f64 = (0..n).filter(|&v| deg[v] == 0).map(|v| x[v]).sum();
        let base = (1.0 - damping) / nf + damping * dangling / nf;
        for v in 0..n {
            next[v] = base
                + damping
                    * g.neighbors(v)
                        .iter()
                        .map(|&w| x[w] / deg[w] as f64)
                        .sum::<f64>();
        }
        let diff: f64 = x.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut x, &mut next);
        if diff < tol {
            break;
        }
    }
    // renormalize away accumulated rounding
    let total: f64 = x.iter().sum();
    for y in &mut x {
        *y /= total;
    }
    CentralityScores::new(Method::Pr, g, x)
}

/// Core numbers by bucketed minimum-degree peeling.
pub fn k_core(g: &Graph) -> CentralityScores {
    let n = g.node_count();
    let mut deg = g.degrees();
    let max_deg = deg.iter().copied().max().unwrap_or(0);
    let mut bin = vec![0usize; max_deg + 1];
    for &d in &deg {
        bin[d] += 1;
    }
    let mut start = 0;
    for b in &mut bin {
        let count = *b;
        *b = start;
        start += count;
    }
    let mut pos = vec![0usize; n];
    let mut vert = vec![0usize; n];
    for v in 0..n {
        pos[v] = bin[deg[v]];
        vert[pos[v]] = v;
        bin[deg[v]] += 1;
    }
    for d in (1..=max_deg).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;
    for i in 0..n {
        let v = vert[i];
        for &u in g.neighbors(v) {
            if deg[u] > deg[v] {
                let du = deg[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = vert[pw];
                if u != w {
                    vert.swap(pu, pw);
                    pos[u] = pw;
                    pos[w] = pu;
                }
                bin[du] += 1;
                deg[u] -= 1;
            }
        }
    }
    CentralityScores::new(Method::Kc, g, deg.into_iter().map(|d| d as f64).collect())
}

pub fn clustering_centrality(g: &Graph) -> CentralityScores {
    CentralityScores::new(Method::Clc, g, g.clustering_all())
}

/// `CI_ℓ(v) = (d_v - 1) Σ_{u at distance ℓ} (d_u - 1)`.
pub fn collective_influence(g: &Graph, radius: usize) -> CentralityScores {
    let scores = (0..g.node_count())
        .into_par_iter()
        .map(|v| {
            let dv = g.degree(v);
            if dv <= 1 {
                return 0.0;
            }
            let boundary = g.ball_boundary(v, radius).unwrap_or_default();
            let sum: usize = boundary.iter().map(|&u| g.degree(u).saturating_sub(1)).sum();
            ((dv - 1) * sum) as f64
        })
        .collect();
    CentralityScores::new(Method::Ci, g, scores)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{complete, cycle, path, star, wheel6};

    fn close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() < tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn method_tags_parse() {
        for m in Method::ALL {
            assert_eq!(m.tag().parse::<Method>().unwrap(), m);
        }
        assert_eq!("ce_exact".parse::<Method>().unwrap(), Method::CeExact);
        assert_eq!("clc".parse::<Method>().unwrap(), Method::Clc);
        assert!("xyz".parse::<Method>().is_err());
    }

    #[test]
    fn degree() {
        assert_eq!(degree_centrality(&star(3)).scores, [3.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn betweenness_small() {
        assert_eq!(betweenness_centrality(&path(3)).scores, [0.0, 1.0, 0.0]);
        assert_eq!(betweenness_centrality(&star(3)).scores, [3.0, 0.0, 0.0, 0.0]);
        // two components: path 0-1-2 and isolated 3
        let g = path(3).remove_nodes(&[]).unwrap();
        let g = Graph::parse_edge_list(&(g.to_edge_list() + "node z\n")).unwrap();
        assert_eq!(betweenness_centrality(&g).scores, [0.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn closeness_small() {
        close(&closeness_centrality(&path(3)).scores, &[2.0 / 3.0, 1.0, 2.0 / 3.0], 1e-15);
        let g = Graph::parse_edge_list("a b\nnode c").unwrap();
        assert_eq!(closeness_centrality(&g).scores, [1.0, 1.0, 0.0]);
    }

    #[test]
    fn eigenvector_small() {
        close(&eigenvector_centrality(&cycle(6)).unwrap().scores, &[1.0; 6], 1e-9);
        let s = 1.0 / 3f64.sqrt();
        close(&eigenvector_centrality(&star(3)).unwrap().scores, &[1.0, s, s, s], 1e-9);
        close(&eigenvector_centrality(&complete(2)).unwrap().scores, &[1.0, 1.0], 1e-12);
        assert!(eigenvector_centrality(&Graph::from_edges(3, &[]).unwrap()).is_err());
        // off-giant nodes score zero
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        let e = eigenvector_centrality(&g).unwrap();
        assert_eq!(&e.scores[3..], &[0.0, 0.0]);
        assert_eq!(
            Method::Ec.compute(&Graph::from_edges(2, &[]).unwrap(), &Default::default())
                .unwrap()
                .scores,
            [0.0, 0.0]
        );
    }

    #[test]
    fn pagerank_small() {
        let p = pagerank(&cycle(5), 0.85, 1e-12);
        close(&p.scores, &[0.2; 5], 1e-10);
        let p = pagerank(&star(3), 0.85, 1e-12);
        assert!((p.scores.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(p.scores[1..].iter().all(|&l| p.scores[0] > l));
        // closed form: c = (1-α)/4 + α·3ℓ, ℓ = (1-α)/4 + α·c/3
        let a = 0.85;
        let leaf = ((1.0 - a) / 4.0 + a * (1.0 - a) / 12.0) / (1.0 - a * a);
        let centre = 1.0 - 3.0 * leaf;
        close(&p.scores, &[centre, leaf, leaf, leaf], 1e-10);
        let iso = pagerank(&Graph::from_edges(3, &[(0, 1)]).unwrap(), 0.85, 1e-12);
        assert!((iso.scores.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn k_core_small() {
        assert_eq!(k_core(&cycle(5)).scores, [2.0; 5]);
        assert_eq!(k_core(&complete(4)).scores, [3.0; 4]);
        assert_eq!(k_core(&star(3)).scores, [1.0; 4]);
        let g = Graph::parse_edge_list("a b\nb c\nc a\nc d\nnode e").unwrap();
        assert_eq!(k_core(&g).scores, [2.0, 2.0, 2.0, 1.0, 0.0]);
        assert!(k_core(&Graph::empty()).is_empty());
    }

    #[test]
    fn clustering_scores() {
        let w = wheel6();
        let s = clustering_centrality(&w);
        assert!((s.get("v7").unwrap() - 0.4).abs() < 1e-15);
        assert!((s.get("v3").unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(clustering_centrality(&complete(4)).scores, [1.0; 4]);
        assert_eq!(clustering_centrality(&path(5)).scores, [0.0; 5]);
    }

    #[test]
    fn collective_influence_small() {
        assert_eq!(collective_influence(&star(4), 1).scores[0], 0.0);
        assert_eq!(collective_influence(&star(4), 2).scores[0], 0.0);
        assert_eq!(collective_influence(&cycle(6), 1).scores, [2.0; 6]);
        assert_eq!(collective_influence(&path(3), 1).scores, [0.0; 3]);
        // P5 centre, ℓ=2: (2-1)·((1-1)+(1-1)) = 0; node 1, ℓ=1: 1·(0 + 1) = 1
        assert_eq!(collective_influence(&path(5), 1).scores, [0.0, 1.0, 2.0, 1.0, 0.0]);
    }

    #[test]
    fn ranking_accessors() {
        let s = degree_centrality(&star(3));
        assert_eq!(s.top_label(), Some("0"));
        let r = s.ranking();
        assert_eq!(r[0].rank, 1);
        assert!(r[1..].iter().all(|x| x.rank == 2));
        assert_eq!(s.order(), ["0", "1", "2", "3"]);
    }
}
