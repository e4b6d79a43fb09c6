// SPDX-License-Identifier: Apache-2.0
#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vnent_core::Graph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges).unwrap()
}

pub fn complete(n: usize) -> Graph {
    let mut e = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            e.push((i, j));
        }
    }
    graph(n, &e)
}

pub fn star(leaves: usize) -> Graph {
    let e: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    graph(leaves + 1, &e)
}

pub fn cycle(n: usize) -> Graph {
    let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    graph(n, &e)
}

pub fn wheel6() -> Graph {
    let mut text = String::new();
    for i in 1..=6 {
        text += &format!("v{i} v{}\nv7 v{i}\n", i % 6 + 1);
    }
    Graph::parse_edge_list(&text).unwrap()
}

/// G(n, p) with independent coin flips.
pub fn gnp(n: usize, p: f64, r: &mut ChaCha8Rng) -> Graph {
    let mut e = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if r.random_bool(p) {
                e.push((i, j));
            }
        }
    }
    graph(n, &e)
}

/// G(n, p), then every isolated node is tied to a random other node.
pub fn gnp_no_isolated(n: usize, p: f64, r: &mut ChaCha8Rng) -> Graph {
    assert!(n >= 2);
    let g = gnp(n, p, r);
    let mut e: Vec<_> = g.edges().collect();
    for v in 0..n {
        if g.degree(v) == 0 {
            let mut u = r.random_range(0..n - 1);
            if u >= v {
                u += 1;
            }
            e.push((v, u));
        }
    }
    graph(n, &e)
}

/// Every labelled graph on `n` nodes.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let e: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            graph(n, &e)
        })
        .collect()
}

pub fn all_connected_graphs(max_n: usize) -> Vec<Graph> {
    (1..=max_n)
        .flat_map(all_graphs)
        .filter(|g| g.connected_components().count() == 1)
        .collect()
}

pub fn random_permutation(n: usize, r: &mut ChaCha8Rng) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(r);
    p
}

/// `I - D^{-1/2} A D^{-1/2}` built straight from the adjacency matrix, with
/// zero rows for isolated nodes.
pub fn dense_laplacian(g: &Graph) -> DMatrix<f64> {
    let n = g.node_count();
    let a = DMatrix::from_fn(n, n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 });
    let d: Vec<f64> = (0..n).map(|i| a.row(i).sum()).collect();
    DMatrix::from_fn(n, n, |i, j| {
        if d[i] == 0.0 || d[j] == 0.0 {
            0.0
        } else if i == j {
            1.0
        } else {
            -a[(i, j)] / (d[i] * d[j]).sqrt()
        }
    })
}

/// Ascending eigenvalues from nalgebra's symmetric solver.
pub fn oracle_eigenvalues(g: &Graph) -> Vec<f64> {
    if g.node_count() == 0 {
        return Vec::new();
    }
    let mut ev: Vec<f64> = dense_laplacian(g).symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub fn oracle_entropy(g: &Graph) -> f64 {
    oracle_eigenvalues(g)
        .iter()
        .map(|&l| {
            let t = l / 2.0;
            if t <= 1e-14 { 0.0 } else { -t * t.ln() }
        })
        .sum()
}

/// `-t ln t` with the logarithm expanded around 1 to order `k`:
/// `-ln t ≈ Σ_{j=1..k} (1 - t)^j / j`.
pub fn truncated_series(g: &Graph, k: u32) -> f64 {
    oracle_eigenvalues(g)
        .iter()
        .map(|&l| {
            let t = l / 2.0;
            (1..=k).map(|j| t * (1.0 - t).powi(j as i32) / j as f64).sum::<f64>()
        })
        .sum()
}

/// All-pairs BFS distances and shortest-path counts.
pub fn all_pairs(g: &Graph) -> (Vec<Vec<Option<usize>>>, Vec<Vec<f64>>) {
    let n = g.node_count();
    let mut dist = vec![vec![None; n]; n];
    let mut sigma = vec![vec![0.0; n]; n];
    for s in 0..n {
        dist[s][s] = Some(0);
        sigma[s][s] = 1.0;
        let mut frontier = vec![s];
        let mut d = 0;
        while !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for &u in &frontier {
                for &w in g.neighbors(u) {
                    if dist[s][w].is_none() {
                        dist[s][w] = Some(d);
                        next.push(w);
                    }
                    if dist[s][w] == Some(d) {
                        sigma[s][w] += sigma[s][u];
                    }
                }
            }
            frontier = next;
        }
    }
    (dist, sigma)
}

/// Σ over unordered pairs {s, t} not containing v of σ_st(v) / σ_st.
pub fn brute_betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let (dist, sigma) = all_pairs(g);
    (0..n)
        .map(|v| {
            let mut b = 0.0;
            for s in 0..n {
                for t in s + 1..n {
                    if s == v || t == v {
                        continue;
                    }
                    if let (Some(st), Some(sv), Some(vt)) = (dist[s][t], dist[s][v], dist[v][t])
                        && sv + vt == st
                    {
                        b += sigma[s][v] * sigma[v][t] / sigma[s][t];
                    }
                }
            }
            b
        })
        .collect()
}

pub fn brute_closeness(g: &Graph) -> Vec<f64> {
    let (dist, _) = all_pairs(g);
    dist.iter()
        .map(|row| {
            let reach: Vec<usize> = row.iter().flatten().copied().filter(|&d| d > 0).collect();
            let total: usize = reach.iter().sum();
            if total == 0 { 0.0 } else { reach.len() as f64 / total as f64 }
        })
        .collect()
}

pub fn brute_clustering(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    (0..n)
        .map(|v| {
            let nb: Vec<usize> = (0..n).filter(|&u| g.has_edge(u, v)).collect();
            let k = nb.len();
            if k < 2 {
                return 0.0;
            }
            let mut links = 0;
            for a in 0..k {
                for b in a + 1..k {
                    if g.has_edge(nb[a], nb[b]) {
                        links += 1;
                    }
                }
            }
            2.0 * links as f64 / (k * (k - 1)) as f64
        })
        .collect()
}
