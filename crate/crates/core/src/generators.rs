// SPDX-License-Identifier: Apache-2.0

//! Seeded random-graph ensembles: Erdős–Rényi `G(n, m)`, a power-law
//! configuration model, and random geometric graphs in the unit cube.
//!
//! Every generator draws from `ChaCha8Rng::seed_from_u64(seed)`. The scale-free
//! generator uses stream `k` of that seed for its `k`-th attempt. Output is a
//! pure function of the config.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kv::KvBlock;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    ErGnm,
    SfConfig,
    Rgg,
}

impl Model {
    pub fn tag(self) -> &'static str {
        match self {
            Model::ErGnm => "er",
            Model::SfConfig => "sf",
            Model::Rgg => "rgg",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "er" | "er_gnm" | "gnm" => Ok(Model::ErGnm),
            "sf" | "sf_config" | "scale_free" => Ok(Model::SfConfig),
            "rgg" | "geometric" => Ok(Model::Rgg),
            other => Err(Error::domain(format!("unknown graph model '{other}'"))),
        }
    }
}

pub const RNG_FAMILY: &str = "chacha8";
pub const SF_MAX_ATTEMPTS: u64 = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub model: Model,
    pub n: usize,
    /// Edge count, ER only.
    pub m: usize,
    /// Power-law exponent, SF only.
    pub gamma: f64,
    /// Minimum degree, SF only.
    pub k_min: usize,
    /// Embedding dimension, RGG only.
    pub dim: usize,
    /// Target mean degree, RGG only.
    pub mean_degree: f64,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn er(n: usize, m: usize, seed: u64) -> Self {
        Self {
            model: Model::ErGnm,
            n,
            m,
            seed,
            ..Self::defaults()
        }
    }

    pub fn sf(n: usize, gamma: f64, k_min: usize, seed: u64) -> Self {
        Self {
            model: Model::SfConfig,
            n,
            gamma,
            k_min,
            seed,
            ..Self::defaults()
        }
    }

    pub fn rgg(n: usize, dim: usize, mean_degree: f64, seed: u64) -> Self {
        Self {
            model: Model::Rgg,
            n,
            dim,
            mean_degree,
            seed,
            ..Self::defaults()
        }
    }

    fn defaults() -> Self {
        Self {
            model: Model::ErGnm,
            n: 1000,
            m: 2000,
            gamma: 2.5,
            k_min: 2,
            dim: 3,
            mean_degree: 4.0,
            seed: 0,
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self {
            seed,
            ..self.clone()
        }
    }

    pub fn generate(&self) -> Result<Graph> {
        match self.model {
            Model::ErGnm => erdos_renyi_gnm(self.n, self.m, self.seed),
            Model::SfConfig => scale_free_configuration(self.n, self.gamma, self.k_min, self.seed),
            Model::Rgg => random_geometric(self.n, self.dim, self.mean_degree, self.seed),
        }
    }

    /// Only the keys relevant to the model, plus the RNG family.
    pub fn to_kv(&self) -> KvBlock {
        let mut kv = KvBlock::new();
        kv.push("model", self.model).push("n", self.n);
        match self.model {
            Model::ErGnm => {
                kv.push("m", self.m);
            }
            Model::SfConfig => {
                kv.push("gamma", self.gamma)
                    .push("k_min", self.k_min)
                    .push("k_max", structural_cutoff(self.n));
            }
            Model::Rgg => {
                kv.push("dim", self.dim).push("mean_degree", self.mean_degree);
            }
        }
        kv.push("seed", self.seed).push("rng", RNG_FAMILY);
        kv
    }

    pub fn from_kv(kv: &KvBlock) -> Result<Self> {
        let d = Self::defaults();
        Ok(Self {
            model: kv.require("model")?.parse()?,
            n: kv.parsed_or("n", d.n)?,
            m: kv.parsed_or("m", d.m)?,
            gamma: kv.parsed_or("gamma", d.gamma)?,
            k_min: kv.parsed_or("k_min", d.k_min)?,
            dim: kv.parsed_or("dim", d.dim)?,
            mean_degree: kv.parsed_or("mean_degree", d.mean_degree)?,
            seed: kv.parsed::<u64>("seed")?.ok_or_else(|| {
                Error::domain("generator config requires an explicit 'seed'")
            })?,
        })
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Maps `0..n(n-1)/2` onto pairs `(i, j)`, `i < j`, row by row.
fn pair_from_index(n: usize, k: usize) -> (usize, usize) {
    // row i starts at i*n - i*(i+1)/2
    let nf = n as f64;
    let kf = k as f64;
    let disc = (2.0 * nf - 1.0) * (2.0 * nf - 1.0) - 8.0 * kf;
    let mut i = (((2.0 * nf - 1.0) - disc.max(0.0).sqrt()) / 2.0).floor() as usize;
    let row_start = |i: usize| i * n - i * (i + 1) / 2;
    while i > 0 && row_start(i) > k {
        i -= 1;
    }
    while i + 1 < n && row_start(i + 1) <= k {
        i += 1;
    }
    (i, i + 1 + k - row_start(i))
}

/// Exactly `m` distinct edges drawn uniformly without replacement.
pub fn erdos_renyi_gnm(n: usize, m: usize, seed: u64) -> Result<Graph> {
    let total = n * n.saturating_sub(1) / 2;
    if m > total {
        return Err(Error::domain(format!(
            "G(n, m) with n = {n} admits at most {total} edges, asked for {m}"
        )));
    }
    let mut rng = rng_for(seed, 0);
    let picks = rand::seq::index::sample(&mut rng, total, m);
    let mut edges: Vec<(usize, usize)> = picks.iter().map(|k| pair_from_index(n, k)).collect();
    edges.sort_unstable();
    Graph::from_edges(n, &edges)
}

/// Largest degree allowed by the scale-free generator, `⌊√n⌋`.
pub fn structural_cutoff(n: usize) -> usize {
    (n as f64).sqrt().floor() as usize
}

fn sample_degrees(rng: &mut ChaCha8Rng, n: usize, gamma: f64, k_min: usize, k_max: usize) -> Vec<usize> {
    let weights: Vec<f64> = (k_min..=k_max).map(|k| (k as f64).powf(-gamma)).collect();
    let total: f64 = weights.iter().sum();
    let mut cdf = Vec::with_capacity(weights.len());
    let mut acc = 0.0;
    for w in &weights {
        acc += w / total;
        cdf.push(acc);
    }
    let draw = |rng: &mut ChaCha8Rng| {
        let u: f64 = rng.random();
        k_min + cdf.partition_point(|&c| c < u).min(cdf.len() - 1)
    };
    let mut degrees: Vec<usize> = (0..n).map(|_| draw(rng)).collect();
    // fix parity by redrawing one node until the stub count is even
    while degrees.iter().sum::<usize>() % 2 == 1 {
        let v = rng.random_range(0..n);
        degrees[v] = draw(rng);
    }
    degrees
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b { (a, b) } else { (b, a) }
}

/// Stub matching followed by degree-preserving rewiring of self-loops and
/// multi-edges. Returns `None` if the rewiring budget runs out.
fn wire_simple(rng: &mut ChaCha8Rng, degrees: &[usize]) -> Option<Vec<(usize, usize)>> {
    let mut stubs: Vec<usize> = degrees
        .iter()
        .enumerate()
        .flat_map(|(v, &d)| std::iter::repeat_n(v, d))
        .collect();
    stubs.shuffle(rng);
    let mut edges: Vec<(usize, usize)> = stubs.chunks_exact(2).map(|c| (c[0], c[1])).collect();
    let m = edges.len();
    if m < 2 {
        return edges.iter().all(|&(a, b)| a != b).then_some(edges);
    }
    let mut count: HashMap<(usize, usize), usize> = HashMap::with_capacity(m);
    for &(a, b) in &edges {
        *count.entry(key(a, b)).or_default() += 1;
    }
    let is_bad = |count: &HashMap<(usize, usize), usize>, (a, b): (usize, usize)| {
        a == b || count[&key(a, b)] > 1
    };
    let budget = 200 * m + 10_000;
    let mut spent = 0;
    loop {
        let bad: Vec<usize> = (0..m).filter(|&e| is_bad(&count, edges[e])).collect();
        if bad.is_empty() {
            return Some(edges);
        }
        for e in bad {
            if !is_bad(&count, edges[e]) {
                continue;
            }
            loop {
                spent += 1;
                if spent > budget {
                    return None;
                }
                let f = rng.random_range(0..m);
                if f == e {
                    continue;
                }
                let (u, v) = edges[e];
                let (mut x, mut y) = edges[f];
                if rng.random::<bool>() {
                    std::mem::swap(&mut x, &mut y);
                }
                if u == x || v == y {
                    continue;
                }
                let (p, q) = (key(u, x), key(v, y));
                if p == q || count.contains_key(&p) || count.contains_key(&q) {
                    continue;
                }
                for old in [key(u, v), key(x, y)] {
                    let c = count.get_mut(&old).expect("edge present");
                    *c -= 1;
                    if *c == 0 {
                        count.remove(&old);
                    }
                }
                count.insert(p, 1);
                count.insert(q, 1);
                edges[e] = (u, x);
                edges[f] = (v, y);
                break;
            }
        }
    }
}

/// Configuration model on a power-law degree sequence `P(k) ∝ k^-γ`,
/// `k ∈ [k_min, ⌊√n⌋]`, made simple by rewiring. Degrees are preserved
/// exactly by the rewiring step.
pub fn scale_free_configuration(n: usize, gamma: f64, k_min: usize, seed: u64) -> Result<Graph> {
    if gamma <= 2.0 || gamma.is_nan() {
        return Err(Error::domain(format!("power-law exponent must exceed 2, got {gamma}")));
    }
    if k_min < 1 {
        return Err(Error::domain("k_min must be at least 1"));
    }
    let k_max = structural_cutoff(n);
    if k_max < k_min {
        return Err(Error::domain(format!(
            "structural cutoff {k_max} for n = {n} is below k_min = {k_min}"
        )));
    }
    for attempt in 0..SF_MAX_ATTEMPTS {
        let mut rng = rng_for(seed, attempt);
        let degrees = sample_degrees(&mut rng, n, gamma, k_min, k_max);
        if let Some(mut edges) = wire_simple(&mut rng, &degrees) {
            for e in &mut edges {
                *e = key(e.0, e.1);
            }
            edges.sort_unstable();
            return Graph::from_edges(n, &edges);
        }
    }
    Err(Error::Generation(format!(
        "configuration model could not be made simple in {SF_MAX_ATTEMPTS} attempts"
    )))
}

/// Number of point pairs closer than `r`; points sorted by first coordinate.
fn pairs_within(points: &[Vec<f64>], r: f64) -> usize {
    let r2 = r * r;
    let mut count = 0;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            if q[0] - p[0] >= r {
                break;
            }
            let d2: f64 = p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum();
            if d2 < r2 {
                count += 1;
            }
        }
    }
    count
}

const RGG_BISECTION_STEPS: usize = 100;
pub const RGG_MEAN_DEGREE_TOLERANCE: f64 = 0.05;

/// Uniform points in `[0,1)^dim`, linked when closer than `r`. The radius is
/// found by bisection on the realized edge count, targeting
/// `round(mean_degree · n / 2)` edges.
pub fn random_geometric(n: usize, dim: usize, mean_degree: f64, seed: u64) -> Result<Graph> {
    if dim < 1 {
        return Err(Error::domain("dimension must be at least 1"));
    }
    if n < 2 || !(mean_degree > 0.0 && mean_degree <= (n - 1) as f64) {
        return Err(Error::domain(format!(
            "mean degree must lie in (0, n - 1], got {mean_degree} for n = {n}"
        )));
    }
    let mut rng = rng_for(seed, 0);
    let points: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..dim).map(|_| rng.random::<f64>()).collect())
        .collect();
    // sweep order; node ids follow generation order
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| points[a][0].total_cmp(&points[b][0]).then(a.cmp(&b)));
    let sorted: Vec<Vec<f64>> = order.iter().map(|&i| points[i].clone()).collect();

    let target = (mean_degree * n as f64 / 2.0).round().max(1.0) as usize;
    let (mut lo, mut hi) = (0.0f64, (dim as f64).sqrt() + 1e-9);
    for _ in 0..RGG_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if pairs_within(&sorted, mid) >= target {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    let r = hi;
    let realized = 2.0 * pairs_within(&sorted, r) as f64 / n as f64;
    if (realized - mean_degree).abs() > RGG_MEAN_DEGREE_TOLERANCE * mean_degree {
        return Err(Error::Generation(format!(
            "radius bisection reached mean degree {realized:.4}, target {mean_degree}"
        )));
    }
    let r2 = r * r;
    let mut edges = Vec::with_capacity(target);
    for (a, &i) in order.iter().enumerate() {
        for &j in &order[a + 1..] {
            if points[j][0] - points[i][0] >= r {
                break;
            }
            let d2: f64 = points[i]
                .iter()
                .zip(&points[j])
                .map(|(x, y)| (x - y) * (x - y))
                .sum();
            if d2 < r2 {
                edges.push(key(i, j));
            }
        }
    }
    edges.sort_unstable();
    Graph::from_edges(n, &edges)
}
