// SPDX-License-Identifier: Apache-2.0

//! Greedy dismantling and the measurements taken along the way: giant
//! component fraction `G(q)`, average clustering, and rank correlation
//! between the driving strategy and other centralities.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::centrality::{CentralityParams, CentralityScores, Method};
use crate::error::{Error, Result};
use crate::generators::GeneratorConfig;
use crate::graph::Graph;
use crate::kv::KvBlock;
use crate::plot;
use crate::ranking;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep {
    pub step: usize,
    pub q: f64,
    pub removed: String,
    pub giant: f64,
    pub avg_clustering: f64,
    /// One entry per method in [`DismantleTrace::spearman_methods`]; `None`
    /// when either score vector is constant.
    pub spearman: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DismantleTrace {
    pub strategy: Method,
    pub n0: usize,
    pub spearman_methods: Vec<Method>,
    pub steps: Vec<TraceStep>,
    pub meta: KvBlock,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DismantleOptions {
    pub params: CentralityParams,
    /// Recompute scores on the current graph before every removal. When
    /// false, the ranking of the intact graph is followed throughout.
    pub adaptive: bool,
}

impl Default for DismantleOptions {
    fn default() -> Self {
        Self {
            params: CentralityParams::default(),
            adaptive: true,
        }
    }
}

/// Number of removals for a stop fraction, `⌈stop_q · n0⌉` capped at `n0`.
pub fn removal_count(stop_q: f64, n0: usize) -> Result<usize> {
    if !(stop_q > 0.0 && stop_q <= 1.0) {
        return Err(Error::domain(format!("stop_q must lie in (0, 1], got {stop_q}")));
    }
    Ok(((stop_q * n0 as f64 - 1e-9).ceil() as usize).min(n0))
}

/// Spearman correlation of two equally long score vectors, `None` when one of
/// them has zero rank variance.
pub fn spearman_values(x: &[f64], y: &[f64]) -> Option<f64> {
    assert_eq!(x.len(), y.len());
    if x.len() < 2 {
        return None;
    }
    let rx = ranking::fractional_ranks(x);
    let ry = ranking::fractional_ranks(y);
    let n = x.len() as f64;
    let mx = rx.iter().sum::<f64>() / n;
    let my = ry.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Rank correlation between two score tables over the same node set.
pub fn spearman(x: &CentralityScores, y: &CentralityScores) -> Result<f64> {
    if x.len() < 2 {
        return Err(Error::domain("spearman needs at least two nodes"));
    }
    let y_aligned: Vec<f64> = if x.labels == y.labels {
        y.scores.clone()
    } else {
        if x.len() != y.len() {
            return Err(Error::domain("score tables cover different node sets"));
        }
        x.labels
            .iter()
            .map(|l| {
                y.get(l)
                    .ok_or_else(|| Error::domain(format!("node '{l}' missing from second table")))
            })
            .collect::<Result<_>>()?
    };
    spearman_values(&x.scores, &y_aligned)
        .ok_or_else(|| Error::domain("constant score vector: rank variance is zero"))
}

fn run_trace(
    g: &Graph,
    strategy: Method,
    stop_q: f64,
    spearman_methods: &[Method],
    opts: &DismantleOptions,
) -> Result<DismantleTrace> {
    let n0 = g.node_count();
    if n0 == 0 {
        return Err(Error::domain("cannot dismantle an empty graph"));
    }
    let total = removal_count(stop_q, n0)?;
    let fixed_order: Option<Vec<String>> = if opts.adaptive {
        None
    } else {
        let s = strategy.compute(g, &opts.params)?;
        Some(s.order().into_iter().map(str::to_owned).collect())
    };

    let mut current = g.clone();
    let mut scores = if opts.adaptive {
        Some(compute_lenient(strategy, &current, &opts.params)?)
    } else {
        None
    };
    let mut steps = Vec::with_capacity(total);
    for step in 1..=total {
        let victim = match (&fixed_order, &scores) {
            (Some(order), _) => current.index_of(&order[step - 1])?,
            (None, Some(s)) => s.top().expect("graph is non-empty"),
            (None, None) => unreachable!(),
        };
        let removed = current.label(victim).to_owned();
        current = current.remove_nodes(&[victim])?;

        let need_scores = opts.adaptive || !spearman_methods.is_empty();
        scores = if need_scores && !current.is_empty() && !(step == total && spearman_methods.is_empty()) {
            Some(compute_lenient(strategy, &current, &opts.params)?)
        } else {
            None
        };
        let spearman = spearman_methods
            .iter()
            .map(|&m| -> Result<Option<f64>> {
                let Some(driver) = &scores else { return Ok(None) };
                let other = compute_lenient(m, &current, &opts.params)?;
                Ok(spearman_values(&driver.scores, &other.scores))
            })
            .collect::<Result<Vec<_>>>()?;
        steps.push(TraceStep {
            step,
            q: step as f64 / n0 as f64,
            removed,
            giant: current.giant_component_fraction(n0)?,
            avg_clustering: if current.is_empty() {
                0.0
            } else {
                current.average_clustering()?
            },
            spearman,
        });
    }

    let mut meta = KvBlock::new();
    meta.push("strategy", strategy)
        .push("adaptive", opts.adaptive)
        .push("n0", n0)
        .push("m0", g.edge_count())
        .push("stop_q", stop_q)
        .push("ci_radius", opts.params.ci_radius)
        .push("pagerank_damping", opts.params.damping)
        .push("tool_version", TOOL_VERSION);
    if !spearman_methods.is_empty() {
        let tags: Vec<&str> = spearman_methods.iter().map(|m| m.tag()).collect();
        meta.push("spearman_methods", tags.join(","));
    }
    Ok(DismantleTrace {
        strategy,
        n0,
        spearman_methods: spearman_methods.to_vec(),
        steps,
        meta,
    })
}

/// Entropy centrality of a single surviving node is undefined; score it 0 so
/// traces can run to the last node.
fn compute_lenient(m: Method, g: &Graph, params: &CentralityParams) -> Result<CentralityScores> {
    if m == Method::CeExact && g.node_count() < 2 {
        return Ok(CentralityScores::new(m, g, vec![0.0; g.node_count()]));
    }
    m.compute(g, params)
}

/// Greedy removal of the top-ranked node until `⌈stop_q · N0⌉` nodes are
/// gone. Scores are recomputed after every removal unless
/// `opts.adaptive` is off. With [`Method::CeExact`] each step costs one
/// eigendecomposition per surviving node.
pub fn dismantle(g: &Graph, strategy: Method, stop_q: f64, opts: &DismantleOptions) -> Result<DismantleTrace> {
    run_trace(g, strategy, stop_q, &[], opts)
}

/// Dismantles by an entropy-centrality driver and, after every removal,
/// records the Spearman correlation between the driver's scores and each
/// method in `others` on the surviving graph.
pub fn correlation_trace(
    g: &Graph,
    driver: Method,
    others: &[Method],
    stop_q: f64,
    opts: &DismantleOptions,
) -> Result<DismantleTrace> {
    if !driver.is_entropy() {
        return Err(Error::domain(format!(
            "correlation traces are driven by CE_EXACT or CE_APPROX, not {driver}"
        )));
    }
    run_trace(g, driver, stop_q, others, opts)
}

/// Formats like C's `%.12g`.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    let s = if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_owned()
        } else {
            s
        }
    } else {
        let s = format!("{x:.11e}");
        let (mant, e) = s.split_once('e').expect("exponent");
        let mant = if mant.contains('.') {
            mant.trim_end_matches('0').trim_end_matches('.')
        } else {
            mant
        };
        format!("{mant}e{e}")
    };
    if s == "-0" { "0".into() } else { s }
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    Error::Parse {
        line,
        message: e.to_string(),
    }
}

impl DismantleTrace {
    pub fn header(&self) -> Vec<String> {
        let mut h: Vec<String> = ["step", "q", "removed_node", "giant_fraction", "avg_clustering"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        h.extend(self.spearman_methods.iter().map(|m| format!("spearman_{}", m.tag())));
        h
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        w.write_record(self.header()).expect("in-memory write");
        for s in &self.steps {
            let mut row = vec![
                s.step.to_string(),
                fmt_sig(s.q),
                s.removed.clone(),
                fmt_sig(s.giant),
                fmt_sig(s.avg_clustering),
            ];
            row.extend(s.spearman.iter().map(|v| v.map(fmt_sig).unwrap_or_default()));
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    /// Parses a trace CSV together with its metadata sidecar text.
    pub fn from_csv(csv_text: &str, meta_text: &str) -> Result<Self> {
        let meta = KvBlock::parse(meta_text)?;
        let strategy: Method = meta.require("strategy")?.parse()?;
        let n0: usize = meta
            .parsed("n0")?
            .ok_or_else(|| Error::domain("metadata lacks n0"))?;
        let mut r = csv::ReaderBuilder::new().from_reader(csv_text.as_bytes());
        let header = r.headers().map_err(csv_error)?.clone();
        let fixed = ["step", "q", "removed_node", "giant_fraction", "avg_clustering"];
        if header.len() < fixed.len() || header.iter().zip(fixed).any(|(a, b)| a != b) {
            return Err(Error::Parse {
                line: 1,
                message: format!("unexpected trace header {header:?}"),
            });
        }
        let spearman_methods = header
            .iter()
            .skip(fixed.len())
            .map(|h| {
                h.strip_prefix("spearman_")
                    .ok_or_else(|| Error::Parse {
                        line: 1,
                        message: format!("unexpected column '{h}'"),
                    })
                    .and_then(str::parse)
            })
            .collect::<Result<Vec<Method>>>()?;
        let mut steps = Vec::new();
        for (i, rec) in r.records().enumerate() {
            let rec = rec.map_err(csv_error)?;
            let line = i + 2;
            let num = |j: usize| -> Result<f64> {
                rec[j].parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("column {} is not a number: '{}'", header[j].to_owned(), &rec[j]),
                })
            };
            steps.push(TraceStep {
                step: rec[0].parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("bad step '{}'", &rec[0]),
                })?,
                q: num(1)?,
                removed: rec[2].to_owned(),
                giant: num(3)?,
                avg_clustering: num(4)?,
                spearman: (fixed.len()..rec.len())
                    .map(|j| if rec[j].is_empty() { Ok(None) } else { num(j).map(Some) })
                    .collect::<Result<_>>()?,
            });
        }
        Ok(Self {
            strategy,
            n0,
            spearman_methods,
            steps,
            meta,
        })
    }

    pub fn write(&self, csv_path: &Path) -> Result<PathBuf> {
        fs::write(csv_path, self.to_csv()).map_err(|e| Error::io(csv_path, e))?;
        let meta_path = csv_path.with_extension("meta");
        fs::write(&meta_path, self.meta.to_text()).map_err(|e| Error::io(&meta_path, e))?;
        Ok(meta_path)
    }

    pub fn read(csv_path: &Path) -> Result<Self> {
        let meta_path = csv_path.with_extension("meta");
        let csv_text = fs::read_to_string(csv_path).map_err(|e| Error::io(csv_path, e))?;
        let meta_text = fs::read_to_string(&meta_path).map_err(|e| Error::io(&meta_path, e))?;
        Self::from_csv(&csv_text, &meta_text)
    }

    pub fn giant_series(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.giant).collect()
    }

    pub fn clustering_series(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.avg_clustering).collect()
    }

    /// Mean of `G(q)` over the steps with `q ≤ q_max`, i.e. the area under
    /// the step curve on `[0, q_max]` divided by `q_max`.
    pub fn giant_area(&self, q_max: f64) -> f64 {
        let vals: Vec<f64> = self
            .steps
            .iter()
            .filter(|s| s.q <= q_max + 1e-12)
            .map(|s| s.giant)
            .collect();
        vals.iter().sum::<f64>() / vals.len().max(1) as f64
    }

    /// Record whose `q` is closest to `q`.
    pub fn at_q(&self, q: f64) -> Option<&TraceStep> {
        self.steps
            .iter()
            .min_by(|a, b| (a.q - q).abs().total_cmp(&(b.q - q).abs()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Track {
    Giant,
    Clustering,
    Spearman,
}

impl Track {
    pub fn tag(self) -> &'static str {
        match self {
            Track::Giant => "giant",
            Track::Clustering => "clustering",
            Track::Spearman => "spearman",
        }
    }
}

impl std::str::FromStr for Track {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "giant" | "g" | "gq" => Ok(Track::Giant),
            "clustering" | "c" | "avg_clustering" => Ok(Track::Clustering),
            "spearman" | "correlation" => Ok(Track::Spearman),
            other => Err(Error::domain(format!("unknown measurement track '{other}'"))),
        }
    }
}

/// Ensemble experiment: `replicates` graphs from `generator` with seeds
/// `seed, seed + 1, ...`, each dismantled by every strategy.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub name: String,
    pub generator: GeneratorConfig,
    pub replicates: usize,
    /// Dismantling strategies; for the Spearman track the single driver.
    pub strategies: Vec<Method>,
    /// Methods correlated against the driver (Spearman track only).
    pub spearman_methods: Vec<Method>,
    pub track: Track,
    pub stop_q: f64,
    pub options: DismantleOptions,
    pub svg: bool,
}

fn method_list(s: &str) -> Result<Vec<Method>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let kv = KvBlock::parse(text)?;
        let track: Track = kv.get("track").unwrap_or("giant").parse()?;
        let mut strategies = method_list(kv.get("strategies").unwrap_or(""))?;
        if let Some(d) = kv.get("driver") {
            strategies = vec![d.parse()?];
        }
        if strategies.is_empty() {
            return Err(Error::domain("experiment recipe names no strategies"));
        }
        let spearman_methods = method_list(kv.get("methods").unwrap_or(""))?;
        if track == Track::Spearman {
            if strategies.len() != 1 || !strategies[0].is_entropy() {
                return Err(Error::domain(
                    "spearman track needs exactly one entropy driver (ce_exact or ce_approx)",
                ));
            }
            if spearman_methods.is_empty() {
                return Err(Error::domain("spearman track needs 'methods'"));
            }
        }
        let defaults = CentralityParams::default();
        let cfg = Self {
            name: kv.get("name").unwrap_or("experiment").to_owned(),
            generator: GeneratorConfig::from_kv(&kv)?,
            replicates: kv.parsed_or("replicates", 20)?,
            strategies,
            spearman_methods,
            track,
            stop_q: kv.parsed_or("stop_q", 0.2)?,
            options: DismantleOptions {
                adaptive: kv.parsed_or("adaptive", true)?,
                params: CentralityParams {
                    damping: kv.parsed_or("damping", defaults.damping)?,
                    pagerank_tol: defaults.pagerank_tol,
                    ci_radius: kv.parsed_or("ci_radius", defaults.ci_radius)?,
                },
            },
            svg: kv.parsed_or("svg", false)?,
        };
        if cfg.replicates == 0 {
            return Err(Error::domain("replicates must be at least 1"));
        }
        removal_count(cfg.stop_q, 1)?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn seeds(&self) -> Vec<u64> {
        (0..self.replicates as u64)
            .map(|r| self.generator.seed.wrapping_add(r))
            .collect()
    }

    fn column_prefix(&self) -> &'static str {
        match self.track {
            Track::Giant => "G",
            Track::Clustering => "C",
            Track::Spearman => "spearman",
        }
    }
}

/// Pointwise ensemble means on the shared `q` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSummary {
    pub q: Vec<f64>,
    pub columns: Vec<(String, Vec<Option<f64>>)>,
}

impl EnsembleSummary {
    pub fn column(&self, name: &str) -> Option<&[Option<f64>]> {
        self.columns
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_slice())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("q");
        for (name, _) in &self.columns {
            let _ = write!(out, ",{name}");
        }
        out.push('\n');
        for (i, q) in self.q.iter().enumerate() {
            out.push_str(&fmt_sig(*q));
            for (_, col) in &self.columns {
                out.push(',');
                if let Some(v) = col[i] {
                    out.push_str(&fmt_sig(v));
                }
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    /// `traces[s][r]`: strategy `s`, replicate `r`.
    pub traces: Vec<Vec<DismantleTrace>>,
    pub summary: EnsembleSummary,
}

fn mean_of(values: impl Iterator<Item = Option<f64>>) -> Option<f64> {
    let (sum, count) = values.flatten().fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    (count > 0).then(|| sum / count as f64)
}

/// Runs every replicate (in parallel) and averages the traces pointwise.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    let seeds = cfg.seeds();
    let graphs = seeds
        .par_iter()
        .map(|&s| cfg.generator.with_seed(s).generate())
        .collect::<Result<Vec<Graph>>>()?;
    let mut traces = Vec::with_capacity(cfg.strategies.len());
    for &strategy in &cfg.strategies {
        let runs = graphs
            .par_iter()
            .zip(&seeds)
            .map(|(g, &seed)| {
                let mut t = match cfg.track {
                    Track::Spearman => correlation_trace(
                        g,
                        strategy,
                        &cfg.spearman_methods,
                        cfg.stop_q,
                        &cfg.options,
                    )?,
                    _ => dismantle(g, strategy, cfg.stop_q, &cfg.options)?,
                };
                for (k, v) in cfg.generator.with_seed(seed).to_kv().iter() {
                    t.meta.push(&format!("generator.{k}"), v);
                }
                Ok(t)
            })
            .collect::<Result<Vec<DismantleTrace>>>()?;
        traces.push(runs);
    }

    let q: Vec<f64> = traces[0][0].steps.iter().map(|s| s.q).collect();
    let mut columns = Vec::new();
    for (s, runs) in cfg.strategies.iter().zip(&traces) {
        match cfg.track {
            Track::Giant | Track::Clustering => {
                let col = (0..q.len())
                    .map(|i| {
                        mean_of(runs.iter().map(|t| {
                            let st = &t.steps[i];
                            Some(if cfg.track == Track::Giant { st.giant } else { st.avg_clustering })
                        }))
                    })
                    .collect();
                columns.push((format!("{}_{}", cfg.column_prefix(), s.tag()), col));
            }
            Track::Spearman => {
                for (j, m) in cfg.spearman_methods.iter().enumerate() {
                    let col = (0..q.len())
                        .map(|i| mean_of(runs.iter().map(|t| t.steps[i].spearman[j])))
                        .collect();
                    columns.push((format!("spearman_{}", m.tag()), col));
                }
            }
        }
    }
    Ok(ExperimentResult {
        config: cfg.clone(),
        traces,
        summary: EnsembleSummary { q, columns },
    })
}

impl ExperimentResult {
    pub fn metadata(&self) -> KvBlock {
        let cfg = &self.config;
        let mut kv = cfg.generator.to_kv();
        let seeds: Vec<String> = cfg.seeds().iter().map(u64::to_string).collect();
        let strategies: Vec<&str> = cfg.strategies.iter().map(|m| m.tag()).collect();
        kv.push("name", &cfg.name)
            .push("track", cfg.track.tag())
            .push("replicates", cfg.replicates)
            .push("seeds", seeds.join(","))
            .push("strategies", strategies.join(","))
            .push("stop_q", cfg.stop_q)
            .push("adaptive", cfg.options.adaptive)
            .push("ci_radius", cfg.options.params.ci_radius)
            .push("tool_version", TOOL_VERSION);
        if !cfg.spearman_methods.is_empty() {
            let m: Vec<&str> = cfg.spearman_methods.iter().map(|m| m.tag()).collect();
            kv.push("methods", m.join(","));
        }
        kv
    }

    /// Writes the summary CSV and sidecar, one trace CSV + sidecar per
    /// strategy and replicate, and optionally an SVG chart. Returns every path
    /// written.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let name = &self.config.name;
        let mut written = Vec::new();
        let summary = dir.join(format!("{name}.csv"));
        fs::write(&summary, self.summary.to_csv()).map_err(|e| Error::io(&summary, e))?;
        written.push(summary);
        let meta = dir.join(format!("{name}.meta"));
        fs::write(&meta, self.metadata().to_text()).map_err(|e| Error::io(&meta, e))?;
        written.push(meta);
        for (s, runs) in self.config.strategies.iter().zip(&self.traces) {
            for (t, seed) in runs.iter().zip(self.config.seeds()) {
                let path = dir.join(format!("{name}_{}_seed{seed}.csv", s.tag()));
                let meta = t.write(&path)?;
                written.push(path);
                written.push(meta);
            }
        }
        if self.config.svg {
            let path = dir.join(format!("{name}.svg"));
            let y_label = match self.config.track {
                Track::Giant => "G(q)",
                Track::Clustering => "average clustering",
                Track::Spearman => "Spearman r",
            };
            let series: Vec<(String, Vec<(f64, f64)>)> = self
                .summary
                .columns
                .iter()
                .map(|(n, col)| {
                    let pts = self
                        .summary
                        .q
                        .iter()
                        .zip(col)
                        .filter_map(|(&q, v)| v.map(|v| (q, v)))
                        .collect();
                    (n.clone(), pts)
                })
                .collect();
            let svg = plot::line_chart(name, "q", y_label, &series);
            fs::write(&path, svg).map_err(|e| Error::io(&path, e))?;
            written.push(path);
        }
        Ok(written)
    }
}
