// SPDX-License-Identifier: Apache-2.0

//! The `vnent` command line. Every subcommand writes its report to the
//! supplied writer, so the commands can be driven from tests.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result, bail};
use clap::{Args, Parser, Subcommand, ValueEnum};
use vnent_core::centrality::{CentralityParams, Method};
use vnent_core::datasets::Dataset;
use vnent_core::experiments::{
    DismantleOptions, ExperimentConfig, correlation_trace, dismantle, fmt_sig, run_experiment, spearman,
};
use vnent_core::generators::GeneratorConfig;
use vnent_core::spectral;
use vnent_core::Graph;

/// Environment variable naming a directory that overrides the bundled
/// datasets: `--data karate` loads `$VNENT_DATA_DIR/karate.edges` if present.
pub const DATA_DIR_ENV: &str = "VNENT_DATA_DIR";

#[derive(Debug, Parser)]
#[command(name = "vnent", version, about = "Von Neumann entropy centrality and network dismantling")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Score and rank every node by one centrality measure.
    Centrality {
        #[command(flatten)]
        input: InputArgs,
        /// dc, bc, cc, ec, pr, kc, clc, ci, ce_exact or ce_approx.
        #[arg(long, short)]
        method: Method,
        #[command(flatten)]
        params: ParamArgs,
        /// CSV destination (stdout if omitted).
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Von Neumann entropy of a graph, exact or approximated.
    Entropy {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Level::Exact)]
        level: Level,
    },
    /// Greedy removal of top-ranked nodes, logging G(q) and clustering.
    Dismantle {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, short, default_value = "ce_approx")]
        strategy: Method,
        /// Fraction of the original nodes to remove.
        #[arg(long, default_value_t = 0.2)]
        stop_q: f64,
        /// Rank once on the intact graph instead of after every removal.
        #[arg(long = "static")]
        static_order: bool,
        /// Methods to correlate with the (entropy) strategy after each removal.
        #[arg(long, value_delimiter = ',')]
        spearman: Vec<Method>,
        #[command(flatten)]
        params: ParamArgs,
        /// Trace CSV destination; a `.meta` sidecar is written next to it.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Sample a random graph and write it as an edge list.
    Generate {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long, short)]
        n: usize,
        /// Edge count (er).
        #[arg(long, short, default_value_t = 2000)]
        m: usize,
        /// Power-law exponent (sf).
        #[arg(long, default_value_t = 2.5)]
        gamma: f64,
        /// Minimum degree (sf).
        #[arg(long, default_value_t = 2)]
        k_min: usize,
        /// Embedding dimension (rgg).
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// Target mean degree (rgg).
        #[arg(long, default_value_t = 4.0)]
        mean_degree: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run an ensemble experiment described by a key=value recipe.
    Experiment {
        config: PathBuf,
        /// Directory for the summary, per-replicate traces and sidecars.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Spearman rank correlation between two centrality measures.
    Spearman {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        x: Method,
        #[arg(long)]
        y: Method,
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Edge-list file.
    #[arg(long, short, conflicts_with = "data", required_unless_present = "data")]
    pub input: Option<PathBuf>,
    /// Bundled dataset: karate, florentine or gift.
    #[arg(long)]
    pub data: Option<String>,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    /// Ball radius for collective influence.
    #[arg(long, default_value_t = 2)]
    pub ci_radius: usize,
    #[arg(long, default_value_t = 0.85)]
    pub damping: f64,
}

impl ParamArgs {
    fn params(&self) -> CentralityParams {
        CentralityParams {
            ci_radius: self.ci_radius,
            damping: self.damping,
            ..CentralityParams::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Exact,
    S1,
    S2,
    /// Second order with the coefficients as originally published.
    S2Published,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Er,
    Sf,
    Rgg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
}

pub fn load_input(args: &InputArgs) -> Result<Graph> {
    if let Some(path) = &args.input {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return Graph::parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()));
    }
    let name = args.data.as_deref().expect("clap enforces --input or --data");
    if let Some(dir) = std::env::var_os(DATA_DIR_ENV) {
        let path = Path::new(&dir).join(format!("{name}.edges"));
        if path.is_file() {
            return load_input(&InputArgs {
                input: Some(path),
                data: None,
            });
        }
    }
    let dataset: Dataset = name.parse()?;
    Ok(dataset.load())
}

fn emit(out: &mut dyn Write, dest: Option<&Path>, text: &str) -> Result<()> {
    match dest {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => out.write_all(text.as_bytes()).context("writing to stdout"),
    }
}

pub fn centrality_csv(g: &Graph, method: Method, params: &CentralityParams) -> Result<String> {
    let scores = method.compute(g, params)?;
    let mut csv = String::from("node,score,rank\n");
    for r in scores.ranking() {
        csv.push_str(&format!("{},{},{}\n", r.label, fmt_sig(r.score), r.rank));
    }
    Ok(csv)
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Centrality {
            input,
            method,
            params,
            output,
        } => {
            let g = load_input(&input)?;
            let csv = centrality_csv(&g, method, &params.params())?;
            emit(out, output.as_deref(), &csv)
        }
        Command::Entropy { input, level } => {
            let g = load_input(&input)?;
            let value = match level {
                Level::Exact => spectral::von_neumann_entropy(&g)?,
                Level::S1 => spectral::entropy_s1(&g)?,
                Level::S2 => spectral::entropy_s2(&g)?,
                Level::S2Published => spectral::entropy_s2_published(&g)?,
            };
            writeln!(out, "entropy={}", fmt_sig(value))?;
            writeln!(out, "level={}", level.to_possible_value().expect("named").get_name())?;
            writeln!(out, "nodes={}", g.node_count())?;
            writeln!(out, "edges={}", g.edge_count())?;
            if level == Level::Exact {
                let s = spectral::laplacian_spectrum(&g)?;
                writeln!(out, "eigen_min={}", s.min().map(fmt_sig).unwrap_or_default())?;
                writeln!(out, "eigen_max={}", s.max().map(fmt_sig).unwrap_or_default())?;
                writeln!(out, "eigen_sum={}", fmt_sig(s.sum()))?;
                writeln!(
                    out,
                    "zero_eigenvalues={}",
                    s.zero_count(spectral::ZERO_EIGENVALUE_TOLERANCE)
                )?;
            }
            Ok(())
        }
        Command::Dismantle {
            input,
            strategy,
            stop_q,
            static_order,
            spearman,
            params,
            output,
        } => {
            let g = load_input(&input)?;
            let opts = DismantleOptions {
                params: params.params(),
                adaptive: !static_order,
            };
            let mut trace = if spearman.is_empty() {
                dismantle(&g, strategy, stop_q, &opts)?
            } else {
                correlation_trace(&g, strategy, &spearman, stop_q, &opts)?
            };
            if let Some(p) = &input.input {
                trace.meta.push("input", p.display());
            } else if let Some(d) = &input.data {
                trace.meta.push("dataset", d);
            }
            match output {
                Some(p) => {
                    let meta = trace.write(&p)?;
                    writeln!(out, "wrote {} and {}", p.display(), meta.display())?;
                    Ok(())
                }
                None => emit(out, None, &trace.to_csv()),
            }
        }
        Command::Generate {
            model,
            n,
            m,
            gamma,
            k_min,
            dim,
            mean_degree,
            seed,
            output,
        } => {
            let cfg = match model {
                ModelArg::Er => GeneratorConfig::er(n, m, seed),
                ModelArg::Sf => GeneratorConfig::sf(n, gamma, k_min, seed),
                ModelArg::Rgg => GeneratorConfig::rgg(n, dim, mean_degree, seed),
            };
            let g = cfg.generate()?;
            let text = cfg.to_kv().to_header() + &g.to_edge_list();
            emit(out, output.as_deref(), &text)
        }
        Command::Experiment {
            config,
            out_dir,
            format,
        } => {
            let mut cfg = ExperimentConfig::load(&config)
                .with_context(|| format!("recipe {}", config.display()))?;
            if format == Format::Svg {
                cfg.svg = true;
            }
            let res = run_experiment(&cfg)?;
            let files = res.write(&out_dir)?;
            for f in files.iter().filter(|f| {
                let ext = f.extension().and_then(|e| e.to_str());
                f.file_stem() == Some(cfg.name.as_ref()) && ext != Some("meta")
            }) {
                writeln!(out, "wrote {}", f.display())?;
            }
            writeln!(out, "{} files in {}", files.len(), out_dir.display())?;
            Ok(())
        }
        Command::Spearman {
            input,
            x,
            y,
            params,
        } => {
            let g = load_input(&input)?;
            let p = params.params();
            if g.node_count() < 2 {
                bail!("spearman needs at least two nodes");
            }
            let r = spearman(&x.compute(&g, &p)?, &y.compute(&g, &p)?)?;
            writeln!(out, "{}", fmt_sig(r))?;
            Ok(())
        }
    }
}
