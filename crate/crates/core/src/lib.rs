// SPDX-License-Identifier: Apache-2.0

//! Von Neumann entropy centrality for undirected simple graphs.
//!
//! The entropy of a graph is taken over the spectrum of its normalized
//! Laplacian, `S(G) = -Σ (λ/2) ln(λ/2)`. The centrality of a node (or of a
//! node set) is the absolute change in `S` when it is deleted together with
//! its incident edges. Besides the exact route through a dense symmetric
//! eigensolver, the crate provides the degree-local trace approximations
//! `S₁`, `S₂` and a per-node approximation that only looks two hops away.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`graph`] | [`Graph`], edge-list parsing, components, clustering |
//! | [`spectral`] | normalized Laplacian, eigenvalues, entropy and entropy centrality |
//! | [`centrality`] | baseline measures (degree, betweenness, closeness, ...) |
//! | [`generators`] | seeded ER / scale-free / random geometric ensembles |
//! | [`experiments`] | greedy dismantling, Spearman traces, ensemble driver |
//! | [`datasets`] | bundled karate, Florentine and gift-giving networks |

pub mod centrality;
pub mod datasets;
pub mod error;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod kv;
pub mod plot;
pub mod ranking;
pub mod spectral;

pub use centrality::{CentralityScores, Method};
pub use error::{Error, Result};
pub use experiments::{DismantleTrace, ExperimentConfig, TraceStep};
pub use generators::{GeneratorConfig, Model};
pub use graph::{ComponentPartition, Graph};
pub use spectral::{Spectrum, SymmetricMatrix};
