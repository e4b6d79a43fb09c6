// SPDX-License-Identifier: Apache-2.0

//! Normalized Laplacian spectrum, von Neumann entropy and entropy centrality.

mod approx;
mod eigen;
mod entropy;
mod matrix;

pub use approx::{
    entropy_centrality_approx, entropy_centrality_approx_all, entropy_s1, entropy_s2,
    entropy_s2_published, trace_power,
};
pub use eigen::{MAX_QL_ITERATIONS, Spectrum, symmetric_eigenvalues};
pub use entropy::{
    ZERO_EIGENVALUE_TOLERANCE, entropy_centrality_all, entropy_centrality_exact,
    entropy_centrality_subgraph, entropy_of_spectrum, laplacian_spectrum, von_neumann_entropy,
};
pub use matrix::{SymmetricMatrix, normalized_laplacian};
