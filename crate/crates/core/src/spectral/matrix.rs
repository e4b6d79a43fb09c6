// SPDX-License-Identifier: Apache-2.0

use crate::graph::Graph;

/// Dense symmetric matrix, lower triangle packed row by row.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    order: usize,
    entries: Vec<f64>,
}

#[inline]
fn packed(i: usize, j: usize) -> usize {
    let (r, c) = if i >= j { (i, j) } else { (j, i) };
    r * (r + 1) / 2 + c
}

impl SymmetricMatrix {
    pub fn zeros(order: usize) -> Self {
        Self {
            order,
            entries: vec![0.0; order * (order + 1) / 2],
        }
    }

    /// Builds from a full row-major matrix, reading only the lower triangle.
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let mut m = Self::zeros(rows.len());
        for (i, row) in rows.iter().enumerate() {
            for j in 0..=i {
                m.set(i, j, row[j]);
            }
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[packed(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.entries[packed(i, j)] = value;
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    /// Full row-major copy.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

/// `ℒ = D^{-1/2} (D - A) D^{-1/2}`. Rows and columns of isolated nodes are
/// identically zero.
pub fn normalized_laplacian(g: &Graph) -> SymmetricMatrix {
    let n = g.node_count();
    let mut m = SymmetricMatrix::zeros(n);
    let inv_sqrt: Vec<f64> = g
        .degrees()
        .iter()
        .map(|&d| if d == 0 { 0.0 } else { 1.0 / (d as f64).sqrt() })
        .collect();
    for i in 0..n {
        if g.degree(i) > 0 {
            m.set(i, i, 1.0);
        }
        for &j in g.neighbors(i) {
            if j < i {
                m.set(i, j, -inv_sqrt[i] * inv_sqrt[j]);
            }
        }
    }
    m
}
