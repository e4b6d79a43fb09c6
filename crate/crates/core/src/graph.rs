// SPDX-License-Identifier: Apache-2.0

//! Undirected simple graphs with opaque string labels.
//!
//! Nodes are stored densely as `0..N`; the original labels are kept alongside
//! so that every report can speak in terms of the input file. A [`Graph`] is
//! immutable once built; [`Graph::remove_nodes`] returns a fresh copy.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<Vec<usize>>,
    edges: usize,
}

/// Incremental construction of a [`Graph`]. Repeated edges are merged,
/// self-loops are rejected.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<Vec<usize>>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_nodes(n: usize) -> Self {
        let mut b = Self::new();
        for i in 0..n {
            b.add_node(&i.to_string());
        }
        b
    }

    /// Returns the index of `label`, inserting it if it is new.
    pub fn add_node(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), i);
        self.adjacency.push(Vec::new());
        i
    }

    pub fn add_edge(&mut self, a: &str, b: &str) -> Result<()> {
        if a == b {
            return Err(Error::SelfLoop {
                line: 0,
                node: a.to_owned(),
            });
        }
        let i = self.add_node(a);
        let j = self.add_node(b);
        self.adjacency[i].push(j);
        self.adjacency[j].push(i);
        Ok(())
    }

    /// Index-based edge insertion for nodes already present.
    pub fn add_edge_index(&mut self, i: usize, j: usize) -> Result<()> {
        let n = self.labels.len();
        if i >= n || j >= n {
            return Err(Error::UnknownNode(i.max(j).to_string()));
        }
        if i == j {
            return Err(Error::SelfLoop {
                line: 0,
                node: self.labels[i].clone(),
            });
        }
        self.adjacency[i].push(j);
        self.adjacency[j].push(i);
        Ok(())
    }

    pub fn build(mut self) -> Graph {
        let mut twice = 0;
        for nbrs in &mut self.adjacency {
            nbrs.sort_unstable();
            nbrs.dedup();
            twice += nbrs.len();
        }
        Graph {
            labels: self.labels,
            index: self.index,
            adjacency: self.adjacency,
            edges: twice / 2,
        }
    }
}

/// Connected components, numbered so that component 0 is the largest.
/// Equal-sized components are ordered by their smallest node index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    pub labels: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl ComponentPartition {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    pub fn largest(&self) -> usize {
        self.sizes.first().copied().unwrap_or(0)
    }

    /// Node indices belonging to component `c`, ascending.
    pub fn members(&self, c: usize) -> Vec<usize> {
        self.labels
            .iter()
            .enumerate()
            .filter(|&(_, &l)| l == c)
            .map(|(i, _)| i)
            .collect()
    }
}

impl Graph {
    pub fn empty() -> Self {
        GraphBuilder::new().build()
    }

    /// Graph on nodes labelled `"0".."n-1"` from index pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut b = GraphBuilder::with_nodes(n);
        for &(i, j) in edges {
            b.add_edge_index(i, j)?;
        }
        Ok(b.build())
    }

    /// Parses the line-oriented edge-list format: `#` comments, `a b` edge
    /// lines and `node x` declarations for isolated nodes.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut b = GraphBuilder::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                ["node", label] => {
                    b.add_node(label);
                }
                [a, c] if a == c => {
                    return Err(Error::SelfLoop {
                        line: lineno + 1,
                        node: (*a).to_owned(),
                    });
                }
                [a, c] => b.add_edge(a, c)?,
                _ => {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        message: format!(
                            "expected two node labels or 'node <label>', found {} token(s)",
                            tokens.len()
                        ),
                    });
                }
            }
        }
        Ok(b.build())
    }

    pub fn load_edge_list(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_edge_list(&text)
    }

    /// Serializes back into the edge-list format. Nodes are declared first so
    /// that node order survives a round trip.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for label in &self.labels {
            let _ = writeln!(out, "node {label}");
        }
        for (i, j) in self.edges() {
            let _ = writeln!(out, "{} {}", self.labels[i], self.labels[j]);
        }
        out
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownNode(label.to_owned()))
    }

    pub fn indices_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        labels.iter().map(|l| self.index_of(l.as_ref())).collect()
    }

    pub(crate) fn check_node(&self, v: usize) -> Result<()> {
        if v < self.node_count() {
            Ok(())
        } else {
            Err(Error::UnknownNode(format!("#{v}")))
        }
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].binary_search(&j).is_ok()
    }

    /// Edges as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, nbrs)| nbrs.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    pub fn isolated_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.node_count()).filter(|&i| self.adjacency[i].is_empty())
    }

    /// `G \ s`: drops the given nodes and every incident edge. Surviving nodes
    /// keep their labels and relative order.
    pub fn remove_nodes(&self, nodes: &[usize]) -> Result<Graph> {
        let n = self.node_count();
        let mut gone = vec![false; n];
        for &v in nodes {
            self.check_node(v)?;
            gone[v] = true;
        }
        let mut remap = vec![usize::MAX; n];
        let mut labels = Vec::with_capacity(n);
        for i in 0..n {
            if !gone[i] {
                remap[i] = labels.len();
                labels.push(self.labels[i].clone());
            }
        }
        let mut adjacency = Vec::with_capacity(labels.len());
        let mut twice = 0;
        for i in 0..n {
            if gone[i] {
                continue;
            }
            let nbrs: Vec<usize> = self.adjacency[i]
                .iter()
                .filter(|&&j| !gone[j])
                .map(|&j| remap[j])
                .collect();
            twice += nbrs.len();
            adjacency.push(nbrs);
        }
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        Ok(Graph {
            labels,
            index,
            adjacency,
            edges: twice / 2,
        })
    }

    pub fn remove_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Graph> {
        let idx = self.indices_of(labels)?;
        self.remove_nodes(&idx)
    }

    /// Same structure with nodes permuted: node `i` of `self` becomes node
    /// `perm[i]` of the result.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let n = self.node_count();
        assert_eq!(perm.len(), n, "permutation length mismatch");
        let mut labels = vec![String::new(); n];
        for i in 0..n {
            labels[perm[i]] = self.labels[i].clone();
        }
        let mut b = GraphBuilder::new();
        for l in &labels {
            b.add_node(l);
        }
        for (i, j) in self.edges() {
            b.adjacency[perm[i]].push(perm[j]);
            b.adjacency[perm[j]].push(perm[i]);
        }
        b.build()
    }

    /// Breadth-first labelling of connected components.
    pub fn connected_components(&self) -> ComponentPartition {
        let n = self.node_count();
        let mut raw = vec![usize::MAX; n];
        let mut raw_sizes = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if raw[s] != usize::MAX {
                continue;
            }
            let c = raw_sizes.len();
            raw[s] = c;
            queue.push_back(s);
            let mut size = 0;
            while let Some(v) = queue.pop_front() {
                size += 1;
                for &w in &self.adjacency[v] {
                    if raw[w] == usize::MAX {
                        raw[w] = c;
                        queue.push_back(w);
                    }
                }
            }
            raw_sizes.push(size);
        }
        // raw ids are already ordered by smallest member; a stable sort by
        // size keeps that as the tie-break.
        let mut order: Vec<usize> = (0..raw_sizes.len()).collect();
        order.sort_by(|&a, &b| raw_sizes[b].cmp(&raw_sizes[a]));
        let mut rank = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        ComponentPartition {
            labels: raw.iter().map(|&c| rank[c]).collect(),
            sizes: order.iter().map(|&c| raw_sizes[c]).collect(),
        }
    }

    /// `|largest component| / n0`, where `n0` is the size of the graph before
    /// any removals.
    pub fn giant_component_fraction(&self, n0: usize) -> Result<f64> {
        if n0 == 0 {
            return Err(Error::domain("original node count must be positive"));
        }
        Ok(self.connected_components().largest() as f64 / n0 as f64)
    }

    /// Number of edges among the neighbours of `v`.
    pub(crate) fn triangles_at(&self, v: usize) -> usize {
        let nbrs = &self.adjacency[v];
        let mut t = 0;
        for (a, &j) in nbrs.iter().enumerate() {
            for &k in &nbrs[a + 1..] {
                if self.has_edge(j, k) {
                    t += 1;
                }
            }
        }
        t
    }

    pub(crate) fn clustering_of(&self, v: usize) -> f64 {
        let d = self.degree(v);
        if d < 2 {
            return 0.0;
        }
        2.0 * self.triangles_at(v) as f64 / (d * (d - 1)) as f64
    }

    /// Local clustering coefficient; 0 for nodes of degree below 2.
    pub fn local_clustering(&self, v: usize) -> Result<f64> {
        self.check_node(v)?;
        Ok(self.clustering_of(v))
    }

    pub fn clustering_all(&self) -> Vec<f64> {
        (0..self.node_count()).map(|v| self.clustering_of(v)).collect()
    }

    pub fn average_clustering(&self) -> Result<f64> {
        if self.is_empty() {
            return Err(Error::domain("average clustering of an empty graph"));
        }
        Ok(self.clustering_all().iter().sum::<f64>() / self.node_count() as f64)
    }

    /// Breadth-first distances from `v`; unreachable nodes are `None`.
    pub fn distances_from(&self, v: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.node_count()];
        dist[v] = Some(0);
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Nodes at shortest-path distance exactly `radius` from `v`.
    pub fn ball_boundary(&self, v: usize, radius: usize) -> Result<Vec<usize>> {
        self.check_node(v)?;
        let mut frontier = vec![v];
        let mut seen = vec![false; self.node_count()];
        seen[v] = true;
        for _ in 0..radius {
            let mut next = Vec::new();
            for &u in &frontier {
                for &w in &self.adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                return Ok(next);
            }
            frontier = next;
        }
        frontier.sort_unstable();
        Ok(frontier)
    }

    /// Shannon entropy (nats) of the empirical degree distribution.
    pub fn degree_distribution_entropy(&self) -> Result<f64> {
        let n = self.node_count();
        if n == 0 {
            return Err(Error::domain("degree entropy of an empty graph"));
        }
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for d in self.degrees() {
            *counts.entry(d).or_default() += 1;
        }
        let mut classes: Vec<usize> = counts.into_values().collect();
        classes.sort_unstable();
        Ok(classes
            .iter()
            .map(|&c| {
                let p = c as f64 / n as f64;
                -p * p.ln()
            })
            .sum())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    /// Centre 0 joined to `leaves` leaves.
    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges).unwrap()
    }

    /// Rim `v1..v6` as a 6-cycle, hub `v7` joined to every rim node.
    pub fn wheel6() -> Graph {
        let mut text = String::new();
        for i in 1..=6 {
            let next = i % 6 + 1;
            text.push_str(&format!("v{i} v{next}\nv7 v{i}\n"));
        }
        Graph::parse_edge_list(&text).unwrap()
    }

    pub fn assert_invariants(g: &Graph) {
        let mut twice = 0;
        for i in 0..g.node_count() {
            let nbrs = g.neighbors(i);
            assert!(nbrs.windows(2).all(|w| w[0] < w[1]), "unsorted or duplicate");
            assert!(!nbrs.contains(&i), "self-loop at {i}");
            for &j in nbrs {
                assert!(g.neighbors(j).contains(&i), "asymmetric {i}-{j}");
            }
            assert_eq!(g.degree(i), nbrs.len());
            twice += nbrs.len();
        }
        assert_eq!(twice, 2 * g.edge_count());
        for (i, l) in g.labels().iter().enumerate() {
            assert_eq!(g.index_of(l).unwrap(), i);
        }
    }

    #[test]
    fn parses_path_and_empty() {
        let g = Graph::parse_edge_list("1 2\n2 3").unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (3, 2));
        assert_invariants(&g);
        let e = Graph::parse_edge_list("").unwrap();
        assert_eq!((e.node_count(), e.edge_count()), (0, 0));
    }

    #[test]
    fn parse_deduplicates_and_declares_isolated() {
        let g = Graph::parse_edge_list("# c\n a b\nb a\na b\n\nnode z\n").unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (3, 1));
        assert_eq!(g.degree(g.index_of("z").unwrap()), 0);
        assert_invariants(&g);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match Graph::parse_edge_list("1 2\n3\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        match Graph::parse_edge_list("1 2\n# x\n4 4\n") {
            Err(Error::SelfLoop { line, node }) => assert_eq!((line, node.as_str()), (3, "4")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Graph::parse_edge_list("a b c").is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::parse_edge_list("x y\ny z\nnode q\n").unwrap();
        let h = Graph::parse_edge_list(&g.to_edge_list()).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn remove_nodes_cases() {
        let k2 = complete(2);
        let g = k2.remove_nodes(&[0]).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (1, 0));
        assert_invariants(&g);

        let w = wheel6();
        let c6 = w.remove_labels(&["v7"]).unwrap();
        assert_eq!(c6.node_count(), 6);
        assert!(c6.degrees().iter().all(|&d| d == 2));
        assert_invariants(&c6);
        assert_eq!(w.node_count(), 7);

        let p = path(3).remove_nodes(&[1]).unwrap();
        assert_eq!((p.node_count(), p.edge_count()), (2, 0));

        assert_eq!(w.remove_nodes(&[]).unwrap(), w);
        assert!(matches!(w.remove_nodes(&[7]), Err(Error::UnknownNode(_))));
        assert!(matches!(w.remove_labels(&["v9"]), Err(Error::UnknownNode(_))));
    }

    #[test]
    fn components() {
        let p = path(3).connected_components();
        assert_eq!(p.sizes, vec![3]);
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.connected_components().sizes, vec![2, 2]);
        let g = Graph::from_edges(5, &[(3, 4), (2, 3)]).unwrap();
        let c = g.connected_components();
        assert_eq!(c.sizes, vec![3, 1, 1]);
        assert_eq!(c.labels[2], 0);
        assert_eq!(c.members(0), vec![2, 3, 4]);
    }

    #[test]
    fn giant_fraction() {
        assert_eq!(path(3).giant_component_fraction(3).unwrap(), 1.0);
        let s = star(5).remove_nodes(&[0]).unwrap();
        assert!((s.giant_component_fraction(6).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(Graph::empty().giant_component_fraction(10).unwrap(), 0.0);
        assert!(path(3).giant_component_fraction(0).is_err());
    }

    #[test]
    fn clustering_on_wheel_and_tree() {
        let w = wheel6();
        for i in 1..=6 {
            let v = w.index_of(&format!("v{i}")).unwrap();
            assert!((w.local_clustering(v).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        }
        let hub = w.index_of("v7").unwrap();
        assert!((w.local_clustering(hub).unwrap() - 0.4).abs() < 1e-15);
        assert!((w.average_clustering().unwrap() - 22.0 / 35.0).abs() < 1e-15);
        let c6 = w.remove_nodes(&[hub]).unwrap();
        assert_eq!(c6.average_clustering().unwrap(), 0.0);
        assert_eq!(complete(4).average_clustering().unwrap(), 1.0);
        assert!(star(4).clustering_all().iter().all(|&c| c == 0.0));
        assert!(Graph::empty().average_clustering().is_err());
        assert!(w.local_clustering(99).is_err());
    }

    #[test]
    fn ball_boundaries() {
        let p = path(3);
        assert_eq!(p.ball_boundary(1, 1).unwrap(), vec![0, 2]);
        assert_eq!(p.ball_boundary(0, 2).unwrap(), vec![2]);
        assert_eq!(p.ball_boundary(0, 0).unwrap(), vec![0]);
        assert!(p.ball_boundary(0, 3).unwrap().is_empty());
        assert!(p.ball_boundary(5, 1).is_err());
    }

    #[test]
    fn degree_entropy() {
        assert_eq!(cycle(5).degree_distribution_entropy().unwrap(), 0.0);
        // star(3): degrees {3,1,1,1}
        let h = star(3).degree_distribution_entropy().unwrap();
        let expected = -(0.25f64 * 0.25f64.ln() + 0.75 * 0.75f64.ln());
        assert!((h - expected).abs() < 1e-15);
        assert!(Graph::empty().degree_distribution_entropy().is_err());
    }

    #[test]
    fn permutation_preserves_structure() {
        let w = wheel6();
        let perm = [6, 5, 4, 3, 2, 1, 0];
        let p = w.permuted(&perm);
        assert_invariants(&p);
        assert_eq!(p.edge_count(), w.edge_count());
        for (i, j) in w.edges() {
            assert!(p.has_edge(perm[i], perm[j]));
        }
    }
}
