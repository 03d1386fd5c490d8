//! Max-cut as a binary quadratic feasibility instance.
//!
//! A graph has a cut with at least `k` edges iff some `x in {0,1}^n`
//! satisfies `k - sum_{ij in E} (x_i + x_j - 2 x_i x_j) <= 0`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::certifier::MiqpInstance;
use crate::exact::{rat, QMatrix, QVector};
use crate::polyhedra::HPolyhedron;
use crate::qp::QuadraticForm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("malformed edge `{0}` (expected `a-b` with non-negative integer labels)")]
    Malformed(String),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pub n: usize,
    pub edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Edges are stored with the smaller label first; duplicates collapse.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        let mut n = n;
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            n = n.max(a + 1).max(b + 1);
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Graph { n, edges: set })
    }

    /// Parses `"0-1,1-2"`; the vertex count is the largest label plus one,
    /// at least `min_vertices` and at least one.
    pub fn parse(text: &str, min_vertices: usize) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (a, b) = part
                .split_once('-')
                .ok_or_else(|| GraphError::Malformed(part.to_string()))?;
            let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| GraphError::Malformed(part.to_string()));
            edges.push((parse(a)?, parse(b)?));
        }
        Graph::new(min_vertices.max(1), edges)
    }

    pub fn cut_size(&self, side: u64) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| (side >> a & 1) != (side >> b & 1))
            .count()
    }

    /// Exhaustive maximum cut; meant for small graphs.
    pub fn max_cut(&self) -> usize {
        assert!(self.n < 31, "exhaustive max cut is limited to small graphs");
        (0..1u64 << self.n).map(|s| self.cut_size(s)).max().unwrap_or(0)
    }
}

/// Instance with `n = p = |V|` and `0 <= x_i <= 1` encoding "cut >= k".
pub fn maxcut_instance(graph: &Graph, k: u64) -> MiqpInstance {
    let n = graph.n;
    let mut h = QMatrix::zeros(n, n);
    let mut c = QVector::zeros(n);
    for &(a, b) in &graph.edges {
        h.set(a, b, h.get(a, b) + rat(1));
        h.set(b, a, h.get(b, a) + rat(1));
        c.set(a, &c[a] - rat(1));
        c.set(b, &c[b] - rat(1));
    }
    let k = i64::try_from(k).expect("cut threshold fits in i64");
    let q = QuadraticForm::new(h, c, rat(k)).expect("symmetric by construction");
    let mut poly = HPolyhedron::universe(n);
    for i in 0..n {
        poly.push_row(QVector::unit(n, i), rat(1));
        poly.push_row(QVector::unit(n, i).neg(), rat(0));
    }
    MiqpInstance::new(q, poly, n).expect("consistent dimensions")
}
