//! Undirected graphs with at most one loop per vertex.
//!
//! Adjacency is stored as one bit row per vertex; a loop at `v` is bit `v`
//! of row `v`, so `degree(v)` (row popcount) counts a loop once.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldVector};

/// Canonical representative of a projective point: nonzero, first nonzero
/// coordinate equal to 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectivePoint(pub FieldVector);

impl ProjectivePoint {
    pub fn coords(&self) -> &[u32] {
        self.0.coords()
    }
}

/// Records that a graph is G(t, q) or its complement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarityOrigin {
    pub t: u32,
    pub q: u32,
    pub field: FieldDescriptor,
    pub complemented: bool,
}

#[derive(Clone, Debug)]
pub struct LoopyGraph {
    rows: Vec<BitSet>,
    points: Option<Vec<ProjectivePoint>>,
    origin: Option<PolarityOrigin>,
}

impl PartialEq for LoopyGraph {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
    }
}

impl Eq for LoopyGraph {}

impl Default for LoopyGraph {
    fn default() -> Self {
        LoopyGraph::new(0)
    }
}

impl LoopyGraph {
    pub fn new(n: usize) -> Self {
        LoopyGraph { rows: vec![BitSet::new(n); n], points: None, origin: None }
    }

    /// Builds a graph from `(u, v)` pairs; `u == v` adds a loop.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = LoopyGraph::new(n);
        for (u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize, loops: bool) -> Self {
        let mut g = LoopyGraph::new(n);
        for (v, row) in g.rows.iter_mut().enumerate() {
            *row = BitSet::full(n);
            if !loops {
                row.remove(v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = LoopyGraph::new(n);
        for v in 0..n {
            g.add_edge(v, (v + 1) % n);
        }
        g
    }

    pub(crate) fn from_rows(rows: Vec<BitSet>) -> Self {
        LoopyGraph { rows, points: None, origin: None }
    }

    pub fn with_points(mut self, points: Vec<ProjectivePoint>, origin: PolarityOrigin) -> Self {
        debug_assert_eq!(points.len(), self.n());
        self.points = Some(points);
        self.origin = Some(origin);
        self
    }

    pub fn points(&self) -> Option<&[ProjectivePoint]> {
        self.points.as_deref()
    }

    pub fn origin(&self) -> Option<&PolarityOrigin> {
        self.origin.as_ref()
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, len: n });
            }
        }
        self.add_edge(u, v);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u].remove(v);
        self.rows[v].remove(u);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn has_loop(&self, v: usize) -> bool {
        self.rows[v].contains(v)
    }

    /// Neighbourhood of `v`, including `v` itself when it carries a loop.
    #[inline]
    pub fn row(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    pub fn rows(&self) -> &[BitSet] {
        &self.rows
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    /// The common degree if the graph is regular (`Some(0)` for n = 0).
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.rows.first().map_or(0, BitSet::count);
        self.rows.iter().all(|r| r.count() == d).then_some(d)
    }

    pub fn loop_count(&self) -> usize {
        (0..self.n()).filter(|&v| self.has_loop(v)).count()
    }

    /// Undirected edges `u <= v`, loops included once.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows.iter().enumerate().flat_map(|(u, row)| row.iter().filter(move |&v| v >= u).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Rows with the diagonal cleared; clique and independence searches work
    /// on these.
    pub fn loopless_rows(&self) -> Vec<BitSet> {
        self.rows
            .iter()
            .enumerate()
            .map(|(v, r)| {
                let mut r = r.clone();
                r.remove(v);
                r
            })
            .collect()
    }

    pub fn without_loops(&self) -> LoopyGraph {
        LoopyGraph { rows: self.loopless_rows(), points: self.points.clone(), origin: self.origin.clone() }
    }

    /// Flips every off-diagonal pair and every loop bit.
    pub fn complement(&self) -> LoopyGraph {
        LoopyGraph {
            rows: self.rows.iter().map(BitSet::complement).collect(),
            points: self.points.clone(),
            origin: self.origin.clone().map(|mut o| {
                o.complemented = !o.complemented;
                o
            }),
        }
    }

    /// Subgraph induced on `vertices`, relabelled `0..vertices.len()` in the
    /// given order.
    pub fn induced(&self, vertices: &[usize]) -> LoopyGraph {
        let k = vertices.len();
        let mut g = LoopyGraph::new(k);
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Number of ordered pairs `(a, b)` with `a ∈ A`, `b ∈ B`, `ab ∈ E`.
    pub fn edges_between(&self, a: &BitSet, b: &BitSet) -> u64 {
        a.iter().map(|u| self.rows[u].intersection_count(b) as u64).sum()
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| vertices[i + 1..].iter().all(|&v| u != v && self.has_edge(u, v)))
    }

    pub fn is_independent(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| vertices[i + 1..].iter().all(|&v| u != v && !self.has_edge(u, v)))
    }
}
