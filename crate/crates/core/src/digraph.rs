//! Minimal directed-graph interface shared by the search and counting
//! kernels.

use std::borrow::Cow;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

pub trait Digraph {
    fn vertex_count(&self) -> usize;

    fn has_arc(&self, u: usize, v: usize) -> bool;

    /// Out-neighbourhood of `u` as a bit row over all vertices (contains `u`
    /// iff there is a loop at `u`).
    fn out_row(&self, u: usize) -> Cow<'_, BitSet> {
        Cow::Owned(BitSet::from_indices(self.vertex_count(), (0..self.vertex_count()).filter(|&v| self.has_arc(u, v))))
    }

    /// Vertices whose out-rows are identical share a class id; the kernels
    /// use this to avoid recomputing intersections. Default: every vertex
    /// is its own class.
    fn out_class(&self, u: usize) -> usize {
        u
    }

    fn is_loopless(&self) -> bool {
        (0..self.vertex_count()).all(|v| !self.has_arc(v, v))
    }
}

/// Digraph with materialised out-rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseDigraph {
    rows: Vec<BitSet>,
}

impl DenseDigraph {
    pub fn new(n: usize) -> Self {
        DenseDigraph { rows: vec![BitSet::new(n); n] }
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut d = DenseDigraph::new(n);
        for (u, v) in arcs {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), len: n });
            }
            d.rows[u].insert(v);
        }
        Ok(d)
    }

    /// Arcs `i -> j` for all `i < j`.
    pub fn transitive_tournament(n: usize) -> Self {
        DenseDigraph { rows: (0..n).map(|i| BitSet::from_indices(n, i + 1..n)).collect() }
    }

    pub fn add_arc(&mut self, u: usize, v: usize) {
        self.rows[u].insert(v);
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows.iter().enumerate().flat_map(|(u, r)| r.iter().map(move |v| (u, v)))
    }
}

impl Digraph for DenseDigraph {
    fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    fn has_arc(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    fn out_row(&self, u: usize) -> Cow<'_, BitSet> {
        Cow::Borrowed(&self.rows[u])
    }
}
