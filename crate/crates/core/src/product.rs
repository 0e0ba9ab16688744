//! The pair digraph D of an (F, G) pair, its F_2 specialisation, the pair
//! parameters η and w, and shrinking sequences.
//!
//! `V(D)` is the set of ordered pairs `(a, b)` with `ab ∈ E(F)` (a loop at v
//! gives the single pair `(v, v)`), sorted lexicographically. There is an arc
//! `(a1, b1) -> (a2, b2)` iff `a1 b2 ∈ E(G)`. Arcs only depend on the tail's
//! first coordinate, so out-rows are cached per underlying vertex rather
//! than per pair.

use std::borrow::Cow;
use std::sync::Arc;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::geometry::{low_degree_set, SpectralCertificate};
use crate::graph::LoopyGraph;

pub const MAX_PAIR_VERTICES: usize = 1_000_000;
/// Out-rows are materialised when `n · |V(D)|` stays below this many bits.
const MATERIALIZE_BITS: usize = 1 << 30;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PairSource {
    Graphs,
    F2 { s: u32 },
}

#[derive(Clone, Debug)]
pub struct PairDigraph {
    arcs_via: Arc<LoopyGraph>,
    tails: Vec<u32>,
    heads: Vec<u32>,
    tail_rows: Option<Vec<BitSet>>,
    source: PairSource,
}

impl PairDigraph {
    fn assemble(g: Arc<LoopyGraph>, pairs: Vec<(u32, u32)>, source: PairSource) -> Self {
        let (tails, heads): (Vec<u32>, Vec<u32>) = pairs.into_iter().unzip();
        let mut d = PairDigraph { arcs_via: g, tails, heads, tail_rows: None, source };
        d.materialize();
        d
    }

    fn materialize(&mut self) {
        let n = self.arcs_via.n();
        let len = self.tails.len();
        if n.saturating_mul(len) > MATERIALIZE_BITS {
            return;
        }
        let rows = (0..n)
            .map(|a| {
                let row = self.arcs_via.row(a);
                BitSet::from_indices(len, (0..len).filter(|&v| row.contains(self.heads[v] as usize)))
            })
            .collect();
        self.tail_rows = Some(rows);
    }

    pub fn len(&self) -> usize {
        self.tails.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tails.is_empty()
    }

    /// `(a, b)` for vertex `v`.
    pub fn pair(&self, v: usize) -> (usize, usize) {
        (self.tails[v] as usize, self.heads[v] as usize)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.tails.iter().zip(&self.heads).map(|(&a, &b)| (a as usize, b as usize))
    }

    /// The graph G that decides arcs.
    pub fn arc_graph(&self) -> &LoopyGraph {
        &self.arcs_via
    }

    pub fn source(&self) -> &PairSource {
        &self.source
    }

    pub fn loops(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.has_arc(v, v)).collect()
    }

    pub fn arc_count(&self) -> u64 {
        (0..self.len()).map(|v| self.out_row(v).count() as u64).sum()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |u| self.out_row(u).into_owned().iter().map(move |v| (u, v)).collect::<Vec<_>>())
    }
}

impl Digraph for PairDigraph {
    fn vertex_count(&self) -> usize {
        self.tails.len()
    }

    #[inline]
    fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs_via.has_edge(self.tails[u] as usize, self.heads[v] as usize)
    }

    fn out_row(&self, u: usize) -> Cow<'_, BitSet> {
        let a = self.tails[u] as usize;
        match &self.tail_rows {
            Some(rows) => Cow::Borrowed(&rows[a]),
            None => {
                let row = self.arcs_via.row(a);
                Cow::Owned(BitSet::from_indices(self.len(), (0..self.len()).filter(|&v| row.contains(self.heads[v] as usize))))
            }
        }
    }

    fn out_class(&self, u: usize) -> usize {
        self.tails[u] as usize
    }
}

/// D(F, G): vertices are ordered F-edges, arcs through G.
pub fn build_pair_digraph(f: &LoopyGraph, g: &LoopyGraph) -> Result<PairDigraph> {
    if f.n() != g.n() {
        return Err(Error::VertexSetMismatch { left: f.n(), right: g.n() });
    }
    let size: usize = (0..f.n()).map(|v| f.degree(v)).sum();
    if size > MAX_PAIR_VERTICES {
        return Err(Error::SizeCap { what: "pair digraph", size: size as u64, cap: MAX_PAIR_VERTICES as u64 });
    }
    let pairs = (0..f.n()).flat_map(|a| f.row(a).iter().map(move |b| (a as u32, b as u32))).collect();
    Ok(PairDigraph::assemble(Arc::new(g.clone()), pairs, PairSource::Graphs))
}

/// Vertex count of the F_2 digraph for `s` as given by the closed form
/// `2^{2s-3} - 2^{s-1} - 2^{s-2} + 1`, which equals `n·d` for G(s-2, 2)
/// (ordered *adjacent* pairs).
pub fn f2_stated_vertex_count(s: u32) -> u64 {
    (1u64 << (2 * s - 3)) - (1 << (s - 1)) - (1 << (s - 2)) + 1
}

/// Number of ordered pairs `(x, y)` of nonzero vectors of F_2^{s-1} with
/// `<x, y> = 1`: `(2^{s-1} - 1) · 2^{s-2}`.
pub fn f2_vertex_count(s: u32) -> u64 {
    ((1u64 << (s - 1)) - 1) * (1 << (s - 2))
}

/// The digraph over F_2^{s-1}: vertices `(x, y)` of nonzero vectors with
/// `<x, y> = 1`, arcs `(x, y) -> (x', y')` iff `<x, y'> = 0`.
///
/// Built directly from bit-mask vectors. Underlying vertex `i` is the
/// vector whose bit mask is `i + 1`, read with the first coordinate as the
/// most significant bit, which matches the point order of G(s-2, 2).
pub fn build_f2_digraph(s: u32) -> Result<PairDigraph> {
    if !(4..=14).contains(&s) {
        return Err(Error::InvalidParameter(format!("F_2 digraph needs 4 <= s <= 14, got {s}")));
    }
    let p = s - 1;
    let n = (1usize << p) - 1;
    let odd = |x: usize, y: usize| ((x & y).count_ones() & 1) == 1;
    let rows = (1..=n).map(|x| BitSet::from_indices(n, (1..=n).filter(|&y| !odd(x, y)).map(|y| y - 1))).collect();
    let g = LoopyGraph::from_rows(rows);
    let mut pairs = Vec::with_capacity(f2_vertex_count(s) as usize);
    for x in 1..=n {
        for y in 1..=n {
            if odd(x, y) {
                pairs.push(((x - 1) as u32, (y - 1) as u32));
            }
        }
    }
    Ok(PairDigraph::assemble(Arc::new(g), pairs, PairSource::F2 { s }))
}

/// η = max{λ(G)²/d(G)², λ(F)λ(G)/(d(F)d(G))}, kept exactly through η².
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Eta {
    squared: Ratio<u128>,
}

impl Eta {
    pub fn from_parts(d_f: u64, d_g: u64, lambda_sq_f: u64, lambda_sq_g: u64) -> Result<Self> {
        if d_f == 0 || d_g == 0 {
            return Err(Error::InvalidParameter("degrees must be positive".into()));
        }
        let (df, dg, lf, lg) = (d_f as u128, d_g as u128, lambda_sq_f as u128, lambda_sq_g as u128);
        let first = Ratio::new(lg * lg, dg.pow(4));
        let cross = Ratio::new(lf * lg, df * df * dg * dg);
        Ok(Eta { squared: first.max(cross) })
    }

    pub fn squared(&self) -> Ratio<u128> {
        self.squared
    }

    /// η itself when η² is the square of a rational.
    pub fn as_rational(&self) -> Option<Ratio<u128>> {
        let root = |x: u128| {
            let r = (x as f64).sqrt().round() as u128;
            (r.saturating_sub(1)..=r + 1).find(|c| c * c == x)
        };
        Some(Ratio::new(root(*self.squared.numer())?, root(*self.squared.denom())?))
    }

    pub fn value(&self) -> f64 {
        (*self.squared.numer() as f64 / *self.squared.denom() as f64).sqrt()
    }
}

impl Serialize for Eta {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("Eta", 3)?;
        st.serialize_field("squared", &format!("{}/{}", self.squared.numer(), self.squared.denom()))?;
        st.serialize_field("exact", &self.as_rational().map(|r| format!("{}/{}", r.numer(), r.denom())))?;
        st.serialize_field("value", &self.value())?;
        st.end()
    }
}

/// A certified (F, G) pair with its derived parameters.
#[derive(Clone, Debug)]
pub struct PairSystem {
    pub f: Arc<LoopyGraph>,
    pub g: Arc<LoopyGraph>,
    pub cert_f: SpectralCertificate,
    pub cert_g: SpectralCertificate,
    pub eta: Eta,
    /// `4 n ln n / d(G)`, natural logarithm.
    pub w: f64,
}

impl PairSystem {
    pub fn n(&self) -> usize {
        self.cert_g.n
    }

    pub fn d_f(&self) -> usize {
        self.cert_f.d
    }

    pub fn d_g(&self) -> usize {
        self.cert_g.d
    }

    /// `d(F)·n`, the size of the pair digraph.
    pub fn digraph_size(&self) -> u64 {
        (self.d_f() * self.n()) as u64
    }
}

pub fn shrinking_threshold(n: usize, d_g: usize) -> f64 {
    4.0 * n as f64 * (n as f64).ln() / d_g as f64
}

pub fn pair_params(f: &LoopyGraph, g: &LoopyGraph, cert_f: &SpectralCertificate, cert_g: &SpectralCertificate) -> Result<PairSystem> {
    if !cert_f.verified || !cert_g.verified {
        return Err(Error::Unverified);
    }
    if f.n() != g.n() || cert_f.n != f.n() || cert_g.n != g.n() {
        return Err(Error::VertexSetMismatch { left: f.n(), right: g.n() });
    }
    let eta = Eta::from_parts(cert_f.d as u64, cert_g.d as u64, cert_f.lambda_squared as u64, cert_g.lambda_squared as u64)?;
    Ok(PairSystem {
        f: Arc::new(f.clone()),
        g: Arc::new(g.clone()),
        cert_f: cert_f.clone(),
        cert_g: cert_g.clone(),
        eta,
        w: shrinking_threshold(g.n(), cert_g.d),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShrinkingSequence {
    pub bits: Vec<bool>,
    /// `|B_i|` for each position.
    pub remaining: Vec<usize>,
}

impl ShrinkingSequence {
    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

/// `B_i = V ∖ ⋃_{j<i} N_G(a_j)`, `A_i = {u : |N_G(u) ∩ B_i| ≤ d(G)|B_i|/(2n)}`,
/// `z_i = [a_i ∈ A_i]`.
pub fn shrinking_sequence(pair: &PairSystem, d: &PairDigraph, tuple: &[usize]) -> Result<ShrinkingSequence> {
    let g = &pair.g;
    if d.arc_graph().n() != g.n() {
        return Err(Error::VertexSetMismatch { left: d.arc_graph().n(), right: g.n() });
    }
    let mut remaining = BitSet::full(g.n());
    let mut seq = ShrinkingSequence { bits: Vec::with_capacity(tuple.len()), remaining: Vec::with_capacity(tuple.len()) };
    for &v in tuple {
        if v >= d.len() {
            return Err(Error::VertexOutOfRange { vertex: v, len: d.len() });
        }
        let (a, _) = d.pair(v);
        let low = low_degree_set(g, pair.d_g(), &remaining);
        seq.bits.push(low.contains(a));
        seq.remaining.push(remaining.count());
        remaining.difference_with(g.row(a));
    }
    Ok(seq)
}
