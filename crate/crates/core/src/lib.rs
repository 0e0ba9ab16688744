//! Ramsey lower-bound constructions from polarity graphs over finite fields.
//!
//! The crate builds polarity graphs G(t, q), certifies their spectra, forms
//! pair digraphs, counts forward-independent tuples, and runs the random
//! orientation and sampling pipeline that turns a T_s-free digraph into a
//! Ramsey witness. Closed-form bounds are evaluated in log2 space.

pub mod bitset;
pub mod bounds;
pub mod certificate;
pub mod cli;
pub mod digraph;
pub mod error;
pub mod field;
pub mod freeness;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod counting;
pub mod pipeline;
pub mod product;

pub use bitset::BitSet;
pub use digraph::{DenseDigraph, Digraph};
pub use error::{Error, Result};
pub use field::{FieldVector, FiniteField};
pub use freeness::{SearchBudget, SearchReport, Verdict};
pub use geometry::{build_polarity_graph, certify_spectrum, SpectralCertificate};
pub use graph::LoopyGraph;
pub use product::{build_f2_digraph, build_pair_digraph, pair_params, PairDigraph, PairSystem};
