//! Polarity graphs G(t, q) over projective space and their exact spectral
//! certification.
//!
//! λ is never stored as a float: certificates keep `λ² = d − a` and every
//! inequality involving λ is decided by squaring both sides in integers.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::graph::{LoopyGraph, PolarityOrigin, ProjectivePoint};

pub const MAX_POLARITY_VERTICES: u64 = 50_000;
pub const MAX_SPECTRAL_VERTICES: usize = 5_000;

/// Canonical points of PG(t, q), in increasing order of the coordinate
/// tuple read as a base-q number (first coordinate most significant).
pub fn projective_points(field: &FiniteField, t: u32) -> Result<Vec<ProjectivePoint>> {
    let q = field.order() as u64;
    let len = t as usize + 1;
    let total = q.checked_pow(len as u32).ok_or(Error::SizeCap {
        what: "projective space",
        size: u64::MAX,
        cap: MAX_POLARITY_VERTICES,
    })?;
    let n = (total - 1) / (q - 1);
    if n > MAX_POLARITY_VERTICES {
        return Err(Error::SizeCap { what: "projective space", size: n, cap: MAX_POLARITY_VERTICES });
    }
    let mut points = Vec::with_capacity(n as usize);
    // first nonzero coordinate is 1: choose its position, zeros before it,
    // free coordinates after it
    let mut coords = vec![0u32; len];
    for lead in 0..len {
        let free = len - lead - 1;
        for rest in 0..q.pow(free as u32) {
            coords[..lead].fill(0);
            coords[lead] = 1;
            let mut r = rest;
            for i in (lead + 1..len).rev() {
                coords[i] = (r % q) as u32;
                r /= q;
            }
            points.push(ProjectivePoint(field.vector(coords.clone())?));
        }
    }
    points.sort_by(|a, b| a.coords().cmp(b.coords()));
    Ok(points)
}

/// Scales a nonzero vector so that its first nonzero coordinate is 1.
pub fn canonicalize(field: &FiniteField, coords: &[u32]) -> Option<Vec<u32>> {
    let lead = *coords.iter().find(|&&c| c != 0)?;
    let inv = field.inv(lead)?;
    Some(coords.iter().map(|&c| field.mul(c, inv)).collect())
}

/// G(t, q): vertices are the points of PG(t, q), `x ~ y` (loops included)
/// iff `<x, y> = 0`.
pub fn build_polarity_graph(t: u32, q: u64) -> Result<LoopyGraph> {
    if t < 2 {
        return Err(Error::DimensionTooSmall(t));
    }
    let field = FiniteField::with_order(q)?;
    let points = projective_points(&field, t)?;
    let n = points.len();
    let rows: Vec<BitSet> = points
        .par_iter()
        .map(|x| BitSet::from_indices(n, (0..n).filter(|&j| field.dot(x.coords(), points[j].coords()) == 0)))
        .collect();
    let origin = PolarityOrigin { t, q: field.order(), field: field.descriptor(), complemented: false };
    Ok(LoopyGraph::from_rows(rows).with_points(points, origin))
}

pub fn complement(g: &LoopyGraph) -> LoopyGraph {
    g.complement()
}

/// Vertex count, degree and common-neighbour count of G(t, q) from the
/// closed forms `(q^{t+1}-1)/(q-1)`, `(q^t-1)/(q-1)`, `(q^{t-1}-1)/(q-1)`.
pub fn polarity_parameters(t: u32, q: u64) -> (u64, u64, u64) {
    let f = |e: u32| (q.pow(e) - 1) / (q - 1);
    (f(t + 1), f(t), f(t - 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralCertificate {
    pub n: usize,
    pub d: usize,
    /// Common-neighbour count of every distinct pair (taken from pair (0, 1)
    /// when verification fails).
    pub a: usize,
    pub lambda_squared: usize,
    pub verified: bool,
    /// First pair whose common-neighbour count differs from `a`.
    pub offending_pair: Option<(usize, usize)>,
}

impl SpectralCertificate {
    pub fn lambda(&self) -> f64 {
        (self.lambda_squared as f64).sqrt()
    }
}

/// Checks `A² = aJ + (d − a)I` entrywise. On success every non-principal
/// eigenvalue is `±√(d − a)`.
pub fn certify_spectrum(g: &LoopyGraph) -> Result<SpectralCertificate> {
    let n = g.n();
    if n > MAX_SPECTRAL_VERTICES {
        return Err(Error::SizeCap { what: "spectral certification", size: n as u64, cap: MAX_SPECTRAL_VERTICES as u64 });
    }
    let d = if n == 0 { 0 } else { g.degree(0) };
    if let Some(v) = (0..n).find(|&v| g.degree(v) != d) {
        return Err(Error::NotRegular { vertex: v, degree: g.degree(v), expected: d });
    }
    if n < 2 {
        return Ok(SpectralCertificate { n, d, a: 0, lambda_squared: d, verified: true, offending_pair: None });
    }
    let a = g.row(0).intersection_count(g.row(1));
    // diagonal entries of A² are the degrees, already checked equal to d
    let offending = (0..n)
        .into_par_iter()
        .filter_map(|u| {
            (u + 1..n).find(|&v| g.row(u).intersection_count(g.row(v)) != a).map(|v| (u, v))
        })
        .min();
    Ok(SpectralCertificate {
        n,
        d,
        a,
        lambda_squared: d - a,
        verified: offending.is_none(),
        offending_pair: offending,
    })
}

/// Outcome of one expander-mixing comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MixingCheck {
    /// Ordered-pair edge count e_G(A, B).
    pub edges: u64,
    pub size_a: u64,
    pub size_b: u64,
    /// `λ√(|A||B|) − |e − (d/n)|A||B||`.
    pub slack: f64,
    /// The inequality decided exactly: `(e·n − d|A||B|)² ≤ λ² n² |A||B|`.
    pub holds: bool,
}

pub fn mixing_slack(g: &LoopyGraph, cert: &SpectralCertificate, a: &BitSet, b: &BitSet) -> Result<MixingCheck> {
    if !cert.verified {
        return Err(Error::Unverified);
    }
    let n = cert.n as i128;
    let d = cert.d as i128;
    let (sa, sb) = (a.count() as i128, b.count() as i128);
    let e = g.edges_between(a, b) as i128;
    let disc = e * n - d * sa * sb;
    let holds = disc * disc <= cert.lambda_squared as i128 * n * n * sa * sb;
    let slack = cert.lambda() * ((sa * sb) as f64).sqrt() - (disc.abs() as f64) / n as f64;
    Ok(MixingCheck { edges: e as u64, size_a: sa as u64, size_b: sb as u64, slack, holds })
}

/// `A = {u : |N(u) ∩ B| ≤ d|B|/(2n)}`, compared as `2n|N(u) ∩ B| ≤ d|B|`.
pub fn low_degree_set(g: &LoopyGraph, d: usize, b: &BitSet) -> BitSet {
    let n = g.n();
    let rhs = d * b.count();
    BitSet::from_indices(n, (0..n).filter(|&u| 2 * n * g.row(u).intersection_count(b) <= rhs))
}

/// `|A||B| ≤ 4λ²n²/d²` for `A = low_degree_set(B)`, compared as
/// `|A||B|d² ≤ 4λ²n²`.
pub fn low_degree_product_holds(g: &LoopyGraph, cert: &SpectralCertificate, b: &BitSet) -> Result<bool> {
    if !cert.verified {
        return Err(Error::Unverified);
    }
    let a = low_degree_set(g, cert.d, b);
    let lhs = (a.count() * b.count()) as u128 * (cert.d as u128).pow(2);
    let rhs = 4 * cert.lambda_squared as u128 * (cert.n as u128).pow(2);
    Ok(lhs <= rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_polarity() {
        let g = build_polarity_graph(2, 2).unwrap();
        assert_eq!(g.n(), 7);
        assert_eq!(g.regular_degree(), Some(3));
        assert_eq!(g.loop_count(), 3);
    }

    #[test]
    fn g23_loops_are_the_conic() {
        let g = build_polarity_graph(2, 3).unwrap();
        let f = FiniteField::new(3, 1).unwrap();
        let pts = g.points().unwrap();
        // oracle: self-orthogonal canonical points, enumerated directly
        let expected: Vec<usize> =
            (0..13).filter(|&i| pts[i].coords().iter().map(|&c| c * c).sum::<u32>() % 3 == 0).collect();
        let loops: Vec<usize> = (0..13).filter(|&v| g.has_loop(v)).collect();
        assert_eq!(loops, expected);
        assert_eq!(loops.len(), 4);
        assert!(pts.iter().any(|p| p.coords() == [1, 1, 1]));
        assert!(g.has_loop(pts.iter().position(|p| p.coords() == [1, 1, 1]).unwrap()));
        assert_eq!(canonicalize(&f, &[0, 2, 1]), Some(vec![0, 1, 2]));
    }

    #[test]
    fn pg32() {
        let g = build_polarity_graph(3, 2).unwrap();
        assert_eq!((g.n(), g.regular_degree()), (15, Some(7)));
    }

    #[test]
    fn rejects_bad_dimension() {
        assert!(matches!(build_polarity_graph(1, 3), Err(Error::DimensionTooSmall(1))));
        assert!(matches!(build_polarity_graph(2, 6), Err(Error::NotPrimePower(6))));
        assert!(matches!(build_polarity_graph(4, 64), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn points_are_canonical_and_distinct() {
        let f = FiniteField::with_order(4).unwrap();
        let pts = projective_points(&f, 2).unwrap();
        assert_eq!(pts.len(), 21);
        for p in &pts {
            assert_eq!(canonicalize(&f, p.coords()).unwrap(), p.coords());
        }
        let mut dedup = pts.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), pts.len());
    }

    #[test]
    fn complement_regularity() {
        let g = build_polarity_graph(2, 3).unwrap();
        let c = complement(&g);
        assert_eq!(c.regular_degree(), Some(9));
        assert_eq!(complement(&c), g);
        assert!(c.origin().unwrap().complemented);
    }

    #[test]
    fn certificates() {
        let c = certify_spectrum(&build_polarity_graph(2, 3).unwrap()).unwrap();
        assert_eq!((c.n, c.d, c.a, c.lambda_squared, c.verified), (13, 4, 1, 3, true));
        let c = certify_spectrum(&build_polarity_graph(2, 2).unwrap()).unwrap();
        assert_eq!((c.n, c.d, c.a, c.lambda_squared, c.verified), (7, 3, 1, 2, true));

        let c4 = certify_spectrum(&LoopyGraph::cycle(4)).unwrap();
        assert!(!c4.verified);
        assert_eq!(c4.offending_pair, Some((0, 2)));

        let path = LoopyGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(certify_spectrum(&path), Err(Error::NotRegular { vertex: 1, .. })));
    }

    #[test]
    fn complement_certifies_with_same_lambda() {
        let g = build_polarity_graph(2, 3).unwrap();
        let cg = certify_spectrum(&g).unwrap();
        let cf = certify_spectrum(&g.complement()).unwrap();
        assert!(cf.verified);
        assert_eq!(cf.lambda_squared, cg.lambda_squared);
        assert_eq!(cf.a, cg.n - 2 * cg.d + cg.a);
    }

    #[test]
    fn mixing_edge_cases() {
        let g = build_polarity_graph(2, 3).unwrap();
        let cert = certify_spectrum(&g).unwrap();
        let all = BitSet::full(13);
        let m = mixing_slack(&g, &cert, &all, &all).unwrap();
        assert_eq!(m.edges, 13 * 4);
        assert!((m.slack - 3f64.sqrt() * 13.0).abs() < 1e-12);
        let empty = BitSet::new(13);
        let m = mixing_slack(&g, &cert, &empty, &all).unwrap();
        assert_eq!(m.slack, 0.0);
        assert!(m.holds);

        // A = N(v), B = non-neighbours of v
        let v = 0;
        let a = g.row(v).clone();
        let b = g.row(v).complement();
        let expected: u64 = a.iter().map(|x| b.iter().filter(|&y| g.has_edge(x, y)).count() as u64).sum();
        let m = mixing_slack(&g, &cert, &a, &b).unwrap();
        assert_eq!(m.edges, expected);
        assert!(m.holds && m.slack >= 0.0);

        let bad = certify_spectrum(&LoopyGraph::cycle(4)).unwrap();
        assert!(matches!(mixing_slack(&LoopyGraph::cycle(4), &bad, &all, &all), Err(Error::Unverified)));
    }

    #[test]
    fn formulas_match_construction() {
        for (t, q) in [(2u32, 2u64), (2, 3), (3, 2), (2, 4), (2, 5), (3, 3)] {
            let g = build_polarity_graph(t, q).unwrap();
            let (n, d, a) = polarity_parameters(t, q);
            let c = certify_spectrum(&g).unwrap();
            assert_eq!((c.n as u64, c.d as u64, c.a as u64), (n, d, a), "t={t} q={q}");
            assert!(c.verified);
        }
    }
}
