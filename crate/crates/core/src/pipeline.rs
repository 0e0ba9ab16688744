//! Randomised constructions: orienting a digraph by a random permutation,
//! sampling and pruning to a certified Ramsey witness, and the multicolour
//! colouring driven by random maps into a digraph.
//!
//! Randomness comes from `ChaCha8Rng::seed_from_u64(seed)` with a fixed
//! stream per purpose: stream 0 draws the permutation, stream `c` draws the
//! map φ_c of colour `c`, and sampling attempt `j` uses stream
//! `SAMPLE_STREAM_BASE + j`. Runs are reproducible from the seed within one
//! build.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::counting::{binomial, fwi_count, log2_big, FwiMode};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::freeness::{count_cliques, find_clique, independence_number, independent_sets_of_size, IndependenceReport, SearchBudget, SearchReport, MAX_EXACT_INDEPENDENCE};
use crate::graph::LoopyGraph;

pub const ORIENT_STREAM: u64 = 0;
pub const SAMPLE_STREAM_BASE: u64 = 1 << 32;
pub const MAX_ORIENT_VERTICES: usize = 20_000;
const MAX_INDEPENDENT_SETS: usize = 2_000_000;

pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Clone, Debug)]
pub struct Orientation {
    pub graph: LoopyGraph,
    /// `pi[v]` is the position of vertex `v` in the random order.
    pub pi: Vec<usize>,
}

impl Orientation {
    /// Vertices sorted by position.
    pub fn sort_by_pi(&self, vertices: &[usize]) -> Vec<usize> {
        let mut v = vertices.to_vec();
        v.sort_by_key(|&x| self.pi[x]);
        v
    }
}

/// Edge `{u, v}` for every arc `(u, v)` between distinct vertices with
/// `π(u) < π(v)`.
pub fn orient<D: Digraph + ?Sized>(d: &D, seed: u64) -> Result<Orientation> {
    let n = d.vertex_count();
    if n > MAX_ORIENT_VERTICES {
        return Err(Error::SizeCap { what: "orientation", size: n as u64, cap: MAX_ORIENT_VERTICES as u64 });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut stream_rng(seed, ORIENT_STREAM));
    let mut pi = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        pi[v] = pos;
    }
    let mut graph = LoopyGraph::new(n);
    for u in 0..n {
        for v in d.out_row(u).iter() {
            if v != u && pi[u] < pi[v] {
                graph.add_edge(u, v);
            }
        }
    }
    Ok(Orientation { graph, pi })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ImpliedBound {
    pub s: usize,
    pub k: usize,
    /// `r(s, k) >= lower`.
    pub lower: usize,
    #[serde(with = "crate::counting::decimal")]
    pub erdos_szekeres_upper: BigUint,
    pub consistent: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RamseyWitness {
    pub s: usize,
    pub k: usize,
    pub p: f64,
    pub seed: u64,
    pub attempt: usize,
    pub n: usize,
    /// Indices into the sampled-from graph, in increasing order.
    pub vertices: Vec<usize>,
    pub deleted: Vec<usize>,
    pub pi: Option<Vec<usize>>,
    pub clique_report: SearchReport,
    pub independence_report: IndependenceReport,
    pub fully_certified: bool,
    pub implied_bound: Option<ImpliedBound>,
    #[serde(skip)]
    pub graph: LoopyGraph,
}

fn implied_bound(s: usize, k: usize, n: usize) -> ImpliedBound {
    let upper = binomial((k + s - 2) as u64, (s - 1) as u64);
    let lower = n + 1;
    ImpliedBound { s, k, lower, consistent: BigUint::from(lower) <= upper, erdos_szekeres_upper: upper }
}

/// Keeps each vertex with probability `p`, then deletes vertices until no
/// independent `k`-set survives, and certifies the result exactly. The
/// deleted vertex is always one lying in the most surviving independent
/// `k`-sets (lowest index on ties). Over `attempts` tries the certified
/// witness with the most vertices wins; ties keep the earliest attempt.
pub fn sample_and_prune(gamma: &LoopyGraph, s: usize, k: usize, p: f64, seed: u64, attempts: usize, budget: SearchBudget) -> Result<RamseyWitness> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("p must lie in [0, 1], got {p}")));
    }
    if attempts == 0 {
        return Err(Error::InvalidParameter("attempts must be at least 1".into()));
    }
    if s < 2 || k < 1 {
        return Err(Error::InvalidParameter(format!("need s >= 2 and k >= 1, got s={s}, k={k}")));
    }
    let mut best: Option<RamseyWitness> = None;
    for attempt in 0..attempts {
        let mut rng = stream_rng(seed, SAMPLE_STREAM_BASE + attempt as u64);
        let kept: Vec<usize> = (0..gamma.n()).filter(|_| rng.gen::<f64>() < p).collect();
        if kept.len() > MAX_EXACT_INDEPENDENCE {
            return Err(Error::SizeCap { what: "sampled graph", size: kept.len() as u64, cap: MAX_EXACT_INDEPENDENCE as u64 });
        }
        let (alive, deleted) = prune(gamma, kept, k, budget)?;
        let graph = gamma.induced(&alive).without_loops();
        let clique_report = find_clique(&graph, s, budget)?;
        let independence_report = independence_number(&graph, budget)?;
        let fully_certified = clique_report.is_free() && independence_report.alpha < k;
        let n = alive.len();
        let witness = RamseyWitness {
            s,
            k,
            p,
            seed,
            attempt,
            n,
            vertices: alive,
            deleted,
            pi: None,
            clique_report,
            independence_report,
            fully_certified,
            implied_bound: fully_certified.then(|| implied_bound(s, k, n)),
            graph,
        };
        let better = match &best {
            None => true,
            Some(b) => (witness.fully_certified && !b.fully_certified) || (witness.fully_certified == b.fully_certified && witness.n > b.n),
        };
        if better {
            best = Some(witness);
        }
    }
    Ok(best.expect("at least one attempt"))
}

fn prune(gamma: &LoopyGraph, mut alive: Vec<usize>, k: usize, budget: SearchBudget) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut deleted = Vec::new();
    loop {
        let h = gamma.induced(&alive);
        if independence_number(&h, budget)?.alpha < k {
            return Ok((alive, deleted));
        }
        let sets = independent_sets_of_size(&h, k, MAX_INDEPENDENT_SETS)?;
        let mut cover = vec![0u64; alive.len()];
        for set in &sets {
            for &v in set {
                cover[v] += 1;
            }
        }
        let max = *cover.iter().max().expect("nonempty cover");
        let victim = cover.iter().position(|&c| c == max).expect("max exists");
        deleted.push(alive.remove(victim));
    }
}

/// Orients `d` with `seed`, sets `k = α(Γ) + 1` unless given, and samples.
pub fn run_witness_pipeline<D: Digraph + ?Sized>(d: &D, s: usize, k: Option<usize>, p: f64, seed: u64, attempts: usize, budget: SearchBudget) -> Result<RamseyWitness> {
    let o = orient(d, seed)?;
    let k = match k {
        Some(k) => k,
        None => independence_number(&o.graph, budget)?.alpha + 1,
    };
    let mut w = sample_and_prune(&o.graph, s, k, p, seed, attempts, budget)?;
    w.pi = Some(o.pi);
    Ok(w)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PChoice {
    Probability(f64),
    /// `i_k = 0`: nothing to destroy, keep every vertex.
    NoIndependentSets,
}

/// `min(1, i_k^{-1/k})`, computed in log space.
pub fn choose_p(i_k: &BigUint, k: usize) -> Result<PChoice> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    if i_k.is_zero() {
        return Ok(PChoice::NoIndependentSets);
    }
    if i_k.is_one() {
        return Ok(PChoice::Probability(1.0));
    }
    Ok(PChoice::Probability((-log2_big(i_k) / k as f64).exp2().min(1.0)))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MultiColoring {
    pub n: usize,
    pub ell: usize,
    pub seed: u64,
    /// `maps[c - 1][i] = φ_c(i)` for colours `c = 1..ell-1`.
    pub maps: Vec<Vec<usize>>,
    /// Colour of `{i, j}`, `i < j`, row-major over the upper triangle.
    colors: Vec<u8>,
}

impl MultiColoring {
    fn index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    /// Colour in `1..=ell` of the edge `{i, j}`.
    pub fn color(&self, i: usize, j: usize) -> usize {
        assert!(i != j && i < self.n && j < self.n);
        self.colors[self.index(i, j)] as usize
    }

    pub fn class_graph(&self, c: usize) -> LoopyGraph {
        let mut g = LoopyGraph::new(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.color(i, j) == c {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Number of monochromatic `K_s` in colour `c`.
    pub fn mono_cliques(&self, c: usize, s: usize) -> u64 {
        count_cliques(&self.class_graph(c), s)
    }
}

/// Colours each edge `ij` (`i < j`) of `K_n` with the least `c` such that
/// `(φ_c(i), φ_c(j))` is an arc of `d`, or with `ell` if there is none.
pub fn multicolor_build<D: Digraph + ?Sized>(d: &D, ell: usize, n: usize, seed: u64) -> Result<MultiColoring> {
    if !(3..=255).contains(&ell) {
        return Err(Error::InvalidParameter(format!("need 3 <= ell <= 255, got {ell}")));
    }
    let big_n = d.vertex_count();
    if big_n == 0 {
        return Err(Error::InvalidParameter("digraph has no vertices".into()));
    }
    if let Some(v) = (0..big_n).find(|&v| d.has_arc(v, v)) {
        return Err(Error::DigraphHasLoop(v));
    }
    let maps: Vec<Vec<usize>> = (1..ell as u64)
        .map(|c| {
            let mut rng = stream_rng(seed, c);
            (0..n).map(|_| rng.gen_range(0..big_n)).collect()
        })
        .collect();
    let mut colors = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let c = maps.iter().position(|phi| d.has_arc(phi[i], phi[j])).map_or(ell, |c| c + 1);
            colors.push(c as u8);
        }
    }
    Ok(MultiColoring { n, ell, seed, maps, colors })
}

/// `C(n, s) (fwi_s / N^s)^{ell-1}`, the expected number of colour-`ell`
/// monochromatic `K_s`.
pub fn multicolor_expectation(fwi_s: &BigUint, big_n: usize, ell: usize, n: usize, s: usize) -> f64 {
    let choose = binomial(n as u64, s as u64);
    if choose.is_zero() {
        return 0.0;
    }
    let ratio_log2 = log2_big(fwi_s) - s as f64 * (big_n as f64).log2();
    (log2_big(&choose) + (ell - 1) as f64 * ratio_log2).exp2()
}

pub fn multicolor_expected<D: Digraph + ?Sized>(d: &D, ell: usize, n: usize, s: usize, budget: SearchBudget) -> Result<f64> {
    let fwi = fwi_count(d, s, FwiMode::Dfs, budget)?;
    Ok(multicolor_expectation(fwi.value().expect("oracle count is exact"), d.vertex_count(), ell, n, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::DenseDigraph;
    use crate::freeness::validate_independent;
    use crate::product::build_f2_digraph;

    #[test]
    fn arcless_orients_to_empty() {
        let d = DenseDigraph::new(6);
        for seed in 0..10 {
            assert_eq!(orient(&d, seed).unwrap().graph.edge_count(), 0);
        }
    }

    #[test]
    fn single_arc_frequency() {
        let d = DenseDigraph::from_arcs(2, [(0, 1)]).unwrap();
        let trials = 10_000;
        let hits = (0..trials).filter(|&seed| orient(&d, seed).unwrap().graph.has_edge(0, 1)).count() as f64;
        let sigma = (trials as f64 * 0.25).sqrt();
        assert!((hits - trials as f64 / 2.0).abs() <= 3.0 * sigma, "hits = {hits}");
    }

    #[test]
    fn orientation_is_deterministic() {
        let d = build_f2_digraph(4).unwrap();
        let a = orient(&d, 7).unwrap();
        let b = orient(&d, 7).unwrap();
        assert_eq!(a.pi, b.pi);
        assert_eq!(a.graph, b.graph);
    }

    #[test]
    fn p_zero_is_vacuous() {
        let g = LoopyGraph::complete(5, false);
        let w = sample_and_prune(&g, 3, 2, 0.0, 1, 3, SearchBudget::unlimited()).unwrap();
        assert_eq!(w.n, 0);
        assert!(w.fully_certified);
        assert_eq!(w.implied_bound.unwrap().lower, 1);
    }

    #[test]
    fn p_one_keeps_graph_without_large_independent_sets() {
        let g = LoopyGraph::cycle(5);
        let w = sample_and_prune(&g, 3, 3, 1.0, 0, 1, SearchBudget::unlimited()).unwrap();
        assert_eq!(w.n, 5);
        assert!(w.deleted.is_empty());
        assert!(w.fully_certified);
        // the pentagon proves r(3, 3) > 5
        assert_eq!(w.implied_bound.as_ref().unwrap().lower, 6);
        assert!(w.implied_bound.unwrap().consistent);
    }

    #[test]
    fn pruning_destroys_independent_sets() {
        let g = LoopyGraph::new(6);
        let w = sample_and_prune(&g, 2, 3, 1.0, 0, 1, SearchBudget::unlimited()).unwrap();
        assert_eq!(w.n, 2);
        assert_eq!(w.deleted, vec![0, 1, 2, 3]);
        assert!(validate_independent(&w.graph, &[0, 1]));
        assert!(w.fully_certified);
    }

    #[test]
    fn sampling_errors() {
        let g = LoopyGraph::new(3);
        assert!(sample_and_prune(&g, 3, 2, 1.5, 0, 1, SearchBudget::unlimited()).is_err());
        assert!(sample_and_prune(&g, 3, 2, 0.5, 0, 0, SearchBudget::unlimited()).is_err());
    }

    #[test]
    fn p_choices() {
        assert_eq!(choose_p(&BigUint::one(), 3).unwrap(), PChoice::Probability(1.0));
        assert_eq!(choose_p(&BigUint::zero(), 3).unwrap(), PChoice::NoIndependentSets);
        let PChoice::Probability(p) = choose_p(&BigUint::from(16u32), 4).unwrap() else { panic!() };
        assert!((p - 0.5).abs() < 1e-15);
        let PChoice::Probability(p) = choose_p(&BigUint::from(393216u32), 4).unwrap() else { panic!() };
        assert!((p - 393216f64.powf(-0.25)).abs() < 1e-12);
        assert!((p - 0.0399).abs() < 1e-4);
    }

    #[test]
    fn multicolor_basics() {
        let arcless = DenseDigraph::new(4);
        let mc = multicolor_build(&arcless, 3, 6, 1).unwrap();
        assert!((0..6).all(|i| (i + 1..6).all(|j| mc.color(i, j) == 3)));
        assert!(multicolor_build(&arcless, 3, 1, 1).unwrap().colors.is_empty());
        let looped = DenseDigraph::from_arcs(2, [(1, 1)]).unwrap();
        assert!(matches!(multicolor_build(&looped, 3, 4, 0), Err(Error::DigraphHasLoop(1))));
        assert!(multicolor_build(&arcless, 2, 4, 0).is_err());
    }

    #[test]
    fn expectation_edge_cases() {
        let arcless = DenseDigraph::new(4);
        let e = multicolor_expected(&arcless, 3, 10, 4, SearchBudget::unlimited()).unwrap();
        assert!((e - 210.0).abs() < 1e-9);
        assert_eq!(multicolor_expected(&arcless, 3, 3, 4, SearchBudget::unlimited()).unwrap(), 0.0);
        let d = build_f2_digraph(4).unwrap();
        let e = multicolor_expected(&d, 3, 20, 4, SearchBudget::unlimited()).unwrap();
        assert!((e - 14.866637200486194).abs() < 1e-9);
    }
}
