//! Exhaustive certification engines: K_s search, exact independence number,
//! H_s-freeness of a graph pair and T_s-freeness of a digraph.
//!
//! Every search either returns a witness (re-validated against the raw
//! definition before it is reported), proves freeness by exhausting the
//! search tree, or gives up on its budget and says so. An inconclusive
//! report is never a freeness certificate.
//!
//! Loops are ignored for cliques and independent sets: a clique is a set of
//! distinct pairwise-adjacent vertices and a looped vertex may sit in an
//! independent set. For H_s tuples loops count as edges, matching the
//! definition over (not necessarily distinct) vertex tuples.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::graph::LoopyGraph;

pub const MAX_EXACT_INDEPENDENCE: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchBudget {
    pub time_limit: Option<Duration>,
    pub max_nodes: Option<u64>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { time_limit: Some(Duration::from_secs(300)), max_nodes: None }
    }
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget { time_limit: None, max_nodes: None }
    }

    pub fn seconds(secs: f64) -> Self {
        SearchBudget { time_limit: Some(Duration::from_secs_f64(secs)), max_nodes: None }
    }

    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget { time_limit: None, max_nodes: Some(max_nodes) }
    }
}

pub(crate) struct Meter {
    start: Instant,
    budget: SearchBudget,
    pub nodes: u64,
    pub exhausted: bool,
}

impl Meter {
    pub fn new(budget: SearchBudget) -> Self {
        Meter { start: Instant::now(), budget, nodes: 0, exhausted: false }
    }

    /// Counts one node; false once the budget is spent.
    #[inline]
    pub fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.exhausted {
            return false;
        }
        if let Some(max) = self.budget.max_nodes {
            if self.nodes > max {
                self.exhausted = true;
                return false;
            }
        }
        if self.nodes.is_multiple_of(1024) {
            if let Some(limit) = self.budget.time_limit {
                if self.start.elapsed() > limit {
                    self.exhausted = true;
                    return false;
                }
            }
        }
        true
    }

    pub fn elapsed_ms(&self) -> f64 {
        self.start.elapsed().as_secs_f64() * 1e3
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Free,
    WitnessFound,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub property: String,
    pub verdict: Verdict,
    pub witness: Option<Vec<usize>>,
    pub nodes: u64,
    pub elapsed_ms: Option<f64>,
}

impl SearchReport {
    pub fn is_free(&self) -> bool {
        self.verdict == Verdict::Free
    }

    pub fn found(&self) -> bool {
        self.verdict == Verdict::WitnessFound
    }

    fn from_search(property: String, outcome: Outcome<Vec<usize>>, meter: &Meter) -> Self {
        let (verdict, witness) = match outcome {
            Outcome::Found(w) => (Verdict::WitnessFound, Some(w)),
            Outcome::Exhausted => (Verdict::Free, None),
            Outcome::Aborted => (Verdict::Inconclusive, None),
        };
        SearchReport { property, verdict, witness, nodes: meter.nodes, elapsed_ms: Some(meter.elapsed_ms()) }
    }
}

enum Outcome<T> {
    Found(T),
    Exhausted,
    Aborted,
}

/// Vertices sorted by descending degree, ties by index.
fn degree_order(rows: &[BitSet]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(rows[v].count()), v));
    order
}

/// Relabels loopless rows so that vertex `i` of the result is `order[i]`.
fn permute_rows(rows: &[BitSet], order: &[usize]) -> Vec<BitSet> {
    let n = rows.len();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order.iter().map(|&v| BitSet::from_indices(n, rows[v].iter().map(|u| pos[u]))).collect()
}

/// Branch and bound over a greedy sequential colouring of the candidate set.
struct CliqueSearch<'a> {
    rows: &'a [BitSet],
    best: Vec<usize>,
    /// Stop as soon as a clique of this size is found.
    target: Option<usize>,
    meter: Meter,
}

impl CliqueSearch<'_> {
    fn color_sort(&self, cand: &BitSet) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(cand.count());
        let mut bounds = Vec::with_capacity(order.capacity());
        let mut uncolored = cand.clone();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut class = uncolored.clone();
            while let Some(v) = class.first() {
                uncolored.remove(v);
                class.remove(v);
                class.difference_with(&self.rows[v]);
                order.push(v);
                bounds.push(color);
            }
        }
        (order, bounds)
    }

    fn goal(&self) -> usize {
        match self.target {
            Some(t) => t,
            None => self.best.len() + 1,
        }
    }

    /// Returns false when the search should stop (target reached or budget).
    fn expand(&mut self, clique: &mut Vec<usize>, mut cand: BitSet) -> bool {
        if !self.meter.tick() {
            return false;
        }
        if cand.is_empty() {
            if clique.len() > self.best.len() {
                self.best = clique.clone();
            }
            return self.target.is_none_or(|t| self.best.len() < t);
        }
        let (order, bounds) = self.color_sort(&cand);
        for idx in (0..order.len()).rev() {
            if clique.len() + bounds[idx] < self.goal() {
                return true;
            }
            let v = order[idx];
            clique.push(v);
            let next = cand.intersection(&self.rows[v]);
            let keep_going = if next.is_empty() {
                if clique.len() > self.best.len() {
                    self.best = clique.clone();
                }
                self.meter.tick() && self.target.is_none_or(|t| self.best.len() < t)
            } else {
                self.expand(clique, next)
            };
            clique.pop();
            if !keep_going {
                return false;
            }
            cand.remove(v);
        }
        true
    }
}

fn run_clique_search(rows: &[BitSet], target: Option<usize>, budget: SearchBudget) -> (Option<Vec<usize>>, Meter, bool) {
    let order = degree_order(rows);
    let permuted = permute_rows(rows, &order);
    let n = rows.len();
    let mut search = CliqueSearch { rows: &permuted, best: Vec::new(), target, meter: Meter::new(budget) };
    search.expand(&mut Vec::new(), BitSet::full(n));
    let aborted = search.meter.exhausted;
    let mut best: Vec<usize> = search.best.iter().map(|&i| order[i]).collect();
    best.sort_unstable();
    let found = match target {
        Some(t) => (best.len() >= t).then(|| best[..t].to_vec()),
        None => Some(best),
    };
    (found, search.meter, aborted)
}

pub fn validate_clique(g: &LoopyGraph, vertices: &[usize]) -> bool {
    let mut seen = HashSet::new();
    vertices.iter().all(|&v| v < g.n() && seen.insert(v))
        && vertices.iter().enumerate().all(|(i, &u)| vertices[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

pub fn validate_independent(g: &LoopyGraph, vertices: &[usize]) -> bool {
    let mut seen = HashSet::new();
    vertices.iter().all(|&v| v < g.n() && seen.insert(v))
        && vertices.iter().enumerate().all(|(i, &u)| vertices[i + 1..].iter().all(|&v| !g.has_edge(u, v)))
}

/// Looks for `s` distinct pairwise-adjacent vertices.
pub fn find_clique(g: &LoopyGraph, s: usize, budget: SearchBudget) -> Result<SearchReport> {
    if s < 2 {
        return Err(Error::InvalidParameter(format!("clique size must be at least 2, got {s}")));
    }
    let rows = g.loopless_rows();
    let (found, meter, aborted) = run_clique_search(&rows, Some(s), budget);
    let outcome = match found {
        Some(w) => {
            assert!(validate_clique(g, &w), "clique search produced an invalid witness");
            Outcome::Found(w)
        }
        None if aborted => Outcome::Aborted,
        None => Outcome::Exhausted,
    };
    Ok(SearchReport::from_search(format!("K{s}-free"), outcome, &meter))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndependenceReport {
    pub alpha: usize,
    pub witness: Vec<usize>,
    pub nodes: u64,
    pub elapsed_ms: Option<f64>,
}

/// Exact α(G) by maximum clique search in the loopless complement.
pub fn independence_number(g: &LoopyGraph, budget: SearchBudget) -> Result<IndependenceReport> {
    let n = g.n();
    if n > MAX_EXACT_INDEPENDENCE {
        return Err(Error::SizeCap { what: "exact independence number", size: n as u64, cap: MAX_EXACT_INDEPENDENCE as u64 });
    }
    let rows: Vec<BitSet> = g
        .loopless_rows()
        .iter()
        .enumerate()
        .map(|(v, r)| {
            let mut c = r.complement();
            c.remove(v);
            c
        })
        .collect();
    let (found, meter, aborted) = run_clique_search(&rows, None, budget);
    if aborted {
        return Err(Error::BudgetExhausted { nodes: meter.nodes });
    }
    let witness = found.unwrap_or_default();
    assert!(validate_independent(g, &witness), "independence search produced an invalid witness");
    Ok(IndependenceReport { alpha: witness.len(), witness, nodes: meter.nodes, elapsed_ms: Some(meter.elapsed_ms()) })
}

/// Counts all `s`-cliques (distinct vertices, loops ignored).
pub fn count_cliques(g: &LoopyGraph, s: usize) -> u64 {
    fn rec(rows: &[BitSet], cand: &BitSet, left: usize) -> u64 {
        if left == 0 {
            return 1;
        }
        if left == 1 {
            return cand.count() as u64;
        }
        let mut total = 0;
        for v in cand.iter() {
            let mut next = cand.intersection(&rows[v]);
            // only larger indices, so each clique is counted once
            for u in 0..=v {
                next.remove(u);
            }
            if next.count() + 1 >= left {
                total += rec(rows, &next, left - 1);
            }
        }
        total
    }
    if s == 0 {
        return 1;
    }
    rec(&g.loopless_rows(), &BitSet::full(g.n()), s)
}

/// All independent `k`-sets (sorted vertex lists, lexicographic order);
/// errors once more than `limit` sets exist.
pub fn independent_sets_of_size(g: &LoopyGraph, k: usize, limit: usize) -> Result<Vec<Vec<usize>>> {
    let n = g.n();
    let non_adj: Vec<BitSet> = g
        .loopless_rows()
        .iter()
        .enumerate()
        .map(|(v, r)| {
            let mut c = r.complement();
            for u in 0..=v {
                c.remove(u);
            }
            c
        })
        .collect();
    let mut out = Vec::new();
    fn rec(rows: &[BitSet], cand: &BitSet, cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>, limit: usize) -> bool {
        if cur.len() == k {
            out.push(cur.clone());
            return out.len() <= limit;
        }
        if cur.len() + cand.count() < k {
            return true;
        }
        for v in cand.iter() {
            cur.push(v);
            let next = cand.intersection(&rows[v]);
            let ok = rec(rows, &next, cur, k, out, limit);
            cur.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    if k == 0 {
        return Ok(vec![Vec::new()]);
    }
    if !rec(&non_adj, &BitSet::full(n), &mut Vec::new(), k, &mut out, limit) {
        return Err(Error::SizeCap { what: "independent set enumeration", size: out.len() as u64, cap: limit as u64 });
    }
    Ok(out)
}

/// Checks `(a_1, b_1, ..., a_s, b_s)` against the H_s definition by direct
/// adjacency probes.
pub fn validate_hs_witness(f: &LoopyGraph, g: &LoopyGraph, tuple: &[usize]) -> bool {
    if !tuple.len().is_multiple_of(2) || tuple.iter().any(|&v| v >= f.n() || v >= g.n()) {
        return false;
    }
    let s = tuple.len() / 2;
    let a = |i: usize| tuple[2 * i];
    let b = |i: usize| tuple[2 * i + 1];
    (0..s).all(|i| f.has_edge(a(i), b(i))) && (0..s).all(|i| (i + 1..s).all(|j| g.has_edge(a(i), b(j))))
}

/// Searches for `(a_1, b_1, ..., a_s, b_s)` with `a_i b_i ∈ E(F)` and
/// `a_i b_j ∈ E(G)` for `i < j`; vertices may repeat.
///
/// `b_i` only appears in constraints with earlier `a_j`, so once `a_i` is
/// fixed any `b_i ∈ N_F(a_i) ∩ ⋂_{j<i} N_G(a_j)` is as good as any other.
/// The DFS therefore runs over the `a` sequence with the running
/// intersection `⋂ N_G(a_j)` as state, memoising states already refuted.
pub fn find_hs_witness(f: &LoopyGraph, g: &LoopyGraph, s: usize, budget: SearchBudget) -> Result<SearchReport> {
    if f.n() != g.n() {
        return Err(Error::VertexSetMismatch { left: f.n(), right: g.n() });
    }
    if s < 1 {
        return Err(Error::InvalidParameter("s must be at least 1".into()));
    }
    let n = g.n();
    let order = degree_order(g.rows());
    struct Ctx<'a> {
        f: &'a LoopyGraph,
        g: &'a LoopyGraph,
        s: usize,
        order: Vec<usize>,
        refuted: HashSet<(usize, BitSet)>,
        meter: Meter,
    }
    fn dfs(ctx: &mut Ctx<'_>, depth: usize, common: &BitSet, tuple: &mut Vec<usize>) -> Outcome<()> {
        if depth == ctx.s {
            return Outcome::Found(());
        }
        if ctx.refuted.contains(&(depth, common.clone())) {
            return Outcome::Exhausted;
        }
        if !ctx.meter.tick() {
            return Outcome::Aborted;
        }
        for idx in 0..ctx.order.len() {
            let a = ctx.order[idx];
            let Some(b) = common.intersection(ctx.f.row(a)).first() else { continue };
            let next = common.intersection(ctx.g.row(a));
            if depth + 1 < ctx.s && next.is_empty() {
                continue;
            }
            tuple.push(a);
            tuple.push(b);
            match dfs(ctx, depth + 1, &next, tuple) {
                Outcome::Exhausted => {}
                other => return other,
            }
            tuple.truncate(tuple.len() - 2);
        }
        ctx.refuted.insert((depth, common.clone()));
        Outcome::Exhausted
    }
    let mut ctx = Ctx { f, g, s, order, refuted: HashSet::new(), meter: Meter::new(budget) };
    let mut tuple = Vec::with_capacity(2 * s);
    let outcome = match dfs(&mut ctx, 0, &BitSet::full(n), &mut tuple) {
        Outcome::Found(()) => {
            assert!(validate_hs_witness(f, g, &tuple), "H_s search produced an invalid witness");
            Outcome::Found(tuple)
        }
        Outcome::Exhausted => Outcome::Exhausted,
        Outcome::Aborted => Outcome::Aborted,
    };
    Ok(SearchReport::from_search(format!("H{s}-free"), outcome, &ctx.meter))
}

/// Checks distinct `v_1..v_s` with an arc `v_i -> v_j` for every `i < j`.
pub fn validate_ts_witness<D: Digraph + ?Sized>(d: &D, tuple: &[usize]) -> bool {
    let mut seen = HashSet::new();
    tuple.iter().all(|&v| v < d.vertex_count() && seen.insert(v))
        && tuple.iter().enumerate().all(|(i, &u)| tuple[i + 1..].iter().all(|&v| d.has_arc(u, v)))
}

/// Searches for a transitive tournament on `s` distinct vertices.
pub fn find_ts_witness<D: Digraph + ?Sized>(d: &D, s: usize, budget: SearchBudget) -> Result<SearchReport> {
    if s < 2 {
        return Err(Error::InvalidParameter(format!("tournament size must be at least 2, got {s}")));
    }
    let n = d.vertex_count();
    let mut out_deg: Vec<(usize, usize)> = (0..n).map(|v| (d.out_row(v).count(), v)).collect();
    out_deg.sort_by_key(|&(deg, v)| (std::cmp::Reverse(deg), v));
    let order: Vec<usize> = out_deg.into_iter().map(|(_, v)| v).collect();

    fn dfs<D: Digraph + ?Sized>(
        d: &D,
        s: usize,
        order: &[usize],
        cand: &BitSet,
        tuple: &mut Vec<usize>,
        refuted: &mut HashSet<(usize, BitSet)>,
        meter: &mut Meter,
    ) -> Outcome<()> {
        if tuple.len() == s {
            return Outcome::Found(());
        }
        if tuple.len() + cand.count() < s || refuted.contains(&(tuple.len(), cand.clone())) {
            return Outcome::Exhausted;
        }
        if !meter.tick() {
            return Outcome::Aborted;
        }
        for &v in order {
            if !cand.contains(v) {
                continue;
            }
            let mut next = cand.intersection(&d.out_row(v));
            next.remove(v);
            if tuple.len() + 1 + next.count() < s {
                continue;
            }
            tuple.push(v);
            match dfs(d, s, order, &next, tuple, refuted, meter) {
                Outcome::Exhausted => {}
                other => return other,
            }
            tuple.pop();
        }
        refuted.insert((tuple.len(), cand.clone()));
        Outcome::Exhausted
    }

    let mut meter = Meter::new(budget);
    let mut tuple = Vec::with_capacity(s);
    let mut refuted = HashSet::new();
    let outcome = match dfs(d, s, &order, &BitSet::full(n), &mut tuple, &mut refuted, &mut meter) {
        Outcome::Found(()) => {
            assert!(validate_ts_witness(d, &tuple), "T_s search produced an invalid witness");
            Outcome::Found(tuple)
        }
        Outcome::Exhausted => Outcome::Exhausted,
        Outcome::Aborted => Outcome::Aborted,
    };
    Ok(SearchReport::from_search(format!("T{s}-free"), outcome, &meter))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::DenseDigraph;
    use crate::geometry::build_polarity_graph;

    fn brute_clique_number(g: &LoopyGraph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|m| {
                let vs: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
                g.is_clique(&vs)
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    fn brute_alpha(g: &LoopyGraph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|m| {
                let vs: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
                g.is_independent(&vs)
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn clique_in_complete_graph() {
        let r = find_clique(&LoopyGraph::complete(5, false), 4, SearchBudget::unlimited()).unwrap();
        assert!(r.found());
        assert_eq!(r.witness.unwrap().len(), 4);
    }

    #[test]
    fn empty_graph_is_k2_free() {
        assert!(find_clique(&LoopyGraph::new(6), 2, SearchBudget::unlimited()).unwrap().is_free());
        assert!(find_clique(&LoopyGraph::new(6), 1, SearchBudget::unlimited()).is_err());
    }

    #[test]
    fn loops_do_not_make_cliques() {
        let g = LoopyGraph::from_edges(2, [(0, 0), (1, 1)]).unwrap();
        assert!(find_clique(&g, 2, SearchBudget::unlimited()).unwrap().is_free());
        assert_eq!(independence_number(&g, SearchBudget::unlimited()).unwrap().alpha, 2);
    }

    #[test]
    fn fano_nonloop_part_matches_brute_force() {
        let g = build_polarity_graph(2, 2).unwrap();
        let nonloop: Vec<usize> = (0..g.n()).filter(|&v| !g.has_loop(v)).collect();
        assert_eq!(nonloop.len(), 4);
        let h = g.induced(&nonloop);
        let omega = brute_clique_number(&h);
        for s in 2..=5 {
            let r = find_clique(&h, s, SearchBudget::unlimited()).unwrap();
            assert_eq!(r.found(), omega >= s, "s={s}");
        }
    }

    #[test]
    fn alpha_small_cases() {
        let b = SearchBudget::unlimited();
        assert_eq!(independence_number(&LoopyGraph::new(9), b).unwrap().alpha, 9);
        assert_eq!(independence_number(&LoopyGraph::cycle(5), b).unwrap().alpha, 2);
        assert_eq!(independence_number(&LoopyGraph::new(0), b).unwrap().alpha, 0);
        let g = build_polarity_graph(2, 3).unwrap();
        let r = independence_number(&g, b).unwrap();
        assert_eq!(r.alpha, brute_alpha(&g));
        assert_eq!(r.alpha, 5);
        assert!(independence_number(&LoopyGraph::new(201), b).is_err());
    }

    #[test]
    fn budget_gives_inconclusive() {
        let g = LoopyGraph::complete(30, false).complement();
        let r = find_clique(&g, 2, SearchBudget::nodes(0)).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(r.witness.is_none());
    }

    #[test]
    fn counting_cliques() {
        assert_eq!(count_cliques(&LoopyGraph::complete(6, true), 4), 15);
        assert_eq!(count_cliques(&LoopyGraph::cycle(5), 3), 0);
        assert_eq!(count_cliques(&LoopyGraph::cycle(5), 2), 5);
    }

    #[test]
    fn independent_set_listing() {
        let c5 = LoopyGraph::cycle(5);
        let sets = independent_sets_of_size(&c5, 2, 100).unwrap();
        assert_eq!(sets.len(), 5);
        assert!(sets.iter().all(|s| validate_independent(&c5, s)));
        assert!(independent_sets_of_size(&c5, 3, 100).unwrap().is_empty());
        assert!(independent_sets_of_size(&LoopyGraph::new(10), 3, 50).is_err());
    }

    #[test]
    fn hs_trivial_witness() {
        let k = LoopyGraph::complete(3, true);
        let r = find_hs_witness(&k, &k, 2, SearchBudget::unlimited()).unwrap();
        assert!(r.found());
        assert!(validate_hs_witness(&k, &k, &r.witness.unwrap()));
        assert!(find_hs_witness(&k, &LoopyGraph::new(4), 2, SearchBudget::unlimited()).is_err());
    }

    #[test]
    fn polarity_pairs_are_hs_free() {
        for q in [2, 3] {
            let g = build_polarity_graph(2, q).unwrap();
            let f = g.complement();
            let r = find_hs_witness(&f, &g, 4, SearchBudget::unlimited()).unwrap();
            assert!(r.is_free(), "q={q}");
            // H_3 is not excluded
            assert!(find_hs_witness(&f, &g, 3, SearchBudget::unlimited()).unwrap().found());
        }
    }

    #[test]
    fn transitive_tournament() {
        let t5 = DenseDigraph::transitive_tournament(5);
        let r = find_ts_witness(&t5, 5, SearchBudget::unlimited()).unwrap();
        assert!(r.found());
        assert!(find_ts_witness(&t5, 6, SearchBudget::unlimited()).unwrap().is_free());
        // a directed 3-cycle has no T_3
        let c3 = DenseDigraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(find_ts_witness(&c3, 3, SearchBudget::unlimited()).unwrap().is_free());
        // a loop alone is not a T_2
        let l = DenseDigraph::from_arcs(1, [(0, 0)]).unwrap();
        assert!(find_ts_witness(&l, 2, SearchBudget::unlimited()).unwrap().is_free());
    }
}
