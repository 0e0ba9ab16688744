//! Forward-independent tuple counts, the bad 2k-tuple oracle over F_2^p,
//! rank sequences, and the two upper bounds on fwi_k.
//!
//! A k-tuple `(v_1, …, v_k)` of digraph vertices is forward independent
//! when there is no arc `(v_i, v_j)` with `i < j`. Repeats are allowed.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::freeness::{Meter, SearchBudget};
use crate::product::PairSystem;

pub const MAX_BRUTE_FORCE_TUPLES: u64 = 1_000_000_000;
const MAX_MEMO_ENTRIES: usize = 1 << 21;

/// log2 of a big integer, exact to double precision even past `f64::MAX`.
pub fn log2_big(n: &BigUint) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap_or(f64::INFINITY).log2();
    }
    let shift = bits - 64;
    (n >> shift).to_f64().unwrap_or(f64::INFINITY).log2() + shift as f64
}

/// `log2(count) <= bound + 1e-9`.
pub fn dominates(log2_bound: f64, count: &BigUint) -> bool {
    log2_big(count) <= log2_bound + 1e-9
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Oracle,
    Formula,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountResult {
    pub quantity: String,
    pub method: Method,
    #[serde(with = "decimal_opt")]
    pub exact: Option<BigUint>,
    pub log2: f64,
    pub params: BTreeMap<String, String>,
}

impl CountResult {
    fn exact(quantity: &str, method: Method, value: BigUint, params: &[(&str, String)]) -> Self {
        CountResult {
            quantity: quantity.into(),
            method,
            log2: log2_big(&value),
            exact: Some(value),
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        }
    }

    pub fn value(&self) -> Option<&BigUint> {
        self.exact.as_ref()
    }
}

/// Serializes a big integer as a decimal string.
pub mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BigUint, D::Error> {
        String::deserialize(de)?.parse().map_err(serde::de::Error::custom)
    }
}

pub mod decimal_opt {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigUint>, ser: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(n) => ser.serialize_some(&n.to_string()),
            None => ser.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Option<BigUint>, D::Error> {
        let s: Option<String> = Option::deserialize(de)?;
        s.map(|s| s.parse().map_err(serde::de::Error::custom)).transpose()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FwiMode {
    /// Checks every tuple of `V^k` against every ordered position pair.
    BruteForce,
    /// Prefix DFS over the set of still-allowed vertices, grouped by
    /// out-row class and memoised on `(remaining, allowed)`.
    #[default]
    Dfs,
}

pub fn fwi_count<D: Digraph + ?Sized>(d: &D, k: usize, mode: FwiMode, budget: SearchBudget) -> Result<CountResult> {
    let n = d.vertex_count();
    let value = match mode {
        FwiMode::BruteForce => fwi_brute_force(d, k)?,
        FwiMode::Dfs => fwi_dfs(d, k, budget)?,
    };
    let tag = match mode {
        FwiMode::BruteForce => "brute-force",
        FwiMode::Dfs => "dfs",
    };
    Ok(CountResult::exact("fwi", Method::Oracle, value, &[("k", k.to_string()), ("vertices", n.to_string()), ("mode", tag.into())]))
}

fn fwi_brute_force<D: Digraph + ?Sized>(d: &D, k: usize) -> Result<BigUint> {
    let n = d.vertex_count();
    let size = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if size > MAX_BRUTE_FORCE_TUPLES as u128 {
        return Err(Error::SizeCap { what: "brute-force tuple space", size: size.min(u64::MAX as u128) as u64, cap: MAX_BRUTE_FORCE_TUPLES });
    }
    if k == 0 {
        return Ok(BigUint::one());
    }
    if n == 0 {
        return Ok(BigUint::zero());
    }
    let mut tuple = vec![0usize; k];
    let mut count = 0u64;
    loop {
        let ok = (0..k).all(|i| (i + 1..k).all(|j| !d.has_arc(tuple[i], tuple[j])));
        count += ok as u64;
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(BigUint::from(count));
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < n {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

struct FwiSearch<'a, D: ?Sized> {
    d: &'a D,
    meter: Meter,
    memo: HashMap<(usize, BitSet), BigUint>,
}

impl<D: Digraph + ?Sized> FwiSearch<'_, D> {
    fn count(&mut self, remaining: usize, allowed: &BitSet) -> Option<BigUint> {
        if remaining == 0 {
            return Some(BigUint::one());
        }
        if remaining == 1 {
            return Some(BigUint::from(allowed.count()));
        }
        if !self.meter.tick() {
            return None;
        }
        if let Some(v) = self.memo.get(&(remaining, allowed.clone())) {
            return Some(v.clone());
        }
        let mut classes: BTreeMap<usize, (usize, u64)> = BTreeMap::new();
        for v in allowed.iter() {
            classes.entry(self.d.out_class(v)).or_insert((v, 0)).1 += 1;
        }
        let mut total = BigUint::zero();
        for (rep, mult) in classes.into_values() {
            let mut next = allowed.clone();
            next.difference_with(&self.d.out_row(rep));
            total += self.count(remaining - 1, &next)? * mult;
        }
        if self.memo.len() < MAX_MEMO_ENTRIES {
            self.memo.insert((remaining, allowed.clone()), total.clone());
        }
        Some(total)
    }
}

fn fwi_dfs<D: Digraph + ?Sized>(d: &D, k: usize, budget: SearchBudget) -> Result<BigUint> {
    let mut search = FwiSearch { d, meter: Meter::new(budget), memo: HashMap::new() };
    let all = BitSet::full(d.vertex_count());
    search.count(k, &all).ok_or(Error::BudgetExhausted { nodes: search.meter.nodes })
}

/// `⟨a, b⟩` over F_2 with vectors packed as bit masks.
#[inline]
fn dot2(a: u32, b: u32) -> u32 {
    (a & b).count_ones() & 1
}

fn check_bad_params(p: u32, k: usize) -> Result<()> {
    if !(1..=8).contains(&p) {
        return Err(Error::InvalidParameter(format!("bad-tuple oracle needs 1 <= p <= 8, got {p}")));
    }
    if k > 6 {
        return Err(Error::InvalidParameter(format!("bad-tuple oracle needs k <= 6, got {k}")));
    }
    Ok(())
}

/// `{b : ⟨a, b⟩ = 1}` as a set over `0..2^p`.
fn odd_halfspaces(p: u32) -> Vec<BitSet> {
    let size = 1usize << p;
    (0..size as u32).map(|a| BitSet::from_indices(size, (0..size as u32).filter(|&b| dot2(a, b) == 1).map(|b| b as usize))).collect()
}

/// Number of 2k-tuples `(a_1, b_1, …, a_k, b_k)` over F_2^p with
/// `⟨a_j, b_i⟩ = 1` for all `j <= i`.
///
/// After choosing `a_1..a_i` the admissible `b_i` form the affine set
/// `S_i = ⋂_{j<=i} {b : ⟨a_j, b⟩ = 1}`, and later constraints only shrink
/// it, so the count is a recursion over those sets.
pub fn bad_tuple_count(p: u32, k: usize) -> Result<CountResult> {
    check_bad_params(p, k)?;
    let halves = odd_halfspaces(p);
    let mut memo: HashMap<(usize, BitSet), u128> = HashMap::new();
    fn rec(i: usize, k: usize, s: &BitSet, halves: &[BitSet], memo: &mut HashMap<(usize, BitSet), u128>) -> u128 {
        if i == k {
            return 1;
        }
        if let Some(&v) = memo.get(&(i, s.clone())) {
            return v;
        }
        let mut total = 0u128;
        for h in halves {
            let next = s.intersection(h);
            let c = next.count() as u128;
            if c > 0 {
                total += c * rec(i + 1, k, &next, halves, memo);
            }
        }
        memo.insert((i, s.clone()), total);
        total
    }
    let value = rec(0, k, &BitSet::full(1 << p), &halves, &mut memo);
    Ok(CountResult::exact("bad-tuples", Method::Oracle, BigUint::from(value), &[("p", p.to_string()), ("k", k.to_string())]))
}

/// Visits every bad 2k-tuple as `(a, b)` slices, `a_i` ascending by integer
/// encoding and `b_i` ranging over the current affine solution set.
pub fn enumerate_bad_tuples(p: u32, k: usize, mut visit: impl FnMut(&[u32], &[u32])) -> Result<()> {
    check_bad_params(p, k)?;
    if p as usize * k > 16 {
        return Err(Error::InvalidParameter(format!("explicit enumeration limited to p*k <= 16, got {}", p as usize * k)));
    }
    let halves = odd_halfspaces(p);
    let mut a = Vec::with_capacity(k);
    let mut b = Vec::with_capacity(k);
    fn rec(k: usize, s: &BitSet, halves: &[BitSet], a: &mut Vec<u32>, b: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32], &[u32])) {
        if a.len() == k {
            visit(a, b);
            return;
        }
        for (ai, h) in halves.iter().enumerate() {
            let next = s.intersection(h);
            if next.is_empty() {
                continue;
            }
            a.push(ai as u32);
            for bi in next.iter() {
                b.push(bi as u32);
                rec(k, &next, halves, a, b, visit);
                b.pop();
            }
            a.pop();
        }
    }
    rec(k, &BitSet::full(1 << p), &halves, &mut a, &mut b, &mut visit);
    Ok(())
}

/// Prefix ranks `(r_0, r_1, …, r_k)` with `r_i = dim span{a_1..a_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RankSequence(pub Vec<usize>);

impl RankSequence {
    pub fn is_valid(&self, p: usize) -> bool {
        let r = &self.0;
        if r.is_empty() || r[0] != 0 {
            return false;
        }
        if r.len() > 1 && r[1] != 1 {
            return false;
        }
        r.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1) && *r.last().unwrap() <= p
    }

    pub fn final_rank(&self) -> usize {
        *self.0.last().unwrap_or(&0)
    }
}

/// Incremental Gaussian elimination over F_2 on bit-mask vectors.
pub fn rank_sequence_of(vectors: &[u32]) -> RankSequence {
    let mut basis = [0u32; 32];
    let mut rank = 0;
    let mut seq = vec![0];
    for &v in vectors {
        let mut x = v;
        while x != 0 {
            let top = 31 - x.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = x;
                rank += 1;
                break;
            }
            x ^= basis[top];
        }
        seq.push(rank);
    }
    RankSequence(seq)
}

/// Bad-tuple counts split by the rank sequence of `(a_1, …, a_k)`.
pub fn bad_tuples_by_rank_sequence(p: u32, k: usize) -> Result<BTreeMap<RankSequence, u64>> {
    let mut out = BTreeMap::new();
    enumerate_bad_tuples(p, k, |a, _| *out.entry(rank_sequence_of(a)).or_insert(0) += 1)?;
    Ok(out)
}

/// `2^{pt + pk - t(t+1)/2}`, the per-stratum bound for final rank `t`.
pub fn rank_stratum_bound(p: u32, k: usize, t: usize) -> BigUint {
    let exp = p as usize * t + p as usize * k - t * (t + 1) / 2;
    BigUint::one() << exp
}

/// `Σ_{t=1}^{s-1} C(k,t) 2^{(s-1)(t+k) - C(t+1,2)}`.
pub fn rank_formula_bound(s: u32, k: usize) -> Result<CountResult> {
    if s < 2 || k < 1 {
        return Err(Error::InvalidParameter(format!("rank formula needs s >= 2 and k >= 1, got s={s}, k={k}")));
    }
    let p = (s - 1) as usize;
    let mut total = BigUint::zero();
    for t in 1..=p {
        let exp = p * (t + k) - t * (t + 1) / 2;
        total += binomial(k as u64, t as u64) << exp;
    }
    Ok(CountResult::exact("rank-formula-bound", Method::Formula, total, &[("s", s.to_string()), ("k", k.to_string())]))
}

/// log2 of the summands `M_t` of the rank formula, together with the
/// simplified exponent `1.5 s² + a s - 2.5 s` (with `k = s + a` and the
/// unknown lower-order term dropped). Diagnostic output only.
pub fn rank_summand_diagnostics(s: u32, k: usize) -> (Vec<(usize, f64)>, f64) {
    let p = (s - 1) as usize;
    let terms = (1..=p)
        .map(|t| {
            let exp = (p * (t + k) - t * (t + 1) / 2) as f64;
            (t, log2_big(&binomial(k as u64, t as u64)) + exp)
        })
        .collect();
    let (s, a) = (s as f64, k as f64 - s as f64);
    (terms, 1.5 * s * s + a * s - 2.5 * s)
}

/// log2 of `16^k η^{k-w} (d(F) n)^k`; requires `k >= w`.
pub fn spectral_fwi_bound(pair: &PairSystem, k: u64) -> Result<CountResult> {
    let kf = k as f64;
    if kf < pair.w {
        return Err(Error::BelowShrinkingThreshold { k, w: pair.w });
    }
    let eta = pair.eta.value();
    let eta_term = if kf == pair.w { 0.0 } else { (kf - pair.w) * eta.log2() };
    let log2 = 4.0 * kf + eta_term + kf * (pair.digraph_size() as f64).log2();
    let mut params = BTreeMap::new();
    params.insert("k".into(), k.to_string());
    params.insert("w".into(), format!("{:.12}", pair.w));
    params.insert("eta".into(), format!("{:.12}", eta));
    Ok(CountResult { quantity: "spectral-fwi-bound".into(), method: Method::Formula, exact: None, log2, params })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::DenseDigraph;
    use crate::product::build_f2_digraph;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn trivial_counts() {
        let d = build_f2_digraph(4).unwrap();
        for mode in [FwiMode::BruteForce, FwiMode::Dfs] {
            assert_eq!(fwi_count(&d, 1, mode, SearchBudget::unlimited()).unwrap().exact, Some(big(28)));
            assert_eq!(fwi_count(&d, 0, mode, SearchBudget::unlimited()).unwrap().exact, Some(big(1)));
        }
        let arcless = DenseDigraph::new(5);
        assert_eq!(fwi_count(&arcless, 3, FwiMode::Dfs, SearchBudget::unlimited()).unwrap().exact, Some(big(125)));
    }

    #[test]
    fn f2_counts_match_oracle() {
        let d = build_f2_digraph(4).unwrap();
        let expected = [28u64, 448, 4480];
        for (k, &e) in (1..=3).zip(&expected) {
            let brute = fwi_count(&d, k, FwiMode::BruteForce, SearchBudget::unlimited()).unwrap();
            let dfs = fwi_count(&d, k, FwiMode::Dfs, SearchBudget::unlimited()).unwrap();
            let bad = bad_tuple_count(3, k).unwrap();
            assert_eq!(brute.exact, Some(big(e)));
            assert_eq!(dfs.exact, Some(big(e)));
            assert_eq!(bad.exact, Some(big(e)));
        }
        assert_eq!(fwi_count(&d, 4, FwiMode::Dfs, SearchBudget::unlimited()).unwrap().exact, Some(big(34048)));
    }

    #[test]
    fn bad_tuple_values() {
        assert_eq!(bad_tuple_count(3, 1).unwrap().exact, Some(big(28)));
        assert_eq!(bad_tuple_count(1, 2).unwrap().exact, Some(big(1)));
        assert_eq!(bad_tuple_count(4, 1).unwrap().exact, Some(big(120)));
        assert_eq!(bad_tuple_count(4, 2).unwrap().exact, Some(big(7680)));
        assert!(bad_tuple_count(9, 1).is_err());
        assert!(bad_tuple_count(3, 7).is_err());
    }

    #[test]
    fn enumeration_agrees_with_recursion() {
        for (p, k) in [(2, 2), (3, 2), (3, 3), (4, 2)] {
            let mut n = 0u64;
            enumerate_bad_tuples(p, k, |a, b| {
                assert!(a.iter().enumerate().all(|(j, &aj)| b[j..].iter().all(|&bi| dot2(aj, bi) == 1)));
                n += 1;
            })
            .unwrap();
            assert_eq!(Some(big(n)), bad_tuple_count(p, k).unwrap().exact);
        }
    }

    #[test]
    fn rank_sequences() {
        assert_eq!(rank_sequence_of(&[0b100, 0b010, 0b001]).0, vec![0, 1, 2, 3]);
        assert_eq!(rank_sequence_of(&[0b100, 0b100]).0, vec![0, 1, 1]);
        assert_eq!(rank_sequence_of(&[0b110, 0b011, 0b101]).0, vec![0, 1, 2, 2]);
        assert!(RankSequence(vec![0, 1, 1, 2]).is_valid(3));
        assert!(!RankSequence(vec![0, 0]).is_valid(3));
        assert!(!RankSequence(vec![0, 1, 3]).is_valid(3));
        assert!(!RankSequence(vec![0, 1, 2]).is_valid(1));
    }

    #[test]
    fn strata_respect_bound() {
        let strata = bad_tuples_by_rank_sequence(3, 2).unwrap();
        assert_eq!(strata.values().sum::<u64>(), 448);
        for (r, &c) in &strata {
            assert!(r.is_valid(3));
            assert!(big(c) <= rank_stratum_bound(3, 2, r.final_rank()));
        }
    }

    #[test]
    fn rank_formula_values() {
        assert_eq!(rank_formula_bound(4, 4).unwrap().exact, Some(big(393216)));
        assert_eq!(rank_formula_bound(4, 2).unwrap().exact, Some(big(1024)));
        let got: Vec<_> = (1..=3).map(|k| rank_formula_bound(4, k).unwrap().exact.unwrap()).collect();
        assert_eq!(got, vec![big(32), big(1024), big(22528)]);
        assert_eq!(rank_formula_bound(5, 1).unwrap().exact, Some(big(128)));
        assert_eq!(rank_formula_bound(5, 2).unwrap().exact, Some(big(12288)));
    }

    #[test]
    fn budget_is_inconclusive() {
        let d = build_f2_digraph(5).unwrap();
        assert!(matches!(fwi_count(&d, 5, FwiMode::Dfs, SearchBudget::nodes(3)), Err(Error::BudgetExhausted { .. })));
    }

    #[test]
    fn big_log2() {
        assert_eq!(log2_big(&big(1024)), 10.0);
        let huge = BigUint::one() << 5000u32;
        assert!((log2_big(&huge) - 5000.0).abs() < 1e-9);
        assert!(dominates(10.0, &big(1024)));
        assert!(!dominates(9.9, &big(1024)));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(7, 3), big(35));
        assert_eq!(binomial(2, 3), big(0));
        assert_eq!(binomial(5, 0), big(1));
    }

    #[test]
    fn count_serializes_as_decimal() {
        let c = rank_formula_bound(4, 4).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        assert!(json.contains("\"exact\":\"393216\""));
        let back: CountResult = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }
}
