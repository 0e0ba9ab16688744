//! Closed-form Ramsey bounds evaluated in log2 space, the pair lower bound
//! with its admissible range, and two one-dimensional root finders.

use std::collections::BTreeMap;
use std::f64::consts::{E, LN_2};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::counting::{binomial, log2_big};
use crate::error::{Error, Result};
use crate::product::PairSystem;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub params: BTreeMap<String, f64>,
    pub log2_value: f64,
    #[serde(with = "crate::counting::decimal_opt")]
    pub exact: Option<BigUint>,
    /// Hypotheses the inputs fail, and constants that are not derived.
    pub flags: Vec<String>,
    /// Asymptotic factors dropped from the value.
    pub caveats: Vec<String>,
}

impl BoundReport {
    fn new(name: &str, params: &[(&str, f64)], log2_value: f64) -> Self {
        BoundReport {
            name: name.into(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            log2_value,
            exact: None,
            flags: Vec::new(),
            caveats: Vec::new(),
        }
    }

    fn flag_if(&mut self, cond: bool, msg: &str) {
        if cond {
            self.flags.push(msg.into());
        }
    }

    pub fn csv_header() -> &'static str {
        "name,params,log2_value,exact_value,flags"
    }

    pub fn csv_row(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let exact = self.exact.as_ref().map(|e| e.to_string()).unwrap_or_default();
        let quote = |s: String| format!("\"{}\"", s.replace('"', "\"\""));
        format!("{},{},{:.12e},{},{}", self.name, quote(params.join(";")), self.log2_value, exact, quote(self.flags.join("; ")))
    }
}

/// `C(k + s - 2, s - 1)`.
pub fn erdos_szekeres_upper(s: u64, k: u64) -> Result<BoundReport> {
    if s < 1 || k < 1 {
        return Err(Error::InvalidParameter(format!("need s, k >= 1, got s={s}, k={k}")));
    }
    let value = binomial(k + s - 2, s - 1);
    let mut r = BoundReport::new("erdos-szekeres", &[("s", s as f64), ("k", k as f64)], log2_big(&value));
    r.exact = Some(value);
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LowerBound {
    /// `c_s k^{s-2} / (ln k)^{2s-6}`.
    Main { s: u64, k: u64, c_s: Option<f64> },
    /// `(k/s)^{(1-δ)s}`.
    General { s: u64, k: u64, delta: f64 },
    /// `(2^{1 - 1/(2C)})^s`; `C` may be infinite.
    Kck { s: u64, c: f64 },
    /// `(s/e) 2^{(s+a-1)/2 - a²/(2s)}`.
    Close { s: u64, a: f64 },
    /// `2^{(ℓ-1)s/2}`.
    Multicolor { s: u64, ell: u64 },
    /// `(s/e) 2^{(s+1)/2 + a/4}`.
    SpencerClose { s: u64, a: f64 },
}

impl LowerBound {
    pub fn name(&self) -> &'static str {
        match self {
            LowerBound::Main { .. } => "thm-main",
            LowerBound::General { .. } => "thm-general",
            LowerBound::Kck { .. } => "thm-kck",
            LowerBound::Close { .. } => "thm-close",
            LowerBound::Multicolor { .. } => "thm-multicolor",
            LowerBound::SpencerClose { .. } => "spencer-close",
        }
    }

    fn s(&self) -> u64 {
        match *self {
            LowerBound::Main { s, .. }
            | LowerBound::General { s, .. }
            | LowerBound::Kck { s, .. }
            | LowerBound::Close { s, .. }
            | LowerBound::Multicolor { s, .. }
            | LowerBound::SpencerClose { s, .. } => s,
        }
    }
}

pub fn lower_bound_formula(bound: &LowerBound) -> Result<BoundReport> {
    let s = bound.s();
    if s == 0 {
        return Err(Error::InvalidParameter("s must be positive".into()));
    }
    let sf = s as f64;
    let name = bound.name();
    let report = match *bound {
        LowerBound::Main { k, c_s, .. } => {
            if k < 2 {
                return Err(Error::InvalidParameter(format!("ln k must be positive, got k={k}")));
            }
            let c = c_s.unwrap_or(1.0);
            if c <= 0.0 {
                return Err(Error::InvalidParameter(format!("c_s must be positive, got {c}")));
            }
            let kf = k as f64;
            let log2 = c.log2() + (sf - 2.0) * kf.log2() - (2.0 * sf - 6.0) * kf.ln().log2();
            let mut r = BoundReport::new(name, &[("s", sf), ("k", kf), ("c_s", c)], log2);
            r.flag_if(c_s.is_none(), "placeholder constant: c_s = 1, the true constant is unspecified");
            r.flag_if(s < 4, "hypothesis s >= 4 fails");
            r.caveats.push("holds for k large enough in terms of s".into());
            r
        }
        LowerBound::General { k, delta, .. } => {
            if k == 0 {
                return Err(Error::InvalidParameter("k must be positive".into()));
            }
            let kf = k as f64;
            let mut r = BoundReport::new(name, &[("s", sf), ("k", kf), ("delta", delta)], (1.0 - delta) * sf * (kf / sf).log2());
            r.flag_if(!(delta > 0.0 && delta < 1.0), "hypothesis 0 < delta < 1 fails");
            r.flag_if(k < s, "hypothesis k >= L s fails even for L = 1");
            r.caveats.push("requires s >= L and k >= L s for an unspecified L(delta)".into());
            r
        }
        LowerBound::Kck { c, .. } => {
            if c.is_nan() || c <= 0.0 {
                return Err(Error::InvalidParameter(format!("C must be positive, got {c}")));
            }
            let mut r = BoundReport::new(name, &[("s", sf), ("C", c)], (1.0 - 1.0 / (2.0 * c)) * sf);
            r.flag_if(c <= 1.0, "hypothesis C > 1 fails");
            r.caveats.push("k = C s; holds for s large enough in terms of C".into());
            r
        }
        LowerBound::Close { a, .. } => {
            let log2 = (sf / E).log2() + (sf + a - 1.0) / 2.0 - a * a / (2.0 * sf);
            let mut r = BoundReport::new(name, &[("s", sf), ("a", a)], log2);
            r.flag_if(a < 0.0, "hypothesis a >= 0 fails");
            r.caveats.push("k = s + a with a = o(s); a (1 + o(1)) factor is dropped".into());
            r
        }
        LowerBound::Multicolor { ell, .. } => {
            let exp2 = (ell.saturating_sub(1)) * s;
            let mut r = BoundReport::new(name, &[("s", sf), ("ell", ell as f64)], exp2 as f64 / 2.0);
            if exp2.is_multiple_of(2) {
                r.exact = Some(BigUint::from(1u8) << (exp2 / 2));
            }
            r.flag_if(ell < 3, "hypothesis ell >= 3 fails");
            r.caveats.push("lower bound holds up to an unspecified constant factor".into());
            r
        }
        LowerBound::SpencerClose { a, .. } => {
            let log2 = (sf / E).log2() + (sf + 1.0) / 2.0 + a / 4.0;
            let mut r = BoundReport::new(name, &[("s", sf), ("a", a)], log2);
            r.flag_if(a < 0.0, "hypothesis a >= 0 fails");
            r.caveats.push("an O(a^2/s) term in the exponent and a (1 + o(1)) factor are dropped".into());
            r
        }
    };
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thm28Report {
    pub k: f64,
    pub eta: f64,
    pub w: f64,
    pub n: usize,
    pub d_f: usize,
    pub d_g: usize,
    /// `(k/50) η^{(w-k)/k} - 1`.
    pub branch_power: f64,
    /// `k/(100 η) - 1`.
    pub branch_linear: f64,
    pub interval: (f64, f64),
    pub interval_empty: bool,
    pub flags: Vec<String>,
}

pub fn thm28_eval(pair: &PairSystem, k: f64) -> Thm28Report {
    let (n, d_f, d_g) = (pair.n(), pair.d_f(), pair.d_g());
    let nf = n as f64;
    let eta = pair.eta.value();
    let w = pair.w;
    let branch_power = k / 50.0 * eta.powf((w - k) / k) - 1.0;
    let branch_linear = k / (100.0 * eta) - 1.0;
    let spread = 100.0 * nf * nf.ln().powi(2) / d_g as f64;
    let lo = w.max(spread);
    let hi = eta * d_f as f64 * nf;
    let interval_empty = lo > hi;
    let mut flags = Vec::new();
    if interval_empty {
        flags.push(format!("admissible interval is empty: max(w, 100 n ln^2 n / d(G)) = {lo:.6} > eta d(F) n = {hi:.6}"));
    }
    if k < w {
        flags.push("k < w: the power branch needs k >= w".into());
    }
    if k < spread {
        flags.push("k < 100 n ln^2 n / d(G): the linear branch does not apply".into());
    }
    if k > hi {
        flags.push("k > eta d(F) n".into());
    }
    Thm28Report { k, eta, w, n, d_f, d_g, branch_power, branch_linear, interval: (lo, hi), interval_empty, flags }
}

/// Unique `p ∈ (0, 1/2]` with `ln p / ln(1-p) = C`, by bisection.
pub fn pc_solve(c: f64) -> Result<f64> {
    if c.is_nan() || c < 1.0 {
        return Err(Error::InvalidParameter(format!("C must be at least 1, got {c}")));
    }
    if c == 1.0 {
        return Ok(0.5);
    }
    // ratio(p) = ln p / ln(1-p) decreases from +inf to 1 on (0, 1/2]
    let ratio = |p: f64| p.ln() / (-p).ln_1p();
    let (mut lo, mut hi) = (f64::MIN_POSITIVE, 0.5);
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if ratio(mid) > c {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (rl, rh) = ((ratio(lo) - c).abs(), (ratio(hi) - c).abs());
    Ok(if rl < rh { lo } else { hi })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LllSolution {
    pub s: u64,
    pub a: u64,
    pub delta: f64,
    pub p: f64,
    /// log2 of `min(bound_1, bound_2)`.
    pub log2_n_bound: f64,
    /// `log2((s/e) (1/p)^{(s+1)/2})`.
    pub log2_bound_1: f64,
    /// `log2((s/e) (1/(1-p))^{(k+1)/2})` with `k = s + a`.
    pub log2_bound_2: f64,
    /// `|((1+δ)/(1-δ))^{s+1} (1+δ)^a - 2^a|`.
    pub residual: f64,
    pub caveats: Vec<String>,
}

/// Solves `((1+δ)/(1-δ))^{s+1} (1+δ)^a = 2^a` for `δ ∈ [0, 1)` and
/// evaluates the two resulting vertex-count bounds at `p = (1-δ)/2`.
pub fn spencer_lll(s: u64, a: u64) -> Result<LllSolution> {
    if s < 3 {
        return Err(Error::InvalidParameter(format!("need s >= 3, got {s}")));
    }
    let (sf, af) = (s as f64, a as f64);
    // log of the left side minus log of the right side; increasing in δ
    let g = |d: f64| (sf + 1.0) * (d.ln_1p() - (-d).ln_1p()) + af * d.ln_1p() - af * LN_2;
    let delta = if a == 0 {
        0.0
    } else {
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        assert!(g(lo) < 0.0, "left side starts below the right side");
        while hi - lo > 0.0 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if g(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if g(lo).abs() < g(hi).abs() {
            lo
        } else {
            hi
        }
    };
    let p = (1.0 - delta) / 2.0;
    let k = sf + af;
    let base = (sf / E).log2();
    let log2_bound_1 = base + (sf + 1.0) / 2.0 * -p.log2();
    let log2_bound_2 = base + (k + 1.0) / 2.0 * -(1.0 - p).log2();
    let residual = (g(delta).exp() - 1.0).abs() * 2f64.powf(af);
    Ok(LllSolution {
        s,
        a,
        delta,
        p,
        log2_n_bound: log2_bound_1.min(log2_bound_2),
        log2_bound_1,
        log2_bound_2,
        residual,
        caveats: vec!["(1 + o(1)) factors dropped from both bounds".into()],
    })
}
