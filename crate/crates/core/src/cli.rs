//! The `ramsey` command line.
//!
//! Exit codes: 0 success, 1 error (including usage errors), 2 a re-validated
//! witness contradicts an expected freeness property, 3 inconclusive
//! because a search budget ran out.
//!
//! With `--out PATH` the artifact goes to `PATH` and the certificate to
//! `PATH.cert.json`; a one-line summary is printed on stdout. Without
//! `--out` the certificate JSON is printed on stdout.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bounds::{erdos_szekeres_upper, lower_bound_formula, pc_solve, spencer_lll, thm28_eval, BoundReport, LowerBound};
use crate::certificate::{sig12, Certificate};
use crate::counting::{bad_tuple_count, fwi_count, rank_formula_bound, spectral_fwi_bound, CountResult, FwiMode};
use crate::error::{Error, Result};
use crate::freeness::{count_cliques, find_clique, find_hs_witness, find_ts_witness, validate_hs_witness, validate_ts_witness, SearchBudget, SearchReport, Verdict};
use crate::geometry::{build_polarity_graph, certify_spectrum, polarity_parameters};
use crate::graph::LoopyGraph;
use crate::io::{read_dimacs, write_arc_list, write_dimacs, write_edge_list, write_points, write_vertex_map};
use crate::pipeline::{multicolor_build, multicolor_expected, orient, run_witness_pipeline};
use crate::product::{build_f2_digraph, build_pair_digraph, f2_stated_vertex_count, f2_vertex_count, pair_params, PairDigraph, PairSystem};

#[derive(Parser, Debug)]
#[command(name = "ramsey", version, about = "Polarity-graph constructions and certified Ramsey witnesses")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Artifact path; the certificate goes to PATH.cert.json.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Wall-clock budget per search, in seconds.
    #[arg(long, default_value_t = 300.0)]
    pub budget_seconds: f64,
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Omit timings so equal inputs give byte-identical certificates.
    #[arg(long)]
    pub deterministic: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dimacs,
    Edges,
    Json,
    Csv,
}

/// Chooses the pair digraph: G(t, q) with its complement, or the F_2
/// digraph for `s` with `--f2`.
#[derive(Args, Debug, Clone)]
pub struct DigraphSource {
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long)]
    pub q: Option<u64>,
    /// Use the F_2 digraph for the given --s instead of a (t, q) pair.
    #[arg(long, conflicts_with_all = ["t", "q"])]
    pub f2: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build G(t, q) (or its complement) and export it.
    Polarity {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        complement: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Check A² = aJ + (d - a)I for G(t, q) or a DIMACS graph.
    CertifySpectrum {
        #[arg(long, requires = "q", conflicts_with = "graph")]
        t: Option<u32>,
        #[arg(long, requires = "t")]
        q: Option<u64>,
        #[arg(long)]
        complement: bool,
        /// DIMACS file to certify instead of G(t, q).
        #[arg(long)]
        graph: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Search for an H_s tuple in (complement(G(t, q)), G(t, q)).
    CheckHs {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        q: u64,
        /// Defaults to t + 2.
        #[arg(long)]
        s: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Build a pair digraph and export its arcs and vertex map.
    Product {
        #[command(flatten)]
        source: DigraphSource,
        #[arg(long)]
        s: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Search for a transitive tournament T_s in a pair digraph.
    CheckTs {
        #[command(flatten)]
        source: DigraphSource,
        /// Defaults to t + 2 for a (t, q) pair.
        #[arg(long)]
        s: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Exact counts and count bounds.
    Count {
        #[arg(long, value_enum)]
        mode: CountMode,
        #[command(flatten)]
        source: DigraphSource,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        k: usize,
        /// Dimension of F_2^p for bad-tuple counting.
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        brute_force: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Orient a pair digraph by a random permutation and certify K_s-freeness.
    Orient {
        #[command(flatten)]
        source: DigraphSource,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Orient, sample, prune and certify a Ramsey witness.
    Witness {
        #[command(flatten)]
        source: DigraphSource,
        #[arg(long)]
        s: Option<u32>,
        /// Defaults to α(Γ) + 1 for the oriented graph Γ.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        attempts: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Colour K_n with ell colours through random maps into a pair digraph.
    Multicolor {
        #[command(flatten)]
        source: DigraphSource,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate closed-form bounds as CSV rows.
    Bound {
        /// Bound names; all applicable ones when omitted.
        #[arg(long, value_enum)]
        name: Vec<BoundName>,
        #[arg(long)]
        s: Option<u64>,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        a: Option<f64>,
        #[arg(long = "C")]
        c: Option<f64>,
        #[arg(long)]
        ell: Option<u64>,
        #[arg(long)]
        delta: Option<f64>,
        /// Constant for thm-main; flagged as a placeholder when omitted.
        #[arg(long)]
        c_s: Option<f64>,
        #[arg(long)]
        t: Option<u32>,
        #[arg(long)]
        q: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Solve the local-lemma balance equation for δ.
    Lll {
        #[arg(long)]
        s: u64,
        #[arg(long)]
        a: u64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CountMode {
    Fwi,
    BadTuples,
    RankBound,
    SpectralBound,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundName {
    ErdosSzekeres,
    ThmMain,
    ThmGeneral,
    ThmKck,
    ThmClose,
    ThmMulticolor,
    SpencerClose,
    Thm28,
    Pc,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    Falsified,
    Inconclusive,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Ok => 0,
            Outcome::Falsified => 2,
            Outcome::Inconclusive => 3,
        }
    }

    fn of(report: &SearchReport) -> Self {
        match report.verdict {
            Verdict::Free => Outcome::Ok,
            Verdict::WitnessFound => Outcome::Falsified,
            Verdict::Inconclusive => Outcome::Inconclusive,
        }
    }
}

/// Parses `args` (including the program name) and runs; returns the exit
/// code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let echo = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(cli, echo) {
        Ok(outcome) => outcome.code(),
        Err(Error::BudgetExhausted { nodes }) => {
            eprintln!("inconclusive: search budget exhausted after {nodes} nodes");
            3
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

struct Ctx {
    cert: Certificate,
    common: Common,
    start: Instant,
}

impl Ctx {
    fn new(echo: Vec<String>, seed: Option<u64>, common: &Common) -> Result<Self> {
        if let Some(threads) = common.threads {
            // only the first call can configure the global pool
            let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
        }
        if common.budget_seconds.is_nan() || common.budget_seconds <= 0.0 {
            return Err(Error::InvalidParameter("--budget-seconds must be positive".into()));
        }
        Ok(Ctx { cert: Certificate::new(echo, seed), common: common.clone(), start: Instant::now() })
    }

    fn budget(&self) -> SearchBudget {
        SearchBudget::seconds(self.common.budget_seconds)
    }

    fn artifact(&self, suffix: &str) -> Option<PathBuf> {
        self.common.out.as_ref().map(|p| {
            let mut s = p.clone().into_os_string();
            s.push(suffix);
            PathBuf::from(s)
        })
    }

    fn finish(mut self, summary: &str, outcome: Outcome) -> Result<Outcome> {
        self.cert.timing("total_ms", self.start.elapsed().as_secs_f64() * 1e3);
        if self.common.deterministic {
            self.cert.make_deterministic();
        }
        match self.artifact(".cert.json") {
            Some(path) => {
                self.cert.write(&path)?;
                emit(summary);
            }
            None => {
                emit(&self.cert.to_json()?);
                eprintln!("{summary}");
            }
        }
        Ok(outcome)
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn write_graph(ctx: &Ctx, g: &LoopyGraph) -> Result<()> {
    let Some(path) = ctx.common.out.as_ref() else { return Ok(()) };
    let mut w = create(path)?;
    match ctx.common.format.unwrap_or(Format::Dimacs) {
        Format::Dimacs => write_dimacs(g, &mut w)?,
        Format::Edges => write_edge_list(g, &mut w)?,
        Format::Json => {
            let edges: Vec<(usize, usize)> = g.edges().collect();
            serde_json::to_writer(&mut w, &json!({"n": g.n(), "edges": edges}))?;
        }
        Format::Csv => return Err(Error::InvalidParameter("csv is only available for bound".into())),
    }
    w.flush()?;
    Ok(())
}

fn polarity_pair(t: u32, q: u64) -> Result<(LoopyGraph, LoopyGraph)> {
    let g = build_polarity_graph(t, q)?;
    Ok((g.complement(), g))
}

struct BuiltDigraph {
    d: PairDigraph,
    s: u32,
    pair: Option<(LoopyGraph, LoopyGraph)>,
}

fn build_source(ctx: &mut Ctx, source: &DigraphSource, s: Option<u32>) -> Result<BuiltDigraph> {
    if source.f2 {
        let s = s.ok_or_else(|| Error::InvalidParameter("--f2 needs --s".into()))?;
        let d = build_f2_digraph(s)?;
        ctx.cert.input("digraph", json!({"kind": "f2", "s": s}))?;
        ctx.cert.result("f2_vertex_count", "oracle", f2_vertex_count(s))?;
        ctx.cert.result("f2_stated_vertex_count", "formula", f2_stated_vertex_count(s))?;
        ctx.cert.discrepancy(format!(
            "vertex count of the F_2 digraph for s={s}: enumeration gives {} ordered pairs with <x,y>=1, the closed form 2^(2s-3)-2^(s-1)-2^(s-2)+1 gives {} (the number of ordered adjacent pairs n*d)",
            f2_vertex_count(s),
            f2_stated_vertex_count(s)
        ));
        return Ok(BuiltDigraph { d, s, pair: None });
    }
    let (t, q) = match (source.t, source.q) {
        (Some(t), Some(q)) => (t, q),
        _ => return Err(Error::InvalidParameter("give --t and --q, or --f2 with --s".into())),
    };
    let (f, g) = polarity_pair(t, q)?;
    let d = build_pair_digraph(&f, &g)?;
    ctx.cert.input("digraph", json!({"kind": "polarity-pair", "t": t, "q": q}))?;
    Ok(BuiltDigraph { d, s: s.unwrap_or(t + 2), pair: Some((f, g)) })
}

fn certified_pair(f: &LoopyGraph, g: &LoopyGraph) -> Result<PairSystem> {
    pair_params(f, g, &certify_spectrum(f)?, &certify_spectrum(g)?)
}

fn rounded(mut c: CountResult) -> CountResult {
    c.log2 = sig12(c.log2);
    c
}

fn rounded_bound(mut b: BoundReport) -> BoundReport {
    b.log2_value = sig12(b.log2_value);
    b
}

pub fn execute(cli: Cli, echo: Vec<String>) -> Result<Outcome> {
    match cli.command {
        Command::Polarity { t, q, complement, common } => {
            let mut ctx = Ctx::new(echo, None, &common)?;
            let g0 = build_polarity_graph(t, q)?;
            let g = if complement { g0.complement() } else { g0 };
            let (n, d, a) = polarity_parameters(t, q);
            ctx.cert.input("t", t)?;
            ctx.cert.input("q", q)?;
            ctx.cert.input("complement", complement)?;
            ctx.cert.result("n", "oracle", g.n())?;
            ctx.cert.result("d", "oracle", g.degree(0))?;
            ctx.cert.result("loops", "oracle", g.loop_count())?;
            ctx.cert.result("edges", "oracle", g.edge_count())?;
            ctx.cert.result("formula_n_d_a", "formula", (n, d, a))?;
            ctx.cert.result("field", "oracle", g.origin().map(|o| o.field.clone()))?;
            write_graph(&ctx, &g)?;
            if let Some(path) = ctx.artifact(".points") {
                let mut w = create(&path)?;
                write_points(&g, &mut w)?;
                w.flush()?;
            }
            let summary = format!("G({t},{q}){}: n={} d={} loops={}", if complement { " complement" } else { "" }, g.n(), g.degree(0), g.loop_count());
            ctx.finish(&summary, Outcome::Ok)
        }
        Command::CertifySpectrum { t, q, complement, graph, common } => {
            let mut ctx = Ctx::new(echo, None, &common)?;
            let g = match (graph, t, q) {
                (Some(path), _, _) => {
                    ctx.cert.input("graph", path.display().to_string())?;
                    read_dimacs(std::io::BufReader::new(File::open(&path)?))?
                }
                (None, Some(t), Some(q)) => {
                    ctx.cert.input("t", t)?;
                    ctx.cert.input("q", q)?;
                    build_polarity_graph(t, q)?
                }
                _ => return Err(Error::InvalidParameter("give --t and --q, or --graph".into())),
            };
            let g = if complement { g.complement() } else { g };
            ctx.cert.input("complement", complement)?;
            let cert = certify_spectrum(&g)?;
            ctx.cert.result("spectrum", "oracle", &cert)?;
            let summary = format!("n={} d={} a={} lambda^2={} verified={}", cert.n, cert.d, cert.a, cert.lambda_squared, cert.verified);
            let verified = cert.verified;
            let code = ctx.finish(&summary, Outcome::Ok)?;
            if !verified {
                return Err(Error::InvalidParameter(format!("A^2 = aJ + (d-a)I fails at pair {:?}", cert.offending_pair)));
            }
            Ok(code)
        }
        Command::CheckHs { t, q, s, common } => {
            let mut ctx = Ctx::new(echo, None, &common)?;
            let s = s.unwrap_or(t as usize + 2);
            let (f, g) = polarity_pair(t, q)?;
            ctx.cert.input("t", t)?;
            ctx.cert.input("q", q)?;
            ctx.cert.input("s", s)?;
            let report = find_hs_witness(&f, &g, s, ctx.budget())?;
            if let Some(w) = &report.witness {
                assert!(validate_hs_witness(&f, &g, w));
            }
            ctx.cert.result("hs_search", "search", &report)?;
            let summary = verdict_line(&format!("H_{s}"), &report);
            let outcome = Outcome::of(&report);
            ctx.finish(&summary, outcome)
        }
        Command::Product { source, s, common } => {
            let mut ctx = Ctx::new(echo, None, &common)?;
            let built = build_source(&mut ctx, &source, s)?;
            let d = &built.d;
            ctx.cert.result("vertices", "oracle", d.len())?;
            ctx.cert.result("arcs", "oracle", d.arc_count())?;
            ctx.cert.result("loops", "oracle", d.loops().len())?;
            if let Some((f, g)) = &built.pair {
                ctx.cert.result("d_f_times_n", "formula", f.degree(0) * g.n())?;
            }
            if let Some(path) = ctx.common.out.clone() {
                let mut w = create(&path)?;
                write_arc_list(d, &mut w)?;
                w.flush()?;
                let mut w = create(&ctx.artifact(".vertices").expect("out is set"))?;
                write_vertex_map(d, &mut w)?;
                w.flush()?;
            }
            let summary = format!("digraph: {} vertices, {} arcs, {} loops", d.len(), d.arc_count(), d.loops().len());
            ctx.finish(&summary, Outcome::Ok)
        }
        Command::CheckTs { source, s, common } => {
            let mut ctx = Ctx::new(echo, None, &common)?;
            let built = build_source(&mut ctx, &source, s)?;
            let s = built.s as usize;
            ctx.cert.input("s", s)?;
            let report = find_ts_witness(&built.d, s, ctx.budget())?;
            if let Some(w) = &report.witness {
                assert!(validate_ts_witness(&built.d, w));
            }
            ctx.cert.result("vertices", "oracle", built.d.len())?;
            ctx.cert.result("ts_search", "search", &report)?;
            let summary = verdict_line(&format!("T_{s}"), &report);
            let outcome = Outcome::of(&report);
            ctx.finish(&summary, outcome)
        }
        Command::Count { mode, source, s, k, p, brute_force, common } => {
            let mut ctx = Ctx::new(echo, None, &common)?;
            ctx.cert.input("mode", mode.to_possible_value().map(|v| v.get_name().to_owned()))?;
            ctx.cert.input("k", k)?;
            let count = match mode {
                CountMode::Fwi => {
                    let built = build_source(&mut ctx, &source, s)?;
                    let fwi_mode = if brute_force { FwiMode::BruteForce } else { FwiMode::Dfs };
                    fwi_count(&built.d, k, fwi_mode, ctx.budget())?
                }
                CountMode::BadTuples => {
                    let p = p.ok_or_else(|| Error::InvalidParameter("bad-tuples needs --p".into()))?;
                    ctx.cert.input("p", p)?;
                    bad_tuple_count(p, k)?
                }
                CountMode::RankBound => {
                    let s = s.ok_or_else(|| Error::InvalidParameter("rank-bound needs --s".into()))?;
                    ctx.cert.input("s", s)?;
                    rank_formula_bound(s, k)?
                }
                CountMode::SpectralBound => {
                    let (t, q) = source.t.zip(source.q).ok_or_else(|| Error::InvalidParameter("spectral-bound needs --t and --q".into()))?;
                    let (f, g) = polarity_pair(t, q)?;
                    ctx.cert.input("t", t)?;
                    ctx.cert.input("q", q)?;
                    spectral_fwi_bound(&certified_pair(&f, &g)?, k as u64)?
                }
            };
            let method = match count.method {
                crate::counting::Method::Oracle => "oracle",
                crate::counting::Method::Formula => "formula",
            };
            let summary = match &count.exact {
                Some(v) => v.to_string(),
                None => format!("log2 <= {:.12}", count.log2),
            };
            ctx.cert.result("count", method, rounded(count))?;
            ctx.finish(&summary, Outcome::Ok)
        }
        Command::Orient { source, s, seed, common } => {
            let mut ctx = Ctx::new(echo, Some(seed), &common)?;
            let built = build_source(&mut ctx, &source, s)?;
            let s = built.s as usize;
            let o = orient(&built.d, seed)?;
            let report = find_clique(&o.graph, s, ctx.budget())?;
            ctx.cert.input("s", s)?;
            ctx.cert.result("vertices", "oracle", o.graph.n())?;
            ctx.cert.result("edges", "oracle", o.graph.edge_count())?;
            ctx.cert.result("pi", "oracle", &o.pi)?;
            ctx.cert.result("clique_search", "search", &report)?;
            write_graph(&ctx, &o.graph)?;
            let summary = verdict_line(&format!("K_{s}"), &report);
            let outcome = Outcome::of(&report);
            ctx.finish(&summary, outcome)
        }
        Command::Witness { source, s, k, p, seed, attempts, common } => {
            let mut ctx = Ctx::new(echo, Some(seed), &common)?;
            let built = build_source(&mut ctx, &source, s)?;
            let s = built.s as usize;
            ctx.cert.input("s", s)?;
            ctx.cert.input("k", k)?;
            ctx.cert.input("p", p)?;
            ctx.cert.input("attempts", attempts)?;
            let w = run_witness_pipeline(&built.d, s, k, p, seed, attempts, ctx.budget())?;
            ctx.cert.result("witness", "search", &w)?;
            write_graph(&ctx, &w.graph)?;
            let outcome = if w.clique_report.found() {
                Outcome::Falsified
            } else if w.fully_certified {
                Outcome::Ok
            } else {
                Outcome::Inconclusive
            };
            let summary = match &w.implied_bound {
                Some(b) => format!("certified: r({}, {}) >= {} (Erdos-Szekeres upper bound {})", b.s, b.k, b.lower, b.erdos_szekeres_upper),
                None => format!("not certified: clique search {:?}, alpha = {}", w.clique_report.verdict, w.independence_report.alpha),
            };
            ctx.finish(&summary, outcome)
        }
        Command::Multicolor { source, s, ell, n, seed, common } => {
            let mut ctx = Ctx::new(echo, Some(seed), &common)?;
            let built = build_source(&mut ctx, &source, s)?;
            let s = built.s as usize;
            ctx.cert.input("s", s)?;
            ctx.cert.input("ell", ell)?;
            ctx.cert.input("n", n)?;
            let mc = multicolor_build(&built.d, ell, n, seed)?;
            let mut counts = Vec::with_capacity(ell);
            let mut outcome = Outcome::Ok;
            for c in 1..=ell {
                let g = mc.class_graph(c);
                if c < ell {
                    let report = find_clique(&g, s, ctx.budget())?;
                    if report.found() {
                        outcome = Outcome::Falsified;
                    } else if !report.is_free() && outcome == Outcome::Ok {
                        outcome = Outcome::Inconclusive;
                    }
                }
                counts.push(count_cliques(&g, s));
            }
            let expected = multicolor_expected(&built.d, ell, n, s, ctx.budget())?;
            ctx.cert.result("mono_clique_counts", "search", &counts)?;
            ctx.cert.result("expected_last_color", "formula", sig12(expected))?;
            ctx.cert.result("maps", "oracle", &mc.maps)?;
            if let Some(path) = ctx.common.out.clone() {
                let mut w = create(&path)?;
                for i in 0..n {
                    for j in i + 1..n {
                        writeln!(w, "{i} {j} {}", mc.color(i, j))?;
                    }
                }
                w.flush()?;
            }
            let summary = format!("monochromatic K_{s} per colour: {counts:?}, expected in colour {ell}: {expected:.6}");
            ctx.finish(&summary, outcome)
        }
        Command::Bound { name, s, k, a, c, ell, delta, c_s, t, q, common } => {
            let mut ctx = Ctx::new(echo, None, &common)?;
            let explicit = !name.is_empty();
            let names = if explicit { name } else { BoundName::value_variants().to_vec() };
            let mut rows = Vec::new();
            let mut evaluations = Vec::new();
            for which in names {
                let row = match which {
                    BoundName::ErdosSzekeres => s.zip(k).map(|(s, k)| erdos_szekeres_upper(s, k)).transpose()?,
                    BoundName::ThmMain => s.zip(k).map(|(s, k)| lower_bound_formula(&LowerBound::Main { s, k, c_s })).transpose()?,
                    BoundName::ThmGeneral => match (s, k, delta) {
                        (Some(s), Some(k), Some(delta)) => Some(lower_bound_formula(&LowerBound::General { s, k, delta })?),
                        _ => None,
                    },
                    BoundName::ThmKck => s.zip(c).map(|(s, c)| lower_bound_formula(&LowerBound::Kck { s, c })).transpose()?,
                    BoundName::ThmClose => s.zip(a).map(|(s, a)| lower_bound_formula(&LowerBound::Close { s, a })).transpose()?,
                    BoundName::ThmMulticolor => s.zip(ell).map(|(s, ell)| lower_bound_formula(&LowerBound::Multicolor { s, ell })).transpose()?,
                    BoundName::SpencerClose => s.zip(a).map(|(s, a)| lower_bound_formula(&LowerBound::SpencerClose { s, a })).transpose()?,
                    BoundName::Thm28 | BoundName::Pc => None,
                };
                let evaluation = match which {
                    BoundName::Thm28 => match (t, q, k) {
                        (Some(t), Some(q), Some(k)) => {
                            let (f, g) = polarity_pair(t, q)?;
                            Some(serde_json::to_value(thm28_eval(&certified_pair(&f, &g)?, k as f64))?)
                        }
                        _ => None,
                    },
                    BoundName::Pc => c.map(|c| pc_solve(c).map(|p| json!({"name": "pc", "C": c, "p": p}))).transpose()?,
                    _ => None,
                };
                match (row, evaluation) {
                    (Some(r), _) => rows.push(rounded_bound(r)),
                    (None, Some(e)) => evaluations.push(e),
                    (None, None) if explicit => {
                        return Err(Error::InvalidParameter(format!("{}: missing parameters (see --help)", which.to_possible_value().expect("named").get_name())));
                    }
                    (None, None) => {}
                }
            }
            ctx.cert.input("s", s)?;
            ctx.cert.input("k", k)?;
            ctx.cert.result("bounds", "formula", &rows)?;
            ctx.cert.result("evaluations", "formula", &evaluations)?;
            let mut csv = String::from(BoundReport::csv_header());
            for r in &rows {
                csv.push('\n');
                csv.push_str(&r.csv_row());
            }
            let summary = format!("{} bound rows, {} further evaluations", rows.len(), evaluations.len());
            match ctx.common.out.clone() {
                Some(path) => {
                    match ctx.common.format.unwrap_or(Format::Csv) {
                        Format::Csv => std::fs::write(&path, csv + "\n")?,
                        Format::Json => std::fs::write(&path, serde_json::to_string_pretty(&rows)?)?,
                        f => return Err(Error::InvalidParameter(format!("bound output supports csv or json, not {f:?}"))),
                    }
                    ctx.finish(&summary, Outcome::Ok)
                }
                None => {
                    emit(&csv);
                    for e in &evaluations {
                        eprintln!("{e}");
                    }
                    Ok(Outcome::Ok)
                }
            }
        }
        Command::Lll { s, a, common } => {
            let mut ctx = Ctx::new(echo, None, &common)?;
            let sol = spencer_lll(s, a)?;
            ctx.cert.input("s", s)?;
            ctx.cert.input("a", a)?;
            let summary = format!("delta = {:.12e}, p = {:.12}, log2 n-bound = {:.12}", sol.delta, sol.p, sol.log2_n_bound);
            ctx.cert.result("lll", "formula", &sol)?;
            ctx.finish(&summary, Outcome::Ok)
        }
    }
}

fn verdict_line(property: &str, report: &SearchReport) -> String {
    match report.verdict {
        Verdict::Free => format!("{property}-free (exhaustive, {} nodes)", report.nodes),
        Verdict::WitnessFound => format!("{property} found: {:?}", report.witness.as_deref().unwrap_or_default()),
        Verdict::Inconclusive => format!("{property}: inconclusive after {} nodes", report.nodes),
    }
}
