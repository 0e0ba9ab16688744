//! Orientation, sampling and pruning into a certified Ramsey witness.
use ramsey_core::pipeline::run_witness_pipeline;
use ramsey_core::{build_pair_digraph, build_polarity_graph, SearchBudget};

fn main() -> ramsey_core::Result<()> {
    let g = build_polarity_graph(2, 3)?;
    let d = build_pair_digraph(&g.complement(), &g)?;
    let w = run_witness_pipeline(&d, 4, None, 1.0, 0, 1, SearchBudget::seconds(60.0))?;
    println!("n={} k={} certified={}", w.n, w.k, w.fully_certified);
    println!("clique search: {:?}", w.clique_report.verdict);
    println!("alpha={}", w.independence_report.alpha);
    if let Some(b) = &w.implied_bound {
        println!("r({}, {}) >= {} (upper bound {}, consistent={})", b.s, b.k, b.lower, b.erdos_szekeres_upper, b.consistent);
    }
    Ok(())
}
