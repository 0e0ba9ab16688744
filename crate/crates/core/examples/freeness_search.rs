//! H_s and T_s searches on the complement/polarity pair.
use ramsey_core::freeness::{find_hs_witness, find_ts_witness};
use ramsey_core::{build_pair_digraph, build_polarity_graph, SearchBudget};

fn main() -> ramsey_core::Result<()> {
    let g = build_polarity_graph(2, 3)?;
    let f = g.complement();
    for s in 2..=4 {
        let r = find_hs_witness(&f, &g, s, SearchBudget::seconds(30.0))?;
        println!("H_{s}: {:?} witness={:?} nodes={}", r.verdict, r.witness, r.nodes);
    }
    let d = build_pair_digraph(&f, &g)?;
    let r = find_ts_witness(&d, 4, SearchBudget::seconds(30.0))?;
    println!("T_4 on D(F, G) with {} vertices: {:?} nodes={}", d.len(), r.verdict, r.nodes);
    Ok(())
}
