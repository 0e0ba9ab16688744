//! Forward-independent tuple counts against the bad-tuple oracle and the
//! rank formula.
use ramsey_core::counting::{
    bad_tuple_count, bad_tuples_by_rank_sequence, fwi_count, rank_formula_bound, rank_summand_diagnostics, FwiMode,
};
use ramsey_core::{build_f2_digraph, SearchBudget};

fn main() -> ramsey_core::Result<()> {
    let s = 4;
    let d = build_f2_digraph(s)?;
    for k in 1..=4 {
        let fwi = fwi_count(&d, k, FwiMode::Dfs, SearchBudget::unlimited())?;
        let bad = bad_tuple_count(s - 1, k)?;
        let rank = rank_formula_bound(s, k)?;
        println!(
            "k={k}: fwi={} bad={} rank bound={}",
            fwi.exact.unwrap(),
            bad.exact.unwrap(),
            rank.exact.unwrap()
        );
    }
    for (seq, count) in bad_tuples_by_rank_sequence(s - 1, 2)? {
        println!("rank sequence {:?}: {count}", seq.0);
    }
    let (terms, simplified) = rank_summand_diagnostics(6, 8);
    for (t, log2) in terms {
        println!("s=6 k=8 log2 M_{t} = {log2:.3}");
    }
    println!("simplified exponent = {simplified:.3}");
    Ok(())
}
