//! Closed-form bound evaluation as CSV.
use ramsey_core::bounds::{erdos_szekeres_upper, lower_bound_formula, pc_solve, BoundReport, LowerBound};

fn main() -> ramsey_core::Result<()> {
    println!("{}", BoundReport::csv_header());
    for (s, k) in [(4, 8), (6, 12), (10, 30)] {
        println!("{}", erdos_szekeres_upper(s, k)?.csv_row());
        let a = (k - s) as f64;
        for b in [
            LowerBound::General { s, k, delta: 0.5 },
            LowerBound::Kck { s, c: k as f64 / s as f64 },
            LowerBound::Close { s, a },
            LowerBound::SpencerClose { s, a },
        ] {
            println!("{}", lower_bound_formula(&b)?.csv_row());
        }
    }
    for c in [1.0, 2.0, 5.0] {
        println!("# p_C for C={c}: {:.9}", pc_solve(c)?);
    }
    Ok(())
}
