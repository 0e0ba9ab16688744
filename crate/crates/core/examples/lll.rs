//! Solves the local-lemma balance equation for a few (s, a).
use ramsey_core::bounds::spencer_lll;

fn main() -> ramsey_core::Result<()> {
    for (s, a) in [(10, 0), (10, 5), (20, 10), (50, 25)] {
        let sol = spencer_lll(s, a)?;
        println!(
            "s={s} a={a}: delta={:.6} p={:.6} log2 n <= {:.3} residual={:.2e}",
            sol.delta, sol.p, sol.log2_n_bound, sol.residual
        );
    }
    Ok(())
}
