//! An ell-colouring built from random relabelings of a T_s-free digraph.
use ramsey_core::pipeline::{multicolor_build, multicolor_expected};
use ramsey_core::{build_f2_digraph, SearchBudget};

fn main() -> ramsey_core::Result<()> {
    let s = 4;
    let d = build_f2_digraph(s as u32)?;
    let (ell, n) = (3, 24);
    let mc = multicolor_build(&d, ell, n, 7)?;
    for c in 1..=ell {
        println!("colour {c}: edges={} monochromatic K_{s}={}", mc.class_graph(c).edge_count(), mc.mono_cliques(c, s));
    }
    let e = multicolor_expected(&d, ell, n, s, SearchBudget::unlimited())?;
    println!("expected monochromatic K_{s} in the last colour: {e:.6}");
    Ok(())
}
