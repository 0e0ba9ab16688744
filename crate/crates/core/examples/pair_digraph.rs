//! The pair digraph D(F, G), its parameters, and the F2 construction.
use ramsey_core::geometry::certify_spectrum;
use ramsey_core::product::{f2_stated_vertex_count, f2_vertex_count};
use ramsey_core::{build_f2_digraph, build_pair_digraph, build_polarity_graph, pair_params};

fn main() -> ramsey_core::Result<()> {
    let g = build_polarity_graph(2, 3)?;
    let f = g.complement();
    let d = build_pair_digraph(&f, &g)?;
    let sys = pair_params(&f, &g, &certify_spectrum(&f)?, &certify_spectrum(&g)?)?;
    println!("D(F,G): vertices={} arcs={}", d.len(), d.arc_count());
    println!("eta={} (exact {:?}) w={:.4}", sys.eta.value(), sys.eta.as_rational(), sys.w);

    for s in 4..=6 {
        let d2 = build_f2_digraph(s)?;
        println!(
            "F2 s={s}: vertices={} (stated formula {}, closed form {}) arcs={}",
            d2.len(),
            f2_stated_vertex_count(s),
            f2_vertex_count(s),
            d2.arc_count()
        );
    }
    Ok(())
}
