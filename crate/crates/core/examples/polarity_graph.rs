//! Builds G(t, q) for a few parameters and checks the closed-form counts
//! and the spectral certificate.
use ramsey_core::geometry::polarity_parameters;
use ramsey_core::{build_polarity_graph, certify_spectrum};

fn main() -> ramsey_core::Result<()> {
    for (t, q) in [(2, 2), (2, 3), (2, 5), (3, 2), (3, 3)] {
        let g = build_polarity_graph(t, q)?;
        let (n, d, a) = polarity_parameters(t, q);
        let cert = certify_spectrum(&g)?;
        println!(
            "G({t},{q}): n={} (expected {n}) loops={} d={} a={} (expected {d}, {a}) lambda^2={} verified={}",
            g.n(),
            g.loop_count(),
            cert.d,
            cert.a,
            cert.lambda_squared,
            cert.verified
        );
        let fc = certify_spectrum(&g.complement())?;
        println!("  complement: d={} lambda^2={} verified={}", fc.d, fc.lambda_squared, fc.verified);
    }
    Ok(())
}
