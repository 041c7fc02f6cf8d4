//! `∫_{(−r,r)^n} |P|^{−μ}` by layer-cake over sublevel volumes, with
//! finite/divergent verdicts compared against the integrability-index bounds.
//!
//!     cargo run --release --example singular_integral -- "x1^5 + x1*x2^3 + x2^2" 2

use polyvol::integral::{integrability_scan, LevelConfig};
use polyvol::parse_polynomial;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let text = args.next().unwrap_or_else(|| "x1^5 + x1*x2^3 + x2^2".into());
    let dim: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2);
    let p = parse_polynomial(&text, dim)?;

    let start = std::time::Instant::now();
    let mu_grid = [0.2, 0.4, 0.6, 0.8, 1.0];
    let r_grid = [0.25, 1.0, 2.0, 4.0, 8.0];
    let scan = integrability_scan(
        &p,
        &mu_grid,
        &r_grid,
        &LevelConfig {
            seed: 42,
            ..LevelConfig::default()
        },
    )?;
    for v in &scan.per_mu {
        let first = &v.results[0];
        println!(
            "mu {:.2}: {} at r={} ({})",
            v.mu,
            if v.divergent { "divergent" } else { "finite" },
            v.verdict_r,
            first.verdict_basis
        );
        if let Some(g) = &v.r_growth {
            println!(
                "  r-growth {:.3} CI ({:.3}, {:.3}), predicted {:?}",
                g.exponent, g.confidence_95.0, g.confidence_95.1, v.predicted_growth
            );
        }
    }
    println!(
        "empirical bracket [{:?}, {:?}] vs theory [{:.4}, {:?}]; {} ({:.1?})",
        scan.largest_finite,
        scan.smallest_divergent,
        scan.theoretical_lower,
        scan.theoretical_upper,
        scan.status,
        start.elapsed()
    );
    for c in &scan.contradictions {
        println!("contradiction: {c}");
    }
    Ok(())
}
