//! Volume scan of (x2 - x1^3)^2 + (x1 - x2^3)^2, whose zero set is three
//! points: the volume should stop depending on r once the box holds them.
//!
//!     cargo run --release --example degenerate

use polyvol::montecarlo::degenerate::{asymptotic_volume, degenerate_scenario_scan};
use polyvol::montecarlo::{log_grid, ScanConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = ScanConfig {
        delta_grid: log_grid(1e-4, 1e-2, 5),
        r_grid: vec![1.0, 3.0, 6.0, 12.0],
        samples_per_cell: 1_000_000,
        seed: 42,
    };
    let report = degenerate_scenario_scan(&config)?;
    for u in &report.r_uniformity {
        println!(
            "delta {:.1e}: estimates {:?} (asymptotic {:.3e}), max z {:.2}",
            u.delta,
            u.estimates.iter().map(|v| format!("{v:.3e}")).collect::<Vec<_>>(),
            asymptotic_volume(u.delta),
            u.max_pairwise_z
        );
    }
    if let Some(nu) = &report.nu {
        println!(
            "nu = {:.4} [{:.4}, {:.4}]",
            nu.fit.exponent, nu.fit.confidence_95.0, nu.fit.confidence_95.1
        );
    }
    Ok(())
}
