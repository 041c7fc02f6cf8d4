//! Scans sublevel-set volumes of a polynomial over a δ grid and an r grid,
//! fits the scaling exponents, and compares them with the admissible-index
//! volume bounds.
//!
//!     cargo run --release --example volume_scan -- "x1^5 + x1*x2^3 + x2^2" 2

use polyvol::admissibility::admissible_indices;
use polyvol::bounds::admissible_volume_bound;
use polyvol::montecarlo::{bound_tightness, fit_scaling_at, log_grid, volume_scan, Axis, ScanConfig};
use polyvol::parse_polynomial;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let text = args.next().unwrap_or_else(|| "x1^5 + x1*x2^3 + x2^2".into());
    let dim: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2);
    let p = parse_polynomial(&text, dim)?;

    let config = ScanConfig {
        delta_grid: log_grid(1e-4, 1e-1, 7),
        r_grid: vec![1.0, 2.0, 4.0, 8.0, 16.0],
        samples_per_cell: 1_000_000,
        seed: 42,
    };
    let scan = volume_scan(&p, &config)?;
    print!("{}", scan.to_columns());

    let by_delta = fit_scaling_at(&scan, Axis::Delta, 2.0)?;
    println!(
        "delta-exponent at r=2: {:.4} [{:.4}, {:.4}]",
        by_delta.fit.exponent, by_delta.fit.confidence_95.0, by_delta.fit.confidence_95.1
    );
    match fit_scaling_at(&scan, Axis::R, 1e-3) {
        Ok(f) => println!(
            "r-exponent at delta=1e-3: {:.4} [{:.4}, {:.4}]",
            f.fit.exponent, f.fit.confidence_95.0, f.fit.confidence_95.1
        ),
        Err(e) => println!("r-exponent at delta=1e-3: {e}"),
    }
    for cert in admissible_indices(&p)? {
        let t = bound_tightness(&admissible_volume_bound(&p, &cert)?, &scan)?;
        println!(
            "alpha {}: {} C={:.3}  {}",
            cert.alpha, t.status, t.fitted_constant, t.comparison
        );
    }
    Ok(())
}
