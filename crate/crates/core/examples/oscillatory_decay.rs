//! Oscillatory integrals `∫_{(−r,r)^n} e^{iλP}` over a λ grid, with the
//! windowed-max envelope slope compared against the `λ^{−1/ad}` bound.
//!
//!     cargo run --release --example oscillatory_decay -- "x1^2" 1 1e4 96

use polyvol::integral::{decay_scan, QuadratureConfig};
use polyvol::montecarlo::log_grid;
use polyvol::parse_polynomial;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let text = args.next().unwrap_or_else(|| "x1^5 + x1*x2^3 + x2^2".into());
    let dim: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2);
    let top: f64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1e3);
    let points: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(64);
    let p = parse_polynomial(&text, dim)?;

    let start = std::time::Instant::now();
    let res = decay_scan(&p, 1.0, &log_grid(10.0, top, points), &QuadratureConfig::default())?;
    print!("{}", res.to_columns());
    if let Some(e) = &res.envelope {
        for w in &e.points {
            println!(
                "window [{:.1}, {:.1}]: max {:.4e} at {:.1}",
                w.window.0, w.window.1, w.max, w.at
            );
        }
    }
    println!(
        "envelope slope {:?} CI {:?}, predicted {:?}, unconverged {}, status {} ({:.1?})",
        res.envelope_exponent,
        res.confidence_95,
        res.predicted_exponent,
        res.unconverged,
        res.status,
        start.elapsed()
    );
    Ok(())
}
