//! |∫ e^{iλg}| γ^{1/k} across a λ sweep for three phases whose k-th
//! derivative stays above γ = λγ₀.
//!
//!     cargo run --release --example van_der_corput

use polyvol::integral::{vdc_sweep, QuadratureConfig};
use polyvol::montecarlo::log_grid;

/// Name, ascending coefficients of g, derivative order, γ₀, interval.
type Case = (&'static str, Vec<f64>, u32, f64, (f64, f64));

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = QuadratureConfig::default();
    let lambdas = log_grid(10.0, 1e4, 48);
    let cases: [Case; 3] = [
        ("t on [-1, 1]", vec![0.0, 1.0], 1, 1.0, (-1.0, 1.0)),
        ("t^2 on [-1, 1]", vec![0.0, 0.0, 1.0], 2, 2.0, (-1.0, 1.0)),
        ("t^3 - t on [2, 3]", vec![0.0, -1.0, 0.0, 1.0], 1, 11.0, (2.0, 3.0)),
    ];
    for (name, g, k, gamma0, interval) in cases {
        let s = vdc_sweep(&g, k, gamma0, interval, &lambdas, &cfg)?;
        let max = s.points.iter().map(|p| p.product).fold(0.0, f64::max);
        let slope = s.envelope.as_ref().map_or(f64::NAN, |e| e.fit.exponent);
        println!(
            "{name:<18} k={k}: max product {max:.4}, envelope slope {slope:+.4}, bounded {}",
            s.bounded
        );
    }
    Ok(())
}
