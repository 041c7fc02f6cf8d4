//! Newton distance by exact linear programming, cross-checked by bisection
//! on diagonal membership.
//!
//!     cargo run --example newton_distance -- "x1^5 + x1*x2^3 + x2^2" 2

use polyvol::newton::{newton_distance, newton_membership};
use polyvol::parse_polynomial;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let text = args.next().unwrap_or_else(|| "x1^5 + x1*x2^3 + x2^2".into());
    let dim: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2);
    let p = parse_polynomial(&text, dim)?;

    let nd = newton_distance(&p)?;
    println!("ND = {} ({:.12})", nd.exact, nd.distance);
    for (alpha, w) in &nd.certificate {
        println!("  weight {w:.6} on {alpha}");
    }

    let (mut lo, mut hi) = (0.0, p.degree().unwrap_or(1) as f64);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if newton_membership(&p, &vec![mid; dim])? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    println!("bisection: {hi:.12}, difference {:.2e}", (hi - nd.distance).abs());
    Ok(())
}
