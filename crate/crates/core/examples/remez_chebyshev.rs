//! The doubling inequality on a centered sub-cube and the Chebyshev floor
//! 2^{2d-1} max_[0,1] |q| >= 1 for monic q.
//!
//!     cargo run --release --example remez_chebyshev -- "x1^5 + x1*x2^3 + x2^2" 2

use polyvol::lojacheck::{chebyshev_floor_check, chebyshev_product, CHEBYSHEV_GRID};
use polyvol::montecarlo::remez::remez_check;
use polyvol::parse_polynomial;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let text = args.next().unwrap_or_else(|| "x1^5 + x1*x2^3 + x2^2".into());
    let dim: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2);
    let p = parse_polynomial(&text, dim)?;

    for fraction in [0.5, 0.1, 0.01] {
        let r = remez_check(&p, 2.0, fraction)?;
        println!(
            "fraction {fraction}: sup_box {:.4} <= {:.3e} * {:.4e} = {:.4e}  {}",
            r.lhs, r.factor, r.small_norm, r.rhs, r.satisfied
        );
    }
    for d in 1..=4 {
        let c = chebyshev_floor_check(d, 10_000, 7)?;
        println!(
            "degree {d}: min product {:.9} at {:?}",
            c.min_product, c.argmin_coefficients
        );
    }
    println!(
        "t^2 - t + 1/8: {:.12}",
        chebyshev_product(&[0.125, -1.0, 1.0], CHEBYSHEV_GRID)
    );
    Ok(())
}
