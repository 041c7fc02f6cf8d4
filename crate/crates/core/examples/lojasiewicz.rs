//! Samples the box and checks d(x, Z(P) ∪ Z_α) ≤ μ(α)|P(x)|^{1/|α|} for
//! every admissible α of P.
//!
//!     cargo run --release --example lojasiewicz -- "x1^5 + x1*x2^3 + x2^2" 2

use polyvol::admissibility::admissible_indices;
use polyvol::lojacheck::{build_chain, lojasiewicz_check, LojaConfig};
use polyvol::parse_polynomial;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let text = args.next().unwrap_or_else(|| "x1^5 + x1*x2^3 + x2^2".into());
    let dim: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2);
    let p = parse_polynomial(&text, dim)?;

    for cert in admissible_indices(&p)? {
        let chain = build_chain(&p, &cert)?;
        println!("alpha = {}  order = {}", cert.alpha, cert.witness);
        for level in &chain.levels {
            println!(
                "  Z_{} in R^{}: {} = 0{}",
                level.level,
                level.ambient_dimension,
                level.defining,
                if level.active { "" } else { "  (skipped)" }
            );
        }
        let report = lojasiewicz_check(&p, &cert, &LojaConfig::new(10_000, 2.0, 42))?;
        println!(
            "  confirmed {}/{} ({:.4}), max ratio {:.4} vs mu {:.4}",
            report.confirmed,
            report.samples,
            report.confirmed_fraction(),
            report.max_confirmed_ratio,
            report.mu_alpha
        );
    }
    Ok(())
}
