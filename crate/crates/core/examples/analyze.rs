//! Symbolic analysis of a polynomial: admissible monomials with their
//! witnessing orders, the admissible degree, the Jacobian chain and every
//! predicted exponent. Prints the report as JSON.
//!
//!     cargo run --example analyze -- "x1^5 + x1*x2^3 + x2^2" 2

use polyvol::parse_polynomial;
use polyvol::report::analyze;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let text = args.next().unwrap_or_else(|| "x1^5 + x1*x2^3 + x2^2".into());
    let dim: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2);
    let p = parse_polynomial(&text, dim)?;

    let report = analyze(&p)?;
    for c in &report.chains {
        println!("P_{} = {}  (degree {:?})", c.l + 1, c.last, c.last_degree);
    }
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
