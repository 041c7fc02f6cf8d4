//! Closed-form minimum of a_1/x_1 + a_2 x_1/x_2 + ... + x_n^{1/l} against a
//! crude coordinate search.
//!
//!     cargo run --example amgm -- 2 1.5 0.7 3

use polyvol::bounds::amgm::{amgm_minimize, amgm_objective};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<f64> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    let (l, a) = match args.split_first() {
        Some((l, a)) if a.len() >= 2 => (*l as u32, a.to_vec()),
        _ => (1, vec![1.0, 1.0]),
    };
    let res = amgm_minimize(&a, l)?;
    println!("a = {a:?}, l = {l}");
    println!("closed form {:.12} at {:?}", res.min_value, res.argmin);
    println!("objective at argmin {:.12}", amgm_objective(&a, l, &res.argmin));

    // multiplicative coordinate search from x = 1
    let mut x = vec![1.0; a.len()];
    let mut step = 0.5f64;
    while step > 1e-12 {
        let mut improved = false;
        for i in 0..x.len() {
            for f in [1.0 + step, 1.0 / (1.0 + step)] {
                let mut y = x.clone();
                y[i] *= f;
                if amgm_objective(&a, l, &y) < amgm_objective(&a, l, &x) {
                    x = y;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    println!("search      {:.12} at {:?}", amgm_objective(&a, l, &x), x);
    Ok(())
}
