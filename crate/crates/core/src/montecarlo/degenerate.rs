//! Volume scan of `(x2 − x1³)² + (x1 − x2³)²`, whose real zero set is the
//! three points `(0,0)`, `(1,1)`, `(−1,−1)`. Its sublevel volumes should stop
//! growing with `r` once the box contains all three.

use serde::Serialize;

use super::{fit_power_law, fit_scaling_at, volume_scan, AxisFit, LabError, LogPoint, ScanConfig, ScanResult};
use crate::poly::{parse_polynomial, Polynomial};

/// Boxes with `r` at least this contain the whole zero set with margin.
pub const R_UNIFORM_FROM: f64 = 3.0;

pub fn degenerate_polynomial() -> Polynomial {
    let a = parse_polynomial("x2 - x1^3", 2).expect("valid");
    let b = parse_polynomial("x1 - x2^3", 2).expect("valid");
    &a.pow(2) + &b.pow(2)
}

/// Small-`δ` volume `πδ (1 + 2/8)`: each nondegenerate zero contributes
/// `πδ / |det J|` with `|det J| = 1` at the origin and `8` at `±(1,1)`.
pub fn asymptotic_volume(delta: f64) -> f64 {
    std::f64::consts::PI * delta * 1.25
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RUniformity {
    pub delta: f64,
    pub r_values: Vec<f64>,
    pub estimates: Vec<f64>,
    pub standard_errors: Vec<f64>,
    /// Largest `|v_i − v_j| / hypot(se_i, se_j)` over pairs, with standard
    /// errors taken under a common pooled volume.
    pub max_pairwise_z: f64,
    pub agree_within_3se: bool,
    pub r_slope: Option<f64>,
    pub r_independent: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegenerateReport {
    pub polynomial: String,
    pub scan: ScanResult,
    pub r_uniformity: Vec<RUniformity>,
    /// Fitted `δ` exponent at the smallest `r ≥ 3`.
    pub nu: Option<AxisFit>,
}

fn uniformity(scan: &ScanResult, i: usize) -> Option<RUniformity> {
    let cells: Vec<_> = scan
        .cells
        .iter()
        .filter(|c| c.delta_index == i && c.r >= R_UNIFORM_FROM)
        .collect();
    if cells.len() < 2 {
        return None;
    }
    // pairwise z under the hypothesis of one common volume v, whose
    // estimate pools hits across boxes: hits_i ~ Bin(N, v / A_i)
    let n = scan.config.samples_per_cell as f64;
    let area = |r: f64| (2.0 * r).powi(2);
    let pooled =
        cells.iter().map(|c| c.hit_count as f64).sum::<f64>() / cells.iter().map(|c| n / area(c.r)).sum::<f64>();
    let null_se = |r: f64| {
        let q = (pooled / area(r)).min(1.0);
        area(r) * (q * (1.0 - q) / n).sqrt()
    };
    let mut max_z = 0f64;
    for (a, ca) in cells.iter().enumerate() {
        for cb in &cells[a + 1..] {
            let se = null_se(ca.r).hypot(null_se(cb.r));
            let diff = (ca.volume_estimate - cb.volume_estimate).abs();
            let z = if se > 0.0 {
                diff / se
            } else if diff > 0.0 {
                f64::INFINITY
            } else {
                0.0
            };
            max_z = max_z.max(z);
        }
    }
    let pts: Vec<LogPoint> = cells
        .iter()
        .filter(|c| c.volume_estimate > 0.0)
        .map(|c| LogPoint {
            x: c.r,
            y: c.volume_estimate,
            rel_err: None,
        })
        .collect();
    let r_slope = fit_power_law(&pts).map(|f| f.exponent);
    let agree = max_z <= 3.0;
    Some(RUniformity {
        delta: scan.config.delta_grid[i],
        r_values: cells.iter().map(|c| c.r).collect(),
        estimates: cells.iter().map(|c| c.volume_estimate).collect(),
        standard_errors: cells.iter().map(|c| c.standard_error).collect(),
        max_pairwise_z: max_z,
        agree_within_3se: agree,
        r_independent: agree && r_slope.is_none_or(|s| s.abs() <= 0.1),
        r_slope,
    })
}

pub fn degenerate_scenario_scan(config: &ScanConfig) -> Result<DegenerateReport, LabError> {
    let p = degenerate_polynomial();
    let scan = volume_scan(&p, config)?;
    let r_uniformity = (0..config.delta_grid.len())
        .filter_map(|i| uniformity(&scan, i))
        .collect();
    let nu = config
        .r_grid
        .iter()
        .find(|&&r| r >= R_UNIFORM_FROM)
        .and_then(|&r| fit_scaling_at(&scan, super::Axis::Delta, r).ok());
    Ok(DegenerateReport {
        polynomial: p.to_string(),
        scan,
        r_uniformity,
        nu,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::log_grid;

    #[test]
    fn polynomial_and_zeros() {
        let p = degenerate_polynomial();
        for z in [[0.0, 0.0], [1.0, 1.0], [-1.0, -1.0]] {
            assert_eq!(p.evaluate(&z).unwrap(), 0.0);
        }
        assert_eq!(p.degree(), Some(6));
    }

    #[test]
    fn small_scan_is_consistent() {
        let cfg = ScanConfig {
            delta_grid: log_grid(1e-2, 1e-1, 4),
            r_grid: vec![3.0, 6.0],
            samples_per_cell: 200_000,
            seed: 5,
        };
        let rep = degenerate_scenario_scan(&cfg).unwrap();
        assert!(rep.scan.monotonicity_violations(2.0).is_empty());
        let nu = rep.nu.unwrap();
        assert!(nu.fit.exponent > 0.0);
        let c = rep.scan.cell(0, 0).unwrap();
        assert!((c.volume_estimate - asymptotic_volume(1e-2)).abs() < 4.0 * c.standard_error + 0.1 * c.volume_estimate);
    }
}
