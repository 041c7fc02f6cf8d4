//! `∫_{Δ_r^n} |P|^{−μ}` by the layer-cake formula
//! `μ ∫_0^∞ δ^{−μ−1} V(δ) dδ`, `V(δ) = vol{|P| ≤ δ} ∩ Δ_r^n`.
//!
//! `V` is estimated at log-spaced levels below `B = Σ|a_α| r^{|α|} ≥ sup|P|`.
//! Between neighbouring reliable levels `V` is interpolated as a power law
//! and integrated exactly; above `B` it equals the box volume; below the
//! lowest reliable level it is extrapolated with the locally fitted slope
//! `σ`, and the integral is finite iff `σ > μ`.

use serde::{Serialize, Serializer};

use crate::montecarlo::{fit_power_law, volume_scan_indexed, LabError, LogPoint, ScanCell, ScanConfig};
use crate::poly::Polynomial;

pub const DEFAULT_LEVELS: usize = 24;
/// Levels span this many decades below `B`.
pub const DEFAULT_DECADES: f64 = 8.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum IntegralValue {
    Finite(f64),
    Divergent,
}

impl IntegralValue {
    pub fn finite(&self) -> Option<f64> {
        match self {
            IntegralValue::Finite(v) => Some(*v),
            IntegralValue::Divergent => None,
        }
    }

    pub fn is_divergent(&self) -> bool {
        matches!(self, IntegralValue::Divergent)
    }
}

/// A number, or the string `"divergent"`.
impl Serialize for IntegralValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            IntegralValue::Finite(v) => s.serialize_f64(*v),
            IntegralValue::Divergent => s.serialize_str("divergent"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelConfig {
    pub levels: usize,
    pub decades: f64,
    pub samples_per_level: u64,
    pub seed: u64,
}

impl Default for LevelConfig {
    fn default() -> Self {
        LevelConfig {
            levels: DEFAULT_LEVELS,
            decades: DEFAULT_DECADES,
            samples_per_level: 1_000_000,
            seed: 0,
        }
    }
}

/// Volume estimates at the levels for one box, shared by every `μ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelData {
    pub r: f64,
    pub sup_bound: f64,
    pub box_volume: f64,
    pub cells: Vec<ScanCell>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularIntegralResult {
    pub mu: f64,
    pub r: f64,
    pub value: IntegralValue,
    pub levels_used: usize,
    pub levels_dropped: usize,
    pub tail_exponent: f64,
    pub tail_confidence_95: (f64, f64),
    pub body: f64,
    pub tail: f64,
    pub above: f64,
    pub verdict_basis: String,
}

/// Estimates `V` at `levels` log-spaced thresholds in `[B·10^{−decades}, B]`,
/// using the volume streams of column `r_index`.
pub fn level_volumes(p: &Polynomial, r: f64, r_index: usize, cfg: &LevelConfig) -> Result<LevelData, LabError> {
    if cfg.levels < 8 {
        return Err(LabError::InvalidConfig("at least 8 levels are required".into()));
    }
    let sup_bound = p.abs_bound_on_box(r);
    if !(sup_bound > 0.0) {
        return Err(LabError::InvalidConfig("polynomial vanishes identically".into()));
    }
    let scan_cfg = ScanConfig {
        delta_grid: crate::montecarlo::log_grid(sup_bound * 10f64.powf(-cfg.decades), sup_bound, cfg.levels),
        r_grid: vec![r],
        samples_per_cell: cfg.samples_per_level,
        seed: cfg.seed,
    };
    let scan = volume_scan_indexed(p, &scan_cfg, r_index)?;
    Ok(LevelData {
        r,
        sup_bound,
        box_volume: (2.0 * r).powi(p.dimension() as i32),
        cells: scan.cells,
    })
}

/// `μ ∫_a^b δ^{−μ−1} V_a (δ/a)^s dδ`.
fn power_piece(mu: f64, a: f64, b: f64, va: f64, s: f64) -> f64 {
    let e = s - mu;
    let scale = mu * va * a.powf(-s);
    if e.abs() < 1e-12 {
        scale * (b / a).ln()
    } else {
        scale * (b.powf(e) - a.powf(e)) / e
    }
}

/// Evaluates the layer-cake integral for one `μ` from shared level data.
pub fn layer_cake(data: &LevelData, mu: f64) -> Result<SingularIntegralResult, LabError> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(LabError::InvalidConfig("mu must be positive".into()));
    }
    let reliable: Vec<&ScanCell> = data
        .cells
        .iter()
        .filter(|c| c.reliable && c.volume_estimate > 0.0)
        .collect();
    let dropped = data.cells.len() - reliable.len();
    if reliable.len() < 4 {
        return Err(LabError::InsufficientCells {
            axis: crate::montecarlo::Axis::Delta,
            needed: 4,
            found: reliable.len(),
        });
    }

    // σ from the lower half of the reliable levels (at least 4)
    let take = (reliable.len() / 2).max(4);
    let pts: Vec<LogPoint> = reliable[..take]
        .iter()
        .map(|c| LogPoint {
            x: c.delta,
            y: c.volume_estimate,
            rel_err: Some(c.standard_error / c.volume_estimate),
        })
        .collect();
    let fit = fit_power_law(&pts).ok_or(LabError::InsufficientCells {
        axis: crate::montecarlo::Axis::Delta,
        needed: 4,
        found: take,
    })?;
    let sigma = fit.exponent;
    let (lo, hi) = fit.confidence_95;

    let mut body = 0.0;
    for w in reliable.windows(2) {
        let (a, b) = (w[0], w[1]);
        let s = (b.volume_estimate / a.volume_estimate).ln() / (b.delta / a.delta).ln();
        body += power_piece(mu, a.delta, b.delta, a.volume_estimate, s);
    }
    // last reliable level up to B, then the box volume above B
    let top = reliable[reliable.len() - 1];
    if top.delta < data.sup_bound {
        let s = (data.box_volume / top.volume_estimate).ln() / (data.sup_bound / top.delta).ln();
        body += power_piece(mu, top.delta, data.sup_bound, top.volume_estimate, s.max(0.0));
    }
    let above = data.box_volume * data.sup_bound.powf(-mu);

    let bottom = reliable[0];
    let finite = lo > mu;
    let tail = if finite {
        mu * bottom.volume_estimate * bottom.delta.powf(-mu) / (sigma - mu)
    } else {
        f64::INFINITY
    };
    let verdict_basis = format!(
        "tail slope sigma = {sigma:.4} (95% CI [{lo:.4}, {hi:.4}]) from {take} levels in [{:.3e}, {:.3e}]; {}",
        reliable[0].delta,
        reliable[take - 1].delta,
        if finite {
            "lower CI end exceeds mu: finite"
        } else {
            "lower CI end does not exceed mu: divergent"
        }
    );
    Ok(SingularIntegralResult {
        mu,
        r: data.r,
        value: if finite {
            IntegralValue::Finite(body + tail + above)
        } else {
            IntegralValue::Divergent
        },
        levels_used: reliable.len(),
        levels_dropped: dropped,
        tail_exponent: sigma,
        tail_confidence_95: (lo, hi),
        body,
        tail: if finite { tail } else { f64::NAN },
        above,
        verdict_basis,
    })
}

pub fn singular_integral(
    p: &Polynomial,
    mu: f64,
    r: f64,
    cfg: &LevelConfig,
) -> Result<SingularIntegralResult, LabError> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(LabError::InvalidConfig("r must be positive".into()));
    }
    layer_cake(&level_volumes(p, r, 0, cfg)?, mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    #[test]
    fn power_piece_matches_direct_sum() {
        // μ ∫_1^2 δ^{−μ−1} δ^1 dδ with μ = 1/2: 0.5 · 2 (√2 − 1)
        let v = power_piece(0.5, 1.0, 2.0, 1.0, 1.0);
        assert!((v - (2f64.sqrt() - 1.0)).abs() < 1e-12);
        let v = power_piece(1.0, 1.0, std::f64::consts::E, 1.0, 1.0);
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn linear_closed_form() {
        let p = parse_polynomial("x1", 1).unwrap();
        let cfg = LevelConfig {
            seed: 4,
            ..LevelConfig::default()
        };
        let data = level_volumes(&p, 1.0, 0, &cfg).unwrap();
        for mu in [0.3, 0.5, 0.7] {
            let res = layer_cake(&data, mu).unwrap();
            let exact = 2.0 / (1.0 - mu);
            let v = res.value.finite().unwrap();
            assert!((v - exact).abs() <= 0.05 * exact, "mu {mu}: {v} vs {exact}");
        }
        assert!(layer_cake(&data, 1.2).unwrap().value.is_divergent());
    }

    #[test]
    fn linear_closed_form_over_mu_and_r() {
        let p = parse_polynomial("x1", 1).unwrap();
        let r = 2.0;
        let data = level_volumes(
            &p,
            r,
            0,
            &LevelConfig {
                seed: 8,
                ..LevelConfig::default()
            },
        )
        .unwrap();
        for k in 1..=9 {
            let mu = k as f64 / 10.0;
            let exact = 2.0 / (1.0 - mu) * r.powf(1.0 - mu);
            let v = layer_cake(&data, mu).unwrap().value.finite().unwrap();
            assert!((v - exact).abs() <= 0.05 * exact, "mu {mu}: {v} vs {exact}");
        }
    }

    #[test]
    fn level_count_barely_matters() {
        let p = parse_polynomial("x1^5 + x1*x2^3 + x2^2", 2).unwrap();
        let coarse = LevelConfig {
            levels: 12,
            seed: 3,
            ..LevelConfig::default()
        };
        let fine = LevelConfig {
            levels: 24,
            seed: 3,
            ..LevelConfig::default()
        };
        for mu in [0.2, 0.4] {
            let a = singular_integral(&p, mu, 1.0, &coarse).unwrap().value.finite().unwrap();
            let b = singular_integral(&p, mu, 1.0, &fine).unwrap().value.finite().unwrap();
            assert!((a - b).abs() < 0.1 * b, "mu {mu}: {a} vs {b}");
        }
    }

    #[test]
    fn disk_is_divergent_at_one() {
        let p = parse_polynomial("x1^2 + x2^2", 2).unwrap();
        let res = singular_integral(
            &p,
            1.0,
            1.0,
            &LevelConfig {
                seed: 1,
                ..LevelConfig::default()
            },
        )
        .unwrap();
        assert!(res.value.is_divergent(), "{}", res.verdict_basis);
        assert_eq!(serde_json::to_string(&res.value).unwrap(), "\"divergent\"");
    }

    #[test]
    fn rejects_few_levels() {
        let p = parse_polynomial("x1", 1).unwrap();
        let cfg = LevelConfig {
            levels: 4,
            ..LevelConfig::default()
        };
        assert!(singular_integral(&p, 0.5, 1.0, &cfg).is_err());
    }
}
