//! Singular integrals `∫|P|^{−μ}` by layer-cake, oscillatory integrals
//! `∫ e^{iλP}` by panel quadrature, and the decay and integrability scans
//! built on them.

pub mod layercake;
pub mod quadrature;
pub mod vdc;

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::{integrability_bounds, oscillatory_decay_bound, BoundsError};
use crate::montecarlo::{fit_power_law, LabError, LogPoint, PowerFit, Status};
use crate::poly::{rational_to_f64, Polynomial};
pub use layercake::{
    layer_cake, level_volumes, singular_integral, IntegralValue, LevelConfig, LevelData, SingularIntegralResult,
};
pub use quadrature::{oscillatory_integral, oscillatory_integral_on_box, OscillatoryValue, QuadratureConfig};
pub use vdc::{vdc_diagnostic, vdc_sweep, VdcDiagnostic, VdcSweep};

pub const ENVELOPE_WINDOWS: usize = 8;
pub const MIN_DECAY_POINTS: usize = 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntegralError {
    #[error(transparent)]
    Lab(#[from] LabError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnvelopePoint {
    pub window: (f64, f64),
    pub at: f64,
    pub max: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnvelopeFit {
    pub points: Vec<EnvelopePoint>,
    pub fit: PowerFit,
}

/// Splits `[min x, max x]` into `windows` log-uniform windows, keeps the
/// largest value in each, and fits a power law through those maxima.
/// `None` values (unconverged cells) are skipped.
pub fn envelope_fit(samples: &[(f64, Option<f64>)], windows: usize) -> Option<EnvelopeFit> {
    let xs: Vec<f64> = samples.iter().map(|s| s.0).collect();
    let lo = xs.iter().copied().fold(f64::INFINITY, f64::min).ln();
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max).ln();
    if !(hi > lo) {
        return None;
    }
    let width = (hi - lo) / windows as f64;
    let mut points = Vec::new();
    for w in 0..windows {
        let a = lo + w as f64 * width;
        let b = if w + 1 == windows { hi } else { a + width };
        let best = samples
            .iter()
            .filter(|(x, _)| {
                let l = x.ln();
                l >= a && (l < b || (w + 1 == windows && l <= b))
            })
            .filter_map(|&(x, y)| y.map(|y| (x, y)))
            .filter(|(_, y)| *y > 0.0)
            .max_by(|p, q| p.1.total_cmp(&q.1));
        if let Some((at, max)) = best {
            points.push(EnvelopePoint {
                window: (a.exp(), b.exp()),
                at,
                max,
            });
        }
    }
    let pts: Vec<LogPoint> = points
        .iter()
        .map(|p| LogPoint {
            x: p.at,
            y: p.max,
            rel_err: None,
        })
        .collect();
    fit_power_law(&pts).map(|fit| EnvelopeFit { points, fit })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecayScanResult {
    pub polynomial: String,
    pub r: f64,
    pub config: QuadratureConfig,
    pub lambda_grid: Vec<f64>,
    /// `|I_r(λ)|`; `None` where the quadrature did not converge.
    pub magnitudes: Vec<Option<f64>>,
    pub unconverged: usize,
    pub envelope: Option<EnvelopeFit>,
    pub envelope_exponent: Option<f64>,
    pub confidence_95: Option<(f64, f64)>,
    /// `−1/ad(P)`.
    pub predicted_exponent: Option<f64>,
    pub status: Status,
}

impl DecayScanResult {
    pub fn to_columns(&self) -> String {
        let mut out = String::from("# lambda magnitude converged\n");
        for (l, m) in self.lambda_grid.iter().zip(&self.magnitudes) {
            let _ = writeln!(out, "{l:e} {:e} {}", m.unwrap_or(f64::NAN), m.is_some() as u8);
        }
        out
    }
}

pub fn decay_scan(
    p: &Polynomial,
    r: f64,
    lambda_grid: &[f64],
    config: &QuadratureConfig,
) -> Result<DecayScanResult, IntegralError> {
    if !(r > 0.0) {
        return Err(IntegralError::InvalidConfig("r must be positive".into()));
    }
    if lambda_grid.len() < MIN_DECAY_POINTS {
        return Err(IntegralError::InvalidConfig(format!(
            "lambda grid needs at least {MIN_DECAY_POINTS} points"
        )));
    }
    if lambda_grid.iter().any(|&l| !(l > 1.0)) || lambda_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(IntegralError::InvalidConfig(
            "lambda grid must be increasing and above 1".into(),
        ));
    }
    if !(config.target_rel_err > 1e-10 && config.target_rel_err < 1e-2) {
        return Err(IntegralError::InvalidConfig(
            "target_rel_err must lie in (1e-10, 1e-2)".into(),
        ));
    }
    // each integral parallelizes internally; cells run in order
    let values: Vec<OscillatoryValue> = lambda_grid
        .iter()
        .map(|&l| oscillatory_integral(p, l, r, config))
        .collect();
    let magnitudes: Vec<Option<f64>> = values.iter().map(|v| v.converged.then_some(v.magnitude)).collect();
    let samples: Vec<(f64, Option<f64>)> = lambda_grid.iter().copied().zip(magnitudes.iter().copied()).collect();
    let envelope = envelope_fit(&samples, ENVELOPE_WINDOWS);
    let predicted = if p.is_constant() {
        None
    } else {
        let b = oscillatory_decay_bound(p)?;
        b.admissible.lambda_exponent.as_ref().map(rational_to_f64)
    };
    let status = match (&envelope, predicted) {
        (Some(e), Some(pred)) if e.fit.confidence_95.0 > pred => Status::Flag,
        (Some(_), Some(_)) => Status::Pass,
        _ => Status::Loose,
    };
    Ok(DecayScanResult {
        polynomial: p.to_string(),
        r,
        config: *config,
        lambda_grid: lambda_grid.to_vec(),
        unconverged: magnitudes.iter().filter(|m| m.is_none()).count(),
        magnitudes,
        envelope_exponent: envelope.as_ref().map(|e| e.fit.exponent),
        confidence_95: envelope.as_ref().map(|e| e.fit.confidence_95),
        envelope,
        predicted_exponent: predicted,
        status,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MuVerdict {
    pub mu: f64,
    /// Radius the finite/divergent verdict is read at.
    pub verdict_r: f64,
    pub divergent: bool,
    pub results: Vec<SingularIntegralResult>,
    /// Growth of the finite values in `r` over radii `≥ 1`.
    pub r_growth: Option<PowerFit>,
    /// `n − μ ad(P)`, stated for `μ < 1/ad(P)`.
    pub predicted_growth: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntegrabilityScan {
    pub polynomial: String,
    pub config: LevelConfig,
    pub r_grid: Vec<f64>,
    pub per_mu: Vec<MuVerdict>,
    pub largest_finite: Option<f64>,
    pub smallest_divergent: Option<f64>,
    /// `max(1/ad, best τ)`.
    pub theoretical_lower: f64,
    /// `1/ND` when the gradient vanishes at the origin.
    pub theoretical_upper: Option<f64>,
    pub contradictions: Vec<String>,
    pub status: Status,
}

impl IntegrabilityScan {
    pub fn to_columns(&self) -> String {
        let mut out = String::from("# mu r value divergent\n");
        for v in &self.per_mu {
            for res in &v.results {
                let _ = writeln!(
                    out,
                    "{} {} {:e} {}",
                    v.mu,
                    res.r,
                    res.value.finite().unwrap_or(f64::NAN),
                    res.value.is_divergent() as u8
                );
            }
        }
        out
    }

    pub fn verdict(&self, mu: f64) -> Option<&MuVerdict> {
        self.per_mu.iter().find(|v| v.mu == mu)
    }
}

/// Finite/divergent verdicts for each `μ` (read at the smallest radius),
/// growth in `r` of the finite values, and a comparison of the empirical
/// transition with `[max(1/ad, τ), 1/ND]`.
pub fn integrability_scan(
    p: &Polynomial,
    mu_grid: &[f64],
    r_grid: &[f64],
    config: &LevelConfig,
) -> Result<IntegrabilityScan, IntegralError> {
    if mu_grid.is_empty() || r_grid.is_empty() {
        return Err(IntegralError::InvalidConfig(
            "mu_grid and r_grid must be nonempty".into(),
        ));
    }
    if r_grid.windows(2).any(|w| w[0] >= w[1]) || mu_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(IntegralError::InvalidConfig("grids must be strictly increasing".into()));
    }
    let bounds = integrability_bounds(p)?;
    let n = p.dimension() as f64;
    let ad = bounds.growth_admissible.mu_coefficient.clone();
    let ad = -rational_to_f64(&ad);

    let data: Vec<LevelData> = r_grid
        .iter()
        .enumerate()
        .map(|(j, &r)| level_volumes(p, r, j, config))
        .collect::<Result<_, _>>()?;

    let per_mu: Vec<MuVerdict> = mu_grid
        .par_iter()
        .map(|&mu| -> Result<MuVerdict, IntegralError> {
            let results: Vec<SingularIntegralResult> =
                data.iter().map(|d| layer_cake(d, mu)).collect::<Result<_, _>>()?;
            let pts: Vec<LogPoint> = results
                .iter()
                .filter(|res| res.r >= 1.0)
                .filter_map(|res| {
                    res.value.finite().map(|v| LogPoint {
                        x: res.r,
                        y: v,
                        rel_err: None,
                    })
                })
                .collect();
            Ok(MuVerdict {
                mu,
                verdict_r: r_grid[0],
                divergent: results[0].value.is_divergent(),
                r_growth: fit_power_law(&pts),
                predicted_growth: (mu * ad < 1.0).then_some(n - mu * ad),
                results,
            })
        })
        .collect::<Result<_, _>>()?;

    let largest_finite = per_mu
        .iter()
        .filter(|v| !v.divergent)
        .map(|v| v.mu)
        .fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.max(x))));
    let smallest_divergent = per_mu
        .iter()
        .filter(|v| v.divergent)
        .map(|v| v.mu)
        .fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.min(x))));
    let lower = rational_to_f64(&bounds.best_lower());
    let upper = bounds.upper_nd.as_ref().map(rational_to_f64);
    let mut contradictions = Vec::new();
    for v in &per_mu {
        if v.divergent && v.mu < lower {
            contradictions.push(format!(
                "mu = {} judged divergent below the lower bound {lower:.4}",
                v.mu
            ));
        }
        if let Some(u) = upper {
            if !v.divergent && v.mu > u {
                contradictions.push(format!("mu = {} judged finite above the upper bound {u:.4}", v.mu));
            }
        }
    }
    let status = if contradictions.is_empty() {
        Status::Pass
    } else {
        Status::Flag
    };
    Ok(IntegrabilityScan {
        polynomial: p.to_string(),
        config: config.clone(),
        r_grid: r_grid.to_vec(),
        per_mu,
        largest_finite,
        smallest_divergent,
        theoretical_lower: lower,
        theoretical_upper: upper,
        contradictions,
        status,
    })
}
