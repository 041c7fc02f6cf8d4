//! Power-law fits `y ≈ C x^s` by (weighted) least squares on logs.

use serde::Serialize;
use statrs::distribution::{ContinuousCDF, StudentsT};

/// One observation; `rel_err` is the standard error of `y` divided by `y`,
/// or `None` when the point is exact.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogPoint {
    pub x: f64,
    pub y: f64,
    pub rel_err: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerFit {
    pub exponent: f64,
    pub confidence_95: (f64, f64),
    pub constant: f64,
    pub points: usize,
    /// False when the fit fell back to ordinary least squares.
    pub weighted: bool,
}

impl PowerFit {
    /// Half-width of the 95% interval.
    pub fn margin(&self) -> f64 {
        0.5 * (self.confidence_95.1 - self.confidence_95.0)
    }
}

/// Fits `log y = log C + s log x`. Weights are `1/rel_err²` when every point
/// carries a positive relative error; otherwise all weights are equal.
/// The residual variance is estimated from the data, and for weighted fits
/// it is floored at 1 so the interval is never narrower than the sampling
/// error alone. Returns `None` with fewer than 3 usable points.
pub fn fit_power_law(points: &[LogPoint]) -> Option<PowerFit> {
    let usable: Vec<&LogPoint> = points
        .iter()
        .filter(|p| p.x > 0.0 && p.y > 0.0 && p.x.is_finite() && p.y.is_finite())
        .collect();
    let m = usable.len();
    if m < 3 {
        return None;
    }
    let weighted = usable
        .iter()
        .all(|p| p.rel_err.is_some_and(|e| e > 0.0 && e.is_finite()));
    let data: Vec<(f64, f64, f64)> = usable
        .iter()
        .map(|p| {
            let w = if weighted {
                1.0 / p.rel_err.unwrap().powi(2)
            } else {
                1.0
            };
            (p.x.ln(), p.y.ln(), w)
        })
        .collect();

    let sw: f64 = data.iter().map(|d| d.2).sum();
    let mx = data.iter().map(|d| d.2 * d.0).sum::<f64>() / sw;
    let my = data.iter().map(|d| d.2 * d.1).sum::<f64>() / sw;
    let sxx: f64 = data.iter().map(|d| d.2 * (d.0 - mx).powi(2)).sum();
    if sxx <= 0.0 {
        return None;
    }
    let sxy: f64 = data.iter().map(|d| d.2 * (d.0 - mx) * (d.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;

    let df = (m - 2) as f64;
    let rss: f64 = data.iter().map(|d| d.2 * (d.1 - intercept - slope * d.0).powi(2)).sum();
    let mut s2 = rss / df;
    if weighted {
        s2 = s2.max(1.0);
    }
    let se = (s2 / sxx).sqrt();
    let t = StudentsT::new(0.0, 1.0, df)
        .expect("positive degrees of freedom")
        .inverse_cdf(0.975);
    Some(PowerFit {
        exponent: slope,
        confidence_95: (slope - t * se, slope + t * se),
        constant: intercept.exp(),
        points: m,
        weighted,
    })
}
