//! Monte Carlo estimates of `vol(V_δ ∩ Δ_r^n)` where
//! `V_δ = {x : |P(x)| ≤ δ}` and `Δ_r^n = (−r, r)^n`, plus scaling fits
//! and comparisons against predicted bounds.

pub mod degenerate;
pub mod fit;
pub mod remez;

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{BoundKind, BoundPrediction};
use crate::poly::{FloatPoly, Polynomial};
use crate::rng::{self, Purpose};
pub use degenerate::{degenerate_polynomial, degenerate_scenario_scan, DegenerateReport, RUniformity};
pub use fit::{fit_power_law, LogPoint, PowerFit};
pub use remez::{remez_check, RemezReport};

/// Cells with fewer hits are excluded from fits.
pub const MIN_RELIABLE_HITS: u64 = 100;
pub const MIN_SAMPLES_PER_CELL: u64 = 1000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LabError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("need at least {needed} reliable cells along the {axis} axis, found {found}")]
    InsufficientCells { axis: Axis, needed: usize, found: usize },
    #[error("no reliable cells inside the validity region of the prediction")]
    NoCellsInRegion,
    #[error("prediction is not a volume bound")]
    WrongPredictionKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Delta,
    R,
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Axis::Delta => "delta",
            Axis::R => "r",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub delta_grid: Vec<f64>,
    pub r_grid: Vec<f64>,
    pub samples_per_cell: u64,
    pub seed: u64,
}

/// `count` log-spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.log10(), hi.log10());
    (0..count)
        .map(|i| 10f64.powf(a + (b - a) * i as f64 / (count - 1) as f64))
        .collect()
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            delta_grid: log_grid(1e-6, 1e-1, 12),
            r_grid: vec![1.0, 2.0, 4.0, 8.0, 16.0],
            samples_per_cell: 1_000_000,
            seed: 0,
        }
    }
}

fn check_grid(name: &str, grid: &[f64]) -> Result<(), LabError> {
    if grid.is_empty() {
        return Err(LabError::InvalidConfig(format!("{name} is empty")));
    }
    if grid.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(LabError::InvalidConfig(format!("{name} must be positive and finite")));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(LabError::InvalidConfig(format!("{name} must be strictly increasing")));
    }
    Ok(())
}

impl ScanConfig {
    pub fn validate(&self) -> Result<(), LabError> {
        check_grid("delta_grid", &self.delta_grid)?;
        check_grid("r_grid", &self.r_grid)?;
        if self.samples_per_cell < MIN_SAMPLES_PER_CELL {
            return Err(LabError::InvalidConfig(format!(
                "samples_per_cell must be at least {MIN_SAMPLES_PER_CELL}"
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VolumeEstimate {
    pub estimate: f64,
    pub standard_error: f64,
    pub hit_count: u64,
    pub samples: u64,
}

impl VolumeEstimate {
    fn from_hits(hits: u64, samples: u64, r: f64, n: usize) -> Self {
        let box_volume = (2.0 * r).powi(n as i32);
        let f = hits as f64 / samples as f64;
        VolumeEstimate {
            estimate: box_volume * f,
            standard_error: box_volume * (f * (1.0 - f) / samples as f64).sqrt(),
            hit_count: hits,
            samples,
        }
    }
}

fn count_hits(fp: &FloatPoly, delta: f64, r: f64, seed: u64, stream: u64, start: u64, end: u64) -> u64 {
    let n = fp.dimension();
    let mut g = rng::stream_at(seed, stream, start, n);
    let mut x = vec![0.0; n];
    let mut hits = 0;
    for _ in start..end {
        rng::fill_box(&mut g, r, &mut x);
        if fp.eval(&x).abs() <= delta {
            hits += 1;
        }
    }
    hits
}

fn check_params(delta: f64, r: f64) -> Result<(), LabError> {
    if !(delta > 0.0 && delta.is_finite() && r > 0.0 && r.is_finite()) {
        return Err(LabError::InvalidConfig(
            "delta and r must be positive and finite".into(),
        ));
    }
    Ok(())
}

/// Estimates the volume of one cell, drawing from the stream of cell
/// `(delta_index, r_index)`.
pub fn estimate_cell(
    p: &Polynomial,
    delta: f64,
    r: f64,
    samples: u64,
    seed: u64,
    cell: (usize, usize),
) -> Result<VolumeEstimate, LabError> {
    check_params(delta, r)?;
    if samples == 0 {
        return Err(LabError::InvalidConfig("samples must be positive".into()));
    }
    let fp = p.to_float();
    let stream = rng::stream_id(Purpose::Volume, cell.0, cell.1);
    let hits: u64 = rng::chunks(samples)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(s, e)| count_hits(&fp, delta, r, seed, stream, s, e))
        .sum();
    Ok(VolumeEstimate::from_hits(hits, samples, r, p.dimension()))
}

/// `(2r)^n ×` the fraction of uniform samples in `Δ_r^n` with `|P| ≤ δ`.
pub fn estimate_sublevel_volume(
    p: &Polynomial,
    delta: f64,
    r: f64,
    samples: u64,
    seed: u64,
) -> Result<VolumeEstimate, LabError> {
    estimate_cell(p, delta, r, samples, seed, (0, 0))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanCell {
    pub delta_index: usize,
    pub r_index: usize,
    pub delta: f64,
    pub r: f64,
    pub volume_estimate: f64,
    pub standard_error: f64,
    pub hit_count: u64,
    pub reliable: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxisFit {
    pub axis: Axis,
    /// Value of the other parameter along the fitted line.
    pub fixed_value: f64,
    #[serde(flatten)]
    pub fit: PowerFit,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanResult {
    pub polynomial: String,
    pub dimension: usize,
    pub config: ScanConfig,
    pub cells: Vec<ScanCell>,
    pub fitted: Vec<AxisFit>,
}

impl ScanResult {
    /// Whitespace-separated columns with a `#` header.
    pub fn to_columns(&self) -> String {
        let mut out = String::from("# delta r estimate stderr hits reliable\n");
        for c in &self.cells {
            let _ = writeln!(
                out,
                "{:e} {} {:e} {:e} {} {}",
                c.delta, c.r, c.volume_estimate, c.standard_error, c.hit_count, c.reliable as u8
            );
        }
        out
    }

    pub fn cell(&self, delta_index: usize, r_index: usize) -> Option<&ScanCell> {
        self.cells
            .iter()
            .find(|c| c.delta_index == delta_index && c.r_index == r_index)
    }

    /// Indices `(i, j)` violating monotonicity in `δ` by more than
    /// `k` combined standard errors.
    pub fn monotonicity_violations(&self, k: f64) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 0..self.config.r_grid.len() {
            for i in 1..self.config.delta_grid.len() {
                if let (Some(a), Some(b)) = (self.cell(i - 1, j), self.cell(i, j)) {
                    let se = a.standard_error.hypot(b.standard_error);
                    if a.volume_estimate - b.volume_estimate > k * se {
                        out.push((i, j));
                    }
                }
            }
        }
        out
    }
}

/// One estimate per grid cell, δ-major, each from its own stream.
pub fn volume_scan(p: &Polynomial, config: &ScanConfig) -> Result<ScanResult, LabError> {
    volume_scan_indexed(p, config, 0)
}

/// As [`volume_scan`], with the `r` column of every stream shifted by
/// `r_offset`, for callers that scan one radius at a time.
pub fn volume_scan_indexed(p: &Polynomial, config: &ScanConfig, r_offset: usize) -> Result<ScanResult, LabError> {
    config.validate()?;
    let fp = p.to_float();
    let n = p.dimension();
    let cells: Vec<(usize, usize)> = (0..config.delta_grid.len())
        .flat_map(|i| (0..config.r_grid.len()).map(move |j| (i, j)))
        .collect();
    let tasks: Vec<(usize, u64, u64)> = cells
        .iter()
        .enumerate()
        .flat_map(|(c, _)| rng::chunks(config.samples_per_cell).map(move |(s, e)| (c, s, e)))
        .collect();
    let hits: Vec<(usize, u64)> = tasks
        .into_par_iter()
        .map(|(c, s, e)| {
            let (i, j) = cells[c];
            let stream = rng::stream_id(Purpose::Volume, i, j + r_offset);
            (
                c,
                count_hits(&fp, config.delta_grid[i], config.r_grid[j], config.seed, stream, s, e),
            )
        })
        .collect();
    let mut per_cell = vec![0u64; cells.len()];
    for (c, h) in hits {
        per_cell[c] += h;
    }
    let cells = cells
        .iter()
        .zip(per_cell)
        .map(|(&(i, j), h)| {
            let (delta, r) = (config.delta_grid[i], config.r_grid[j]);
            let v = VolumeEstimate::from_hits(h, config.samples_per_cell, r, n);
            ScanCell {
                delta_index: i,
                r_index: j,
                delta,
                r,
                volume_estimate: v.estimate,
                standard_error: v.standard_error,
                hit_count: h,
                reliable: h >= MIN_RELIABLE_HITS,
            }
        })
        .collect();
    let mut result = ScanResult {
        polynomial: p.to_string(),
        dimension: n,
        config: config.clone(),
        cells,
        fitted: Vec::new(),
    };
    for axis in [Axis::Delta, Axis::R] {
        if let Ok(f) = fit_scaling(&result, axis) {
            result.fitted.push(f);
        }
    }
    Ok(result)
}

fn cell_point(c: &ScanCell, axis: Axis) -> LogPoint {
    LogPoint {
        x: match axis {
            Axis::Delta => c.delta,
            Axis::R => c.r,
        },
        y: c.volume_estimate,
        rel_err: Some(c.standard_error / c.volume_estimate),
    }
}

/// Fits the scaling exponent along `axis` at the given value of the other
/// parameter.
pub fn fit_scaling_at(result: &ScanResult, axis: Axis, fixed_value: f64) -> Result<AxisFit, LabError> {
    let pts: Vec<LogPoint> = result
        .cells
        .iter()
        .filter(|c| c.reliable)
        .filter(|c| match axis {
            Axis::Delta => c.r == fixed_value,
            Axis::R => c.delta == fixed_value,
        })
        .map(|c| cell_point(c, axis))
        .collect();
    if pts.len() < 4 {
        return Err(LabError::InsufficientCells {
            axis,
            needed: 4,
            found: pts.len(),
        });
    }
    let fit = fit_power_law(&pts).ok_or(LabError::InsufficientCells {
        axis,
        needed: 4,
        found: pts.len(),
    })?;
    Ok(AxisFit { axis, fixed_value, fit })
}

/// Fits along `axis`, fixing the other parameter at the grid value with the
/// most reliable cells (the smallest such value on ties).
pub fn fit_scaling(result: &ScanResult, axis: Axis) -> Result<AxisFit, LabError> {
    let others = match axis {
        Axis::Delta => &result.config.r_grid,
        Axis::R => &result.config.delta_grid,
    };
    let count = |v: f64| {
        result
            .cells
            .iter()
            .filter(|c| c.reliable)
            .filter(|c| match axis {
                Axis::Delta => c.r == v,
                Axis::R => c.delta == v,
            })
            .count()
    };
    let mut best = others[0];
    for &v in others {
        if count(v) > count(best) {
            best = v;
        }
    }
    fit_scaling_at(result, axis, best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    /// Consistent with the upper bound.
    Pass,
    /// Not enough reliable data inside the validity region to test the exponent.
    Loose,
    /// Statistically inconsistent with the upper bound.
    Flag,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Loose => "LOOSE",
            Status::Flag => "FLAG",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tightness {
    pub source: String,
    /// `max estimate / shape` over reliable cells in the validity region.
    pub fitted_constant: f64,
    pub attained_at: (f64, f64),
    pub cells_in_region: usize,
    pub predicted_exponent: f64,
    pub empirical: Option<AxisFit>,
    pub violation: bool,
    pub status: Status,
    pub comparison: String,
}

/// Fits the unknown constant of a volume bound and tests its `δ` exponent.
pub fn bound_tightness(prediction: &BoundPrediction, result: &ScanResult) -> Result<Tightness, LabError> {
    if prediction.kind != BoundKind::Volume {
        return Err(LabError::WrongPredictionKind);
    }
    let in_region: Vec<&ScanCell> = result
        .cells
        .iter()
        .filter(|c| c.reliable && prediction.constraint.holds(c.delta, c.r))
        .collect();
    let mut best: Option<(f64, &ScanCell)> = None;
    for c in &in_region {
        let ratio = c.volume_estimate / prediction.shape(c.delta, c.r);
        if best.is_none_or(|(b, _)| ratio > b) {
            best = Some((ratio, c));
        }
    }
    let (fitted_constant, at) = best.ok_or(LabError::NoCellsInRegion)?;

    let predicted = crate::poly::rational_to_f64(&prediction.delta_exponent);
    let region = ScanResult {
        cells: in_region.iter().map(|c| (*c).clone()).collect(),
        fitted: Vec::new(),
        ..result.clone()
    };
    let empirical = fit_scaling(&region, Axis::Delta).ok();
    let (violation, status, comparison) = match &empirical {
        Some(f) => {
            let hi = f.fit.confidence_95.1;
            let v = hi < predicted;
            (
                v,
                if v { Status::Flag } else { Status::Pass },
                format!(
                    "fitted delta-exponent {:.4} (95% CI [{:.4}, {:.4}]) vs predicted {:.4}",
                    f.fit.exponent, f.fit.confidence_95.0, hi, predicted
                ),
            )
        }
        None => (
            false,
            Status::Loose,
            "too few reliable cells in the validity region to fit the delta-exponent".into(),
        ),
    };
    Ok(Tightness {
        source: prediction.source.clone(),
        fitted_constant,
        attained_at: (at.delta, at.r),
        cells_in_region: in_region.len(),
        predicted_exponent: predicted,
        empirical,
        violation,
        status,
        comparison,
    })
}
