//! Sampling verifier for the global Łojasiewicz-type inequality
//! `d(x, Z(P) ∪ Z_α) ≤ μ(α) |P(x)|^{1/|α|}`.
//!
//! Only upper bounds on distances are computed, so a sample either confirms
//! the inequality or is inconclusive; nothing here can falsify it.

pub mod roots;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::admissibility::{AdmissibleCertificate, Permutation};
use crate::bounds::mu_alpha;
use crate::poly::{FloatPoly, PolyError, Polynomial, Rational};
use crate::rng::{self, Purpose};
pub use roots::{nearest_root, real_roots, univariate_real_roots, RootError, ROOT_TOLERANCE};

/// `|g| below this counts as a zero of g` for the descent.
pub const DESCENT_ZERO: f64 = 1e-10;
pub const DEFAULT_DESCENT_ITERATIONS: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LojaError {
    #[error("certificate does not witness an admissible monomial of the polynomial")]
    InvalidCertificate,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

/// One auxiliary variety `Z_k`, living in the trailing coordinates
/// `y[offset..]` of the permuted point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainLevel {
    pub level: usize,
    pub ambient_dimension: usize,
    pub offset: usize,
    pub defining: Polynomial,
    /// False when the defining polynomial is constant (empty set or the
    /// whole space).
    pub active: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainDescription {
    pub permuted_order: Permutation,
    /// `P` in permuted coordinates.
    pub permuted: Polynomial,
    /// The coefficient polynomials `P_{0,1}, …, P_{0,n−1}`.
    pub slices: Vec<Polynomial>,
    pub levels: Vec<ChainLevel>,
    #[serde(serialize_with = "crate::report::serialize_rational")]
    pub leading_coefficient: Rational,
}

impl ChainDescription {
    pub fn active_levels(&self) -> impl Iterator<Item = &ChainLevel> {
        self.levels.iter().filter(|l| l.active)
    }
}

/// Peels off the certificate's exponents one permuted variable at a time
/// and forms the defining polynomials of `Z_1, …, Z_n`.
pub fn build_chain(p: &Polynomial, cert: &AdmissibleCertificate) -> Result<ChainDescription, LojaError> {
    if !cert.verify(p) {
        return Err(LojaError::InvalidCertificate);
    }
    let n = p.dimension();
    let order = cert.witness.as_slice();
    let permuted = p.permute_variables(order)?;
    let alpha: Vec<u32> = order.iter().map(|&i| cert.alpha.get(i)).collect();

    let mut slices = Vec::with_capacity(n.saturating_sub(1));
    let mut current = permuted.clone();
    for &a in &alpha[..n - 1] {
        current = current.coefficient_slice(0, a)?;
        slices.push(current.clone());
    }
    let leading = current.coefficient_slice(0, alpha[n - 1])?.constant_term();

    let mut levels = Vec::with_capacity(n);
    let first = permuted.partial_derivative(0)?;
    levels.push(ChainLevel {
        level: 1,
        ambient_dimension: n,
        offset: 0,
        active: !first.is_constant(),
        defining: first,
    });
    for (k, f) in slices.iter().enumerate() {
        let defining = f * &f.partial_derivative(0)?;
        levels.push(ChainLevel {
            level: k + 2,
            ambient_dimension: n - k - 1,
            offset: k + 1,
            active: !defining.is_constant(),
            defining,
        });
    }
    Ok(ChainDescription {
        permuted_order: cert.witness.clone(),
        permuted,
        slices,
        levels,
        leading_coefficient: leading,
    })
}

fn norm(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| (u - v) * (u - v)).sum::<f64>().sqrt()
}

/// Distance from `x` to some point where `|g| < DESCENT_ZERO`, found by
/// damped Gauss-Newton steps on `g = 0`.
fn descent_distance(g: &FloatPoly, x: &[f64], iterations: usize) -> Option<f64> {
    let mut y = x.to_vec();
    let mut grad = vec![0.0; x.len()];
    let mut trial = vec![0.0; x.len()];
    let mut value = g.eval_with_gradient(&y, &mut grad);
    for _ in 0..iterations {
        if value.abs() < DESCENT_ZERO {
            return Some(norm(&y, x));
        }
        let g2: f64 = grad.iter().map(|v| v * v).sum();
        if g2 == 0.0 || !g2.is_finite() {
            return None;
        }
        let mut step = 1.0;
        loop {
            for ((t, yi), gi) in trial.iter_mut().zip(&y).zip(&grad) {
                *t = yi - step * value * gi / g2;
            }
            let v = g.eval(&trial);
            if v.abs() < value.abs() {
                std::mem::swap(&mut y, &mut trial);
                value = g.eval_with_gradient(&y, &mut grad);
                break;
            }
            step *= 0.5;
            if step < 1e-12 {
                return None;
            }
        }
    }
    (value.abs() < DESCENT_ZERO).then(|| norm(&y, x))
}

/// Upper bound on `d(x, {g = 0})` with an explicit descent budget.
pub fn distance_upper_bound_with(g: &FloatPoly, x: &[f64], box_radius: f64, iterations: usize) -> f64 {
    let mut best = f64::INFINITY;
    if g.dimension() == 0 {
        return best;
    }
    for axis in 0..x.len() {
        let c = g.restrict_to_axis(axis, x);
        if let Some(t) = nearest_root(&c, x[axis], 2.0 * box_radius, ROOT_TOLERANCE) {
            best = best.min((t - x[axis]).abs());
        }
    }
    if let Some(d) = descent_distance(g, x, iterations) {
        best = best.min(d);
    }
    best
}

/// Upper bound on the distance from `x` to the real zero set of `defining`:
/// nearest roots along the coordinate lines through `x`, and a damped
/// descent. `+∞` when neither finds a zero.
pub fn distance_upper_bound(x: &[f64], defining: &Polynomial, box_radius: f64) -> f64 {
    distance_upper_bound_with(&defining.to_float(), x, box_radius, DEFAULT_DESCENT_ITERATIONS)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LojaConfig {
    pub samples: u64,
    pub box_radius: f64,
    pub seed: u64,
    pub descent_iterations: usize,
}

impl LojaConfig {
    pub fn new(samples: u64, box_radius: f64, seed: u64) -> Self {
        LojaConfig {
            samples,
            box_radius,
            seed,
            descent_iterations: DEFAULT_DESCENT_ITERATIONS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LojaReport {
    pub samples: u64,
    pub confirmed: u64,
    pub inconclusive: u64,
    /// Largest `d̂(x) / |P(x)|^{1/|α|}` among confirmed samples.
    pub max_confirmed_ratio: f64,
    pub mu_alpha: f64,
    pub alpha: crate::poly::ExponentVector,
    pub witness: Permutation,
    pub active_levels: Vec<usize>,
    pub assumptions: Vec<String>,
}

impl LojaReport {
    pub fn confirmed_fraction(&self) -> f64 {
        if self.samples == 0 {
            return 0.0;
        }
        self.confirmed as f64 / self.samples as f64
    }
}

#[derive(Default, Clone, Copy)]
struct Tally {
    confirmed: u64,
    max_ratio: f64,
}

pub fn lojasiewicz_check(
    p: &Polynomial,
    cert: &AdmissibleCertificate,
    config: &LojaConfig,
) -> Result<LojaReport, LojaError> {
    if !(config.box_radius > 0.0 && config.box_radius.is_finite()) {
        return Err(LojaError::InvalidConfig("box_radius must be positive".into()));
    }
    let chain = build_chain(p, cert)?;
    let n = p.dimension();
    let k = cert.total_degree() as f64;
    let mu = mu_alpha(p, &cert.alpha);
    let order = cert.witness.as_slice().to_vec();

    let target = chain.permuted.to_float();
    let levels: Vec<(usize, FloatPoly)> = chain
        .active_levels()
        .map(|l| (l.offset, l.defining.to_float()))
        .collect();
    let r = config.box_radius;
    let iterations = config.descent_iterations;
    let stream = rng::stream_id(Purpose::Lojasiewicz, 0, 0);

    let tallies: Vec<Tally> = rng::chunks(config.samples)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(start, end)| {
            let mut g = rng::stream_at(config.seed, stream, start, n);
            let mut x = vec![0.0; n];
            let mut y = vec![0.0; n];
            let mut tally = Tally::default();
            for _ in start..end {
                rng::fill_box(&mut g, r, &mut x);
                for (yk, &i) in y.iter_mut().zip(&order) {
                    *yk = x[i];
                }
                let value = target.eval(&y).abs();
                if value == 0.0 {
                    tally.confirmed += 1;
                    continue;
                }
                let mut d = distance_upper_bound_with(&target, &y, r, iterations);
                for (offset, f) in &levels {
                    d = d.min(distance_upper_bound_with(f, &y[*offset..], r, iterations));
                }
                let scale = value.powf(1.0 / k);
                if d <= mu * scale {
                    tally.confirmed += 1;
                    tally.max_ratio = tally.max_ratio.max(d / scale);
                }
            }
            tally
        })
        .collect();

    let confirmed: u64 = tallies.iter().map(|t| t.confirmed).sum();
    let max_confirmed_ratio = tallies.iter().map(|t| t.max_ratio).fold(0.0, f64::max);
    Ok(LojaReport {
        samples: config.samples,
        confirmed,
        inconclusive: config.samples - confirmed,
        max_confirmed_ratio,
        mu_alpha: mu,
        alpha: cert.alpha.clone(),
        witness: cert.witness.clone(),
        active_levels: chain.active_levels().map(|l| l.level).collect(),
        assumptions: vec![
            "dim(Z(P) ∪ Z_alpha) = n - 1 is assumed, not verified".into(),
            "distances are upper bounds; unconfirmed samples are inconclusive, not violations".into(),
        ],
    })
}

pub const CHEBYSHEV_GRID: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChebyshevReport {
    pub degree: u32,
    pub trials: u64,
    pub seed: u64,
    /// Smallest observed `2^{2d−1} max_{[0,1]} |q|`.
    pub min_product: f64,
    /// Ascending coefficients of the minimizing monic polynomial.
    pub argmin_coefficients: Vec<f64>,
}

/// `2^{2d−1} · max |q(t)|` over an equispaced grid on `[0, 1]` including
/// both endpoints; `coeffs` ascending, monic of degree `coeffs.len() − 1`.
pub fn chebyshev_product(coeffs: &[f64], grid: usize) -> f64 {
    let d = coeffs.len() as i32 - 1;
    let mut max = 0f64;
    for i in 0..grid {
        let t = i as f64 / (grid - 1) as f64;
        let v = coeffs.iter().rev().fold(0.0, |acc, &a| acc * t + a);
        max = max.max(v.abs());
    }
    2f64.powi(2 * d - 1) * max
}

/// Minimum of [`chebyshev_product`] over random monic degree-`d` polynomials
/// with lower coefficients uniform in `[−10, 10]`.
pub fn chebyshev_floor_check(d: u32, trials: u64, seed: u64) -> Result<ChebyshevReport, LojaError> {
    if d < 1 {
        return Err(LojaError::InvalidConfig("degree must be at least 1".into()));
    }
    if trials == 0 {
        return Err(LojaError::InvalidConfig("trials must be positive".into()));
    }
    let d_us = d as usize;
    let stream = rng::stream_id(Purpose::Chebyshev, d_us, 0);
    let best: Vec<(f64, u64, Vec<f64>)> = rng::chunks(trials)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(start, end)| {
            let mut g = rng::stream_at(seed, stream, start, d_us);
            let mut best = (f64::INFINITY, u64::MAX, Vec::new());
            let mut c = vec![0.0; d_us + 1];
            for trial in start..end {
                rng::fill_box(&mut g, 10.0, &mut c[..d_us]);
                c[d_us] = 1.0;
                let v = chebyshev_product(&c, CHEBYSHEV_GRID);
                if v < best.0 {
                    best = (v, trial, c.clone());
                }
            }
            best
        })
        .collect();
    let (min_product, _, argmin_coefficients) = best
        .into_iter()
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
        .expect("at least one chunk");
    Ok(ChebyshevReport {
        degree: d,
        trials,
        seed,
        min_product,
        argmin_coefficients,
    })
}
