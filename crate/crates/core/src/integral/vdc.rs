//! Van der Corput check: if `|f^{(k)}| ≥ γ` on `[a, b]` then
//! `|∫_a^b e^{if}| γ^{1/k}` stays bounded as `γ` grows.

use serde::Serialize;

use super::quadrature::{oscillatory_integral_on_box, QuadratureConfig};
use super::{envelope_fit, EnvelopeFit, IntegralError};
use crate::lojacheck::real_roots;
use crate::poly::{f64_to_rational, ExponentVector, Polynomial};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VdcDiagnostic {
    pub gamma: f64,
    pub magnitude: f64,
    /// `|∫ e^{if}| · γ^{1/k}`.
    pub product: f64,
    pub converged: bool,
}

fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(k, a)| a * k as f64).collect()
}

fn horner(c: &[f64], t: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * t + a)
}

/// Checks `|f^{(k)}| ≥ γ` on `[a, b]`: `f^{(k)} ∓ γ` has no root inside and
/// the bound holds at the midpoint.
fn derivative_floor_holds(f: &[f64], k: u32, gamma: f64, a: f64, b: f64) -> bool {
    let mut d = f.to_vec();
    for _ in 0..k {
        d = derivative(&d);
    }
    if d.is_empty() {
        return false;
    }
    let slack = 1e-12 * gamma.abs().max(1.0);
    if horner(&d, 0.5 * (a + b)).abs() < gamma - slack {
        return false;
    }
    let interior = |c: &[f64]| {
        real_roots(c, a, b, 1e-12)
            .into_iter()
            .any(|t| t > a + 1e-9 * (b - a) && t < b - 1e-9 * (b - a))
    };
    let mut lower = d.clone();
    lower[0] -= gamma;
    let mut upper = d;
    upper[0] += gamma;
    // a derivative equal to ±γ identically has no isolated roots
    !(interior(&lower) || interior(&upper))
}

fn univariate(coeffs: &[f64]) -> Polynomial {
    let terms = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0.0)
        .map(|(k, &c)| (ExponentVector::new(vec![k as u32]), f64_to_rational(c)));
    Polynomial::from_terms(1, terms).expect("dimension 1")
}

/// `f` given by ascending coefficients on `[a, b]`.
pub fn vdc_diagnostic(
    coeffs: &[f64],
    k: u32,
    gamma: f64,
    interval: (f64, f64),
    config: &QuadratureConfig,
) -> Result<VdcDiagnostic, IntegralError> {
    let (a, b) = interval;
    if !(a < b) || k == 0 || !(gamma > 0.0) {
        return Err(IntegralError::InvalidConfig("need a < b, k ≥ 1 and gamma > 0".into()));
    }
    if !derivative_floor_holds(coeffs, k, gamma, a, b) {
        return Err(IntegralError::Precondition(format!(
            "|f^({k})| drops below {gamma} on [{a}, {b}]"
        )));
    }
    let v = oscillatory_integral_on_box(&univariate(coeffs), 1.0, &[(a, b)], config);
    Ok(VdcDiagnostic {
        gamma,
        magnitude: v.magnitude,
        product: v.magnitude * gamma.powf(1.0 / k as f64),
        converged: v.converged,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VdcSweep {
    pub k: u32,
    pub interval: (f64, f64),
    pub points: Vec<VdcDiagnostic>,
    /// Windowed-max envelope of the product against `γ`.
    pub envelope: Option<EnvelopeFit>,
    pub bounded: bool,
}

/// Runs [`vdc_diagnostic`] on `f = λ g` with `γ = λ γ₀` for each `λ`.
pub fn vdc_sweep(
    g: &[f64],
    k: u32,
    gamma0: f64,
    interval: (f64, f64),
    lambdas: &[f64],
    config: &QuadratureConfig,
) -> Result<VdcSweep, IntegralError> {
    let points = lambdas
        .iter()
        .map(|&l| {
            let f: Vec<f64> = g.iter().map(|c| c * l).collect();
            vdc_diagnostic(&f, k, l * gamma0, interval, config)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let samples: Vec<(f64, Option<f64>)> = points
        .iter()
        .map(|p| (p.gamma, p.converged.then_some(p.product)))
        .collect();
    let envelope = envelope_fit(&samples, super::ENVELOPE_WINDOWS);
    let bounded = envelope.as_ref().is_some_and(|e| e.fit.exponent.abs() <= 0.1);
    Ok(VdcSweep {
        k,
        interval,
        points,
        envelope,
        bounded,
    })
}
