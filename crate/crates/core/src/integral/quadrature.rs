//! Tensor-product Gauss-Legendre panel quadrature of `∫_B e^{iλP}` over a
//! box `B`, refined by doubling the panel count on every axis.

use std::sync::OnceLock;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::poly::{FloatPoly, Polynomial};

/// Nodes per panel.
pub const PANEL_ORDER: usize = 10;
/// Default cap on total nodes in one tensor evaluation.
pub const DEFAULT_WORK_CAP: u64 = 1 << 24;

fn rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let mut pairs = GaussLegendre::new(PANEL_ORDER)
            .expect("order at least 2")
            .as_node_weight_pairs()
            .to_vec();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        pairs
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadratureConfig {
    pub target_rel_err: f64,
    pub work_cap: u64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            target_rel_err: 1e-6,
            work_cap: DEFAULT_WORK_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OscillatoryValue {
    pub re: f64,
    pub im: f64,
    pub magnitude: f64,
    pub converged: bool,
    /// Panels per axis in the last evaluation.
    pub panels: Vec<u64>,
    pub nodes: u64,
}

impl OscillatoryValue {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// Nodes and weights along one axis.
fn axis_rule(lo: f64, hi: f64, panels: u64) -> (Vec<f64>, Vec<f64>) {
    let h = (hi - lo) / panels as f64;
    let mut nodes = Vec::with_capacity(panels as usize * PANEL_ORDER);
    let mut weights = Vec::with_capacity(nodes.capacity());
    for k in 0..panels {
        let a = lo + k as f64 * h;
        for &(t, w) in rule() {
            nodes.push(a + 0.5 * h * (t + 1.0));
            weights.push(0.5 * h * w);
        }
    }
    (nodes, weights)
}

/// One tensor evaluation. The first axis is the inner loop, evaluated by
/// Horner on the restriction of `P` to the line through the outer node.
fn tensor_sum(fp: &FloatPoly, lambda: f64, bounds: &[(f64, f64)], panels: &[u64]) -> Complex64 {
    let n = bounds.len();
    let rules: Vec<(Vec<f64>, Vec<f64>)> = bounds
        .iter()
        .zip(panels)
        .map(|(&(lo, hi), &m)| axis_rule(lo, hi, m))
        .collect();
    let (inner_nodes, inner_weights) = &rules[0];
    let outer_sizes: Vec<usize> = rules[1..].iter().map(|r| r.0.len()).collect();
    let outer_total: usize = outer_sizes.iter().product();

    let row = |index: usize| -> Complex64 {
        let mut x = vec![0.0; n];
        let mut w_outer = 1.0;
        let mut rest = index;
        for (k, size) in outer_sizes.iter().enumerate() {
            let i = rest % size;
            rest /= size;
            x[k + 1] = rules[k + 1].0[i];
            w_outer *= rules[k + 1].1[i];
        }
        let coeffs = fp.restrict_to_axis(0, &x);
        let mut acc = Complex64::new(0.0, 0.0);
        for (&t, &w) in inner_nodes.iter().zip(inner_weights) {
            let v = coeffs.iter().rev().fold(0.0, |a, &c| a * t + c);
            let (s, c) = (lambda * v).sin_cos();
            acc += Complex64::new(w * c, w * s);
        }
        acc * w_outer
    };
    let rows: Vec<Complex64> = (0..outer_total).into_par_iter().map(row).collect();
    rows.into_iter().fold(Complex64::new(0.0, 0.0), |a, b| a + b)
}

/// `∫_{Π[lo_j, hi_j]} e^{iλP(x)} dx`.
///
/// Starts from `1 + |λ| · width_j · G_j / (4π)` panels on axis `j`, where
/// `G_j` bounds `|∂P/∂x_j|` on the box, and doubles until two successive
/// values agree to `target_rel_err` or the node count would pass the cap.
pub fn oscillatory_integral_on_box(
    p: &Polynomial,
    lambda: f64,
    bounds: &[(f64, f64)],
    config: &QuadratureConfig,
) -> OscillatoryValue {
    let n = p.dimension();
    assert_eq!(bounds.len(), n, "one interval per variable");
    let volume: f64 = bounds.iter().map(|(a, b)| b - a).product();
    if p.is_constant() || lambda == 0.0 || n == 0 {
        let c = crate::poly::rational_to_f64(&p.constant_term());
        let v = Complex64::from_polar(volume, lambda * c);
        return OscillatoryValue {
            re: v.re,
            im: v.im,
            magnitude: v.norm(),
            converged: true,
            panels: vec![1; n],
            nodes: 0,
        };
    }
    let fp = p.to_float();
    let radius = bounds.iter().fold(0f64, |m, (a, b)| m.max(a.abs()).max(b.abs()));
    let mut panels: Vec<u64> = bounds
        .iter()
        .enumerate()
        .map(|(j, (a, b))| {
            let g = fp.derivative_bound_on_box(j, radius);
            (1.0 + lambda.abs() * (b - a) * g / (4.0 * std::f64::consts::PI)).ceil() as u64
        })
        .collect();
    let nodes_for = |panels: &[u64]| -> u64 {
        panels
            .iter()
            .map(|&m| m.saturating_mul(PANEL_ORDER as u64))
            .fold(1u64, |a, b| a.saturating_mul(b))
    };

    let mut previous: Option<Complex64> = None;
    let mut last = Complex64::new(0.0, 0.0);
    let mut last_nodes = 0;
    let mut last_panels = panels.clone();
    loop {
        let nodes = nodes_for(&panels);
        if nodes > config.work_cap {
            break;
        }
        let value = tensor_sum(&fp, lambda, bounds, &panels);
        last = value;
        last_nodes = nodes;
        last_panels = panels.clone();
        if let Some(prev) = previous {
            let scale = value.norm().max(1e-12 * volume);
            if (value - prev).norm() <= config.target_rel_err * scale {
                return OscillatoryValue {
                    re: value.re,
                    im: value.im,
                    magnitude: value.norm(),
                    converged: true,
                    panels,
                    nodes,
                };
            }
        }
        previous = Some(value);
        panels.iter_mut().for_each(|m| *m *= 2);
    }
    OscillatoryValue {
        re: last.re,
        im: last.im,
        magnitude: last.norm(),
        converged: false,
        panels: last_panels,
        nodes: last_nodes,
    }
}

/// `I_r(λ) = ∫_{(−r, r)^n} e^{iλP}`.
pub fn oscillatory_integral(p: &Polynomial, lambda: f64, r: f64, config: &QuadratureConfig) -> OscillatoryValue {
    let bounds = vec![(-r, r); p.dimension()];
    oscillatory_integral_on_box(p, lambda, &bounds, config)
}
