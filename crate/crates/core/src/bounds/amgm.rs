//! Closed-form minimum of
//! `f(x) = a_1/x_1 + a_2 x_1/x_2 + ⋯ + a_n x_1⋯x_{n−1}/x_n + x_n^{1/l}`
//! on the positive orthant.
//!
//! Split `f` into `N = 2^{n−1} + l` terms: `l` copies of `x_n^{1/l}/l`, the
//! `a_n` term once, and `2^{n−j−1}` copies of the `j`-th term divided by
//! `2^{n−j−1}`. The `x` factors cancel in the product of all `N` terms, so
//! AM-GM gives `f ≥ C(n, l) φ(a)^{1/N}` with equality when all terms agree.

use serde::Serialize;

use super::BoundsError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AmgmResult {
    pub min_value: f64,
    pub argmin: Vec<f64>,
    /// `C(n, l)`.
    pub cnl: f64,
    /// `φ(a) = a_1^{2^{n−2}} a_2^{2^{n−3}} ⋯ a_{n−1} a_n`.
    pub phi: f64,
}

/// Multiplicity of the `j`-th term (1-based, `j < n`) in the split.
fn copies(n: usize, j: usize) -> f64 {
    2f64.powi((n - j - 1) as i32)
}

/// Number of AM-GM terms `N = 2^{n−1} + l`.
pub fn term_count(n: usize, l: u32) -> f64 {
    2f64.powi(n as i32 - 1) + l as f64
}

/// `C(n, l) = N · (l^l · Π_{j<n} (2^{n−j−1})^{2^{n−j−1}})^{−1/N}`.
pub fn amgm_constant(n: usize, l: u32) -> f64 {
    let big_n = term_count(n, l);
    let mut log_den = l as f64 * (l as f64).ln();
    for j in 1..n {
        let m = copies(n, j);
        log_den += m * m.ln();
    }
    big_n * (-log_den / big_n).exp()
}

/// `ln φ(a)`.
pub fn log_phi(a: &[f64]) -> f64 {
    let n = a.len();
    let mut acc = a[n - 1].ln();
    for j in 1..n {
        acc += copies(n, j) * a[j - 1].ln();
    }
    acc
}

/// Evaluates `f` directly.
pub fn amgm_objective(a: &[f64], l: u32, x: &[f64]) -> f64 {
    let mut prefix = 1.0;
    let mut acc = 0.0;
    for (ai, xi) in a.iter().zip(x) {
        acc += ai * prefix / xi;
        prefix *= xi;
    }
    acc + x[x.len() - 1].powf(1.0 / l as f64)
}

pub fn amgm_minimize(a: &[f64], l: u32) -> Result<AmgmResult, BoundsError> {
    let n = a.len();
    if n < 2 {
        return Err(BoundsError::InvalidInput(format!(
            "need at least two coefficients, got {n}"
        )));
    }
    if l < 1 {
        return Err(BoundsError::InvalidInput("l must be at least 1".into()));
    }
    if a.iter().any(|&v| !(v.is_finite() && v > 0.0)) {
        return Err(BoundsError::InvalidInput(
            "coefficients must be positive and finite".into(),
        ));
    }
    let big_n = term_count(n, l);
    let cnl = amgm_constant(n, l);
    let lphi = log_phi(a);
    let min_value = cnl * (lphi / big_n).exp();

    // Every split term equals v at the minimizer.
    let v = min_value / big_n;
    let mut argmin = Vec::with_capacity(n);
    let mut prefix = 1.0;
    for j in 1..n {
        // (a_j / m_j) · prefix / x_j = v
        let xj = a[j - 1] * prefix / (copies(n, j) * v);
        argmin.push(xj);
        prefix *= xj;
    }
    // x_n^{1/l} / l = v
    argmin.push((l as f64 * v).powi(l as i32));

    Ok(AmgmResult {
        min_value,
        argmin,
        cnl,
        phi: lphi.exp(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_two_variable_case() {
        let r = amgm_minimize(&[1.0, 1.0], 1).unwrap();
        assert!((r.min_value - 3.0).abs() < 1e-12);
        assert!((r.cnl - 3.0).abs() < 1e-12);
        assert!((r.argmin[0] - 1.0).abs() < 1e-12);
        assert!((r.argmin[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn scaled_first_coefficient() {
        let r = amgm_minimize(&[8.0, 1.0], 1).unwrap();
        assert!((r.min_value - 6.0).abs() < 1e-12);
        assert!((amgm_objective(&[8.0, 1.0], 1, &r.argmin) - 6.0).abs() < 1e-12);
    }

    #[test]
    fn last_coordinate_formula() {
        // x_n^0 = (C l / N)^l φ^{l/N}
        for (a, l) in [
            (vec![1.0, 1.0], 1),
            (vec![2.0, 0.5, 3.0], 2),
            (vec![0.3, 4.0, 1.5, 2.0], 3),
        ] {
            let r = amgm_minimize(&a, l).unwrap();
            let big_n = term_count(a.len(), l);
            let expected = (r.cnl * l as f64 / big_n).powi(l as i32) * r.phi.powf(l as f64 / big_n);
            let last = *r.argmin.last().unwrap();
            assert!((last - expected).abs() <= 1e-12 * expected, "{last} vs {expected}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(amgm_minimize(&[1.0], 1).is_err());
        assert!(amgm_minimize(&[1.0, 0.0], 1).is_err());
        assert!(amgm_minimize(&[1.0, 1.0], 0).is_err());
    }
}
