//! Newton polyhedron membership and the Newton distance.
//!
//! `N(P)` is the convex hull of `⋃_{α ∈ supp P} (α + R^n_+)`. A point `y` lies
//! in it iff some convex combination of support points is coordinatewise
//! `≤ y`, and the Newton distance is the least `t` with `(t, …, t) ∈ N(P)`.
//! Both questions are one small linear program, solved exactly.

pub mod simplex;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::poly::{f64_to_rational, rational_to_f64, ExponentVector, Polynomial, Rational};
use simplex::{LpOutcome, StandardLp};

/// Membership slack allowed for float query points, so that boundary points
/// rounded to `f64` still test as members.
pub const MEMBERSHIP_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NewtonError {
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("polynomial is constant: Newton distance is 0 (degenerate)")]
    ConstantPolynomial,
    #[error("point has length {found}, polynomial has dimension {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("point coordinates must be non-negative and finite")]
    NegativeCoordinate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NewtonDistanceResult {
    /// Exact optimum of the linear program.
    #[serde(serialize_with = "crate::report::serialize_rational")]
    pub exact: Rational,
    pub distance: f64,
    /// Barycentric weights on support points (only nonzero weights kept).
    pub certificate: Vec<(ExponentVector, f64)>,
    #[serde(skip)]
    pub exact_weights: Vec<(ExponentVector, Rational)>,
}

impl NewtonDistanceResult {
    /// The combination `Σ λ_α α` carried by the certificate.
    pub fn combination(&self, dimension: usize) -> Vec<Rational> {
        let mut y = vec![Rational::zero(); dimension];
        for (alpha, w) in &self.exact_weights {
            for (yi, &a) in y.iter_mut().zip(alpha.as_slice()) {
                *yi += w * Rational::from_integer(a.into());
            }
        }
        y
    }
}

/// Solves `min s` s.t. `Σ λ_α α_i − s ≤ point_i`, `Σ λ = 1`, `λ ≥ 0`, `s` free.
/// Returns the optimum and the weights.
fn min_excess(p: &Polynomial, point: &[Rational]) -> (Rational, Vec<(ExponentVector, Rational)>) {
    let support: Vec<&ExponentVector> = p.support().collect();
    let k = support.len();
    let n = p.dimension();
    // columns: λ_1..λ_k, s⁺, s⁻, slack_1..slack_n
    let cols = k + 2 + n;
    let mut a = Vec::with_capacity(n + 1);
    let mut b = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut row = vec![Rational::zero(); cols];
        for (j, alpha) in support.iter().enumerate() {
            row[j] = Rational::from_integer(alpha.get(i).into());
        }
        row[k] = -Rational::one();
        row[k + 1] = Rational::one();
        row[k + 2 + i] = Rational::one();
        a.push(row);
        b.push(point[i].clone());
    }
    let mut convex = vec![Rational::zero(); cols];
    for v in convex.iter_mut().take(k) {
        *v = Rational::one();
    }
    a.push(convex);
    b.push(Rational::one());
    let mut c = vec![Rational::zero(); cols];
    c[k] = Rational::one();
    c[k + 1] = -Rational::one();

    match simplex::solve(&StandardLp { a, b, c }) {
        LpOutcome::Optimal { x, value } => {
            let weights = support
                .iter()
                .zip(&x)
                .filter(|(_, w)| !w.is_zero())
                .map(|(alpha, w)| ((*alpha).clone(), w.clone()))
                .collect();
            (value, weights)
        }
        // s is bounded below by -max(point) and the program is always feasible
        other => unreachable!("Newton program cannot be {other:?}"),
    }
}

fn check_nonconstant(p: &Polynomial) -> Result<(), NewtonError> {
    if p.is_zero() {
        return Err(NewtonError::ZeroPolynomial);
    }
    if p.is_constant() {
        return Err(NewtonError::ConstantPolynomial);
    }
    Ok(())
}

/// Exact membership test for a rational point.
pub fn newton_membership_exact(p: &Polynomial, point: &[Rational]) -> Result<bool, NewtonError> {
    if p.is_zero() {
        return Err(NewtonError::ZeroPolynomial);
    }
    if point.len() != p.dimension() {
        return Err(NewtonError::LengthMismatch {
            expected: p.dimension(),
            found: point.len(),
        });
    }
    if point.iter().any(Signed::is_negative) {
        return Err(NewtonError::NegativeCoordinate);
    }
    let (excess, _) = min_excess(p, point);
    Ok(!excess.is_positive())
}

/// Membership of a float point, with [`MEMBERSHIP_TOLERANCE`] slack.
pub fn newton_membership(p: &Polynomial, point: &[f64]) -> Result<bool, NewtonError> {
    if p.is_zero() {
        return Err(NewtonError::ZeroPolynomial);
    }
    if point.len() != p.dimension() {
        return Err(NewtonError::LengthMismatch {
            expected: p.dimension(),
            found: point.len(),
        });
    }
    if point.iter().any(|&v| !(v.is_finite() && v >= 0.0)) {
        return Err(NewtonError::NegativeCoordinate);
    }
    let exact: Vec<Rational> = point.iter().map(|&v| f64_to_rational(v)).collect();
    let (excess, _) = min_excess(p, &exact);
    Ok(rational_to_f64(&excess) <= MEMBERSHIP_TOLERANCE)
}

/// `ND(P)`: the least `t` with `(t, …, t) ∈ N(P)`, with its certificate.
pub fn newton_distance(p: &Polynomial) -> Result<NewtonDistanceResult, NewtonError> {
    check_nonconstant(p)?;
    let origin = vec![Rational::zero(); p.dimension()];
    let (value, weights) = min_excess(p, &origin);
    Ok(NewtonDistanceResult {
        distance: rational_to_f64(&value),
        certificate: weights.iter().map(|(a, w)| (a.clone(), rational_to_f64(w))).collect(),
        exact: value,
        exact_weights: weights,
    })
}
