//! Grid check of the doubling inequality
//! `‖P‖_Ω ≤ (4n vol(Ω)/vol(ω))^d ‖P‖_ω` for a box `Ω` and a sub-box `ω`.

use serde::Serialize;

use super::LabError;
use crate::poly::{FloatPoly, Polynomial};

/// Grid points per set.
pub const REMEZ_GRID_POINTS: usize = 100_000;
/// Relative allowance for the grid underestimating a sup norm.
pub const REMEZ_ALLOWANCE: f64 = 0.01;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RemezReport {
    pub r: f64,
    pub omega_fraction: f64,
    /// `ω` is the centered cube of this half-width.
    pub omega_half_width: f64,
    pub degree: u32,
    pub grid_points_per_set: usize,
    pub lhs: f64,
    pub small_norm: f64,
    pub factor: f64,
    pub rhs: f64,
    pub satisfied: bool,
}

fn sup_on_cube(fp: &FloatPoly, half: f64, per_axis: usize) -> f64 {
    let n = fp.dimension();
    let mut idx = vec![0usize; n];
    let mut x = vec![0.0; n];
    let mut sup = 0f64;
    let node = |i: usize| {
        if per_axis == 1 {
            0.0
        } else {
            -half + 2.0 * half * i as f64 / (per_axis - 1) as f64
        }
    };
    loop {
        for (xi, &i) in x.iter_mut().zip(&idx) {
            *xi = node(i);
        }
        sup = sup.max(fp.eval(&x).abs());
        let mut k = 0;
        loop {
            if k == n {
                return sup;
            }
            idx[k] += 1;
            if idx[k] < per_axis {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Sup norms over `Ω = [−r, r]^n` and the centered cube `ω` with
/// `vol(ω) = omega_fraction · vol(Ω)`, each on a grid of about
/// [`REMEZ_GRID_POINTS`] points including the faces.
pub fn remez_check(p: &Polynomial, r: f64, omega_fraction: f64) -> Result<RemezReport, LabError> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(LabError::InvalidConfig("r must be positive".into()));
    }
    if !(omega_fraction > 0.0 && omega_fraction < 1.0) {
        return Err(LabError::InvalidConfig("omega fraction must lie in (0, 1)".into()));
    }
    let n = p.dimension().max(1);
    let fp = p.to_float();
    let per_axis = ((REMEZ_GRID_POINTS as f64).powf(1.0 / n as f64).ceil() as usize).max(2);
    let half = r * omega_fraction.powf(1.0 / n as f64);
    let degree = p.degree().unwrap_or(0);

    let (lhs, small_norm) = if p.dimension() == 0 {
        let v = p.constant_term();
        let v = crate::poly::rational_to_f64(&v).abs();
        (v, v)
    } else {
        (sup_on_cube(&fp, r, per_axis), sup_on_cube(&fp, half, per_axis))
    };
    let factor = (4.0 * n as f64 / omega_fraction).powi(degree as i32);
    let rhs = factor * small_norm;
    Ok(RemezReport {
        r,
        omega_fraction,
        omega_half_width: half,
        degree,
        grid_points_per_set: per_axis.pow(n as u32),
        lhs,
        small_norm,
        factor,
        rhs,
        satisfied: lhs <= rhs * (1.0 + REMEZ_ALLOWANCE),
    })
}
