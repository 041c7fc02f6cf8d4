//! Real roots of univariate polynomials.
//!
//! Exact inputs are first made square-free (`q / gcd(q, q')` over the
//! rationals); isolation then runs in floating point by recursing on the
//! derivative, so that `q` is monotone between consecutive critical points
//! and each sign change there brackets exactly one root.

use num_traits::Zero;

use crate::poly::{rational_to_f64, Polynomial, Rational};

/// Default bisection tolerance.
pub const ROOT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("polynomial must be univariate, got dimension {0}")]
    NotUnivariate(usize),
    #[error("invalid interval or tolerance")]
    InvalidInterval,
}

/// Dense ascending coefficients of a univariate polynomial.
fn dense(p: &Polynomial) -> Vec<Rational> {
    let deg = p.degree().unwrap_or(0) as usize;
    let mut out = vec![Rational::zero(); deg + 1];
    for (e, c) in p.terms() {
        out[e.get(0) as usize] = c.clone();
    }
    out
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn derivative(v: &[Rational]) -> Vec<Rational> {
    if v.len() <= 1 {
        return vec![Rational::zero()];
    }
    v.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * Rational::from_integer(k.into()))
        .collect()
}

/// Quotient and remainder of `a / b`, `b` nonzero.
fn div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trim(a.to_vec());
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (vec![Rational::zero()], rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    while rem.len() > db && !is_zero_poly(&rem) {
        let shift = rem.len() - 1 - db;
        let factor = rem.last().expect("nonempty") / &lead;
        for (k, bk) in b.iter().enumerate() {
            rem[shift + k] -= &factor * bk;
        }
        quot[shift] = factor;
        rem.pop();
        rem = trim(rem);
    }
    (trim(quot), rem)
}

fn is_zero_poly(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !is_zero_poly(&b) {
        let (_, r) = div_rem(&a, &b);
        a = b;
        b = r;
    }
    let lead = a.last().expect("nonempty").clone();
    a.iter().map(|c| c / &lead).collect()
}

/// `q / gcd(q, q')`, monic up to sign.
pub fn square_free_part(p: &Polynomial) -> Result<Vec<Rational>, RootError> {
    if p.dimension() != 1 {
        return Err(RootError::NotUnivariate(p.dimension()));
    }
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let q = dense(p);
    let g = gcd(&q, &derivative(&q));
    if g.len() == 1 {
        return Ok(q);
    }
    Ok(div_rem(&q, &g).0)
}

/// Sorted real roots of the exact univariate `p` in `[lo, hi]`.
pub fn univariate_real_roots(p: &Polynomial, lo: f64, hi: f64, tol: f64) -> Result<Vec<f64>, RootError> {
    if !(lo < hi) || !(tol > 0.0) {
        return Err(RootError::InvalidInterval);
    }
    let sf = square_free_part(p)?;
    let coeffs: Vec<f64> = sf.iter().map(rational_to_f64).collect();
    Ok(real_roots(&coeffs, lo, hi, tol))
}

fn horner(c: &[f64], t: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * t + a)
}

/// `Σ |c_k| |t|^k`, the scale against which a value is judged to be zero.
fn magnitude(c: &[f64], t: f64) -> f64 {
    let at = t.abs();
    c.iter().rev().fold(0.0, |acc, &a| acc * at + a.abs())
}

/// Cauchy bound: every root has modulus below this.
fn cauchy_bound(c: &[f64]) -> f64 {
    let lead = c[c.len() - 1].abs();
    1.0 + c[..c.len() - 1].iter().map(|a| a.abs() / lead).fold(0.0, f64::max)
}

/// Sorted real roots in `[lo, hi]` of the float polynomial with ascending
/// coefficients `c`. Roots of even multiplicity are reported when the
/// polynomial touches zero to within rounding at a critical point.
pub fn real_roots(c: &[f64], lo: f64, hi: f64, tol: f64) -> Vec<f64> {
    let mut len = c.len();
    while len > 0 && c[len - 1] == 0.0 {
        len -= 1;
    }
    let c = &c[..len];
    if c.len() <= 1 {
        return Vec::new();
    }
    let b = cauchy_bound(c);
    let (lo, hi) = (lo.max(-b), hi.min(b));
    if lo > hi {
        return Vec::new();
    }
    let mut roots = Vec::new();
    isolate(c, lo, hi, tol, &mut roots);
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() <= tol);
    roots
}

fn isolate(c: &[f64], lo: f64, hi: f64, tol: f64, out: &mut Vec<f64>) {
    if c.len() == 2 {
        let t = -c[0] / c[1];
        if (lo..=hi).contains(&t) {
            out.push(t);
        }
        return;
    }
    let dc: Vec<f64> = c.iter().enumerate().skip(1).map(|(k, a)| a * k as f64).collect();
    let mut crit = Vec::new();
    isolate(&dc, lo, hi, tol, &mut crit);
    crit.sort_by(f64::total_cmp);

    let mut breaks = Vec::with_capacity(crit.len() + 2);
    breaks.push(lo);
    breaks.extend(crit.iter().copied().filter(|&t| t > lo && t < hi));
    breaks.push(hi);

    let near_zero = |t: f64| horner(c, t).abs() <= 64.0 * f64::EPSILON * magnitude(c, t);
    for &t in &breaks {
        if near_zero(t) {
            out.push(t);
        }
    }
    for w in breaks.windows(2) {
        let (mut a, mut b) = (w[0], w[1]);
        let (mut fa, fb) = (horner(c, a), horner(c, b));
        if fa == 0.0 || fb == 0.0 || fa.signum() == fb.signum() || near_zero(a) || near_zero(b) {
            continue;
        }
        while b - a > tol {
            let m = 0.5 * (a + b);
            let fm = horner(c, m);
            if fm == 0.0 {
                a = m;
                b = m;
                break;
            }
            if fm.signum() == fa.signum() {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        out.push(0.5 * (a + b));
    }
}

/// Nearest root of `c` to `t0` within `[t0 − reach, t0 + reach]`.
pub fn nearest_root(c: &[f64], t0: f64, reach: f64, tol: f64) -> Option<f64> {
    real_roots(c, t0 - reach, t0 + reach, tol)
        .into_iter()
        .min_by(|a, b| (a - t0).abs().total_cmp(&(b - t0).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn roots(text: &str, lo: f64, hi: f64) -> Vec<f64> {
        univariate_real_roots(&parse_polynomial(text, 1).unwrap(), lo, hi, ROOT_TOLERANCE).unwrap()
    }

    #[test]
    fn spec_fixtures() {
        let r = roots("x1^2 - 1", -2.0, 2.0);
        assert_eq!(r.len(), 2);
        assert!((r[0] + 1.0).abs() < 1e-9 && (r[1] - 1.0).abs() < 1e-9);

        let r = roots("x1^3 - 2*x1", -2.0, 2.0);
        let s = 2f64.sqrt();
        assert_eq!(r.len(), 3);
        for (got, want) in r.iter().zip([-s, 0.0, s]) {
            assert!((got - want).abs() < 1e-9, "{got} vs {want}");
        }

        assert!(roots("x1^2 + 1", -10.0, 10.0).is_empty());
    }

    #[test]
    fn multiple_roots_collapse() {
        // (t − 1)^3 (t + 2)^2
        let q = &parse_polynomial("x1 - 1", 1).unwrap().pow(3) * &parse_polynomial("x1 + 2", 1).unwrap().pow(2);
        let r = univariate_real_roots(&q, -5.0, 5.0, ROOT_TOLERANCE).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0] + 2.0).abs() < 1e-9 && (r[1] - 1.0).abs() < 1e-9);
        assert_eq!(square_free_part(&q).unwrap().len(), 3);
    }

    #[test]
    fn float_path_finds_double_root() {
        // t^2 − 2t + 1
        let r = real_roots(&[1.0, -2.0, 1.0], -3.0, 3.0, 1e-10);
        assert_eq!(r.len(), 1);
        assert!((r[0] - 1.0).abs() < 1e-7);
    }

    #[test]
    fn errors() {
        let p = parse_polynomial("x1", 1).unwrap();
        assert_eq!(
            univariate_real_roots(&p, 1.0, 0.0, 1e-10),
            Err(RootError::InvalidInterval)
        );
        assert_eq!(
            univariate_real_roots(&Polynomial::zero(1), 0.0, 1.0, 1e-10),
            Err(RootError::ZeroPolynomial)
        );
    }

    #[test]
    fn nearest() {
        let r = nearest_root(&[-1.0, 0.0, 1.0], 0.8, 4.0, 1e-12).unwrap();
        assert!((r - 1.0).abs() < 1e-10);
        assert!(nearest_root(&[1.0, 0.0, 1.0], 0.0, 4.0, 1e-12).is_none());
    }
}
