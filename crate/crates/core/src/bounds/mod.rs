//! Predicted bound shapes: exponents in `δ`, `r` and `λ`, the explicit
//! coefficient factors, and the region where each bound applies.
//!
//! Absolute constants in these bounds are not explicit; every prediction is
//! marked `constant_fitted` and the labs estimate the constant from data.

pub mod amgm;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::admissibility::{admissible_degree, is_admissible, AdmissibilityError, AdmissibleCertificate};
use crate::newton::{newton_distance, NewtonError};
use crate::poly::{rational_to_f64, ExponentVector, PolyError, Polynomial, Rational};
use crate::report::{serialize_opt_rational, serialize_rational};

pub use amgm::{amgm_minimize, amgm_objective, AmgmResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Admissibility(#[from] AdmissibilityError),
    #[error(transparent)]
    Newton(#[from] NewtonError),
    #[error("certificate does not witness an admissible monomial of the polynomial")]
    InvalidCertificate,
    #[error("chain member P_{m} has degree {degree:?}; at least 1 is required", m = .l + 1)]
    DegenerateChain { l: usize, degree: Option<u32> },
    #[error("{0} is not an admissible index of the chain member")]
    NotAdmissibleForChain(ExponentVector),
    #[error("polynomial does not vanish at the origin")]
    NonzeroAtOrigin,
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Volume,
    Integrability,
    Oscillatory,
}

/// One summand `coefficient · δ^{delta_exponent} · r^{r_exponent}` of a bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShapeTerm {
    pub coefficient: f64,
    #[serde(serialize_with = "serialize_rational")]
    pub delta_exponent: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub r_exponent: Rational,
}

impl ShapeTerm {
    fn eval(&self, delta: f64, r: f64) -> f64 {
        self.coefficient * delta.powf(rational_to_f64(&self.delta_exponent)) * r.powf(rational_to_f64(&self.r_exponent))
    }
}

/// Region of `(δ, r)` or `(λ, r)` where a bound is claimed.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ValidityConstraint {
    /// All `δ > 0`, `r > 0`.
    Everywhere,
    /// `r > m · δ^{delta_power}`; `m` is an unknown constant, fitted or
    /// defaulted.
    RAbovePowerOfDelta {
        m: f64,
        #[serde(serialize_with = "serialize_rational")]
        delta_power: Rational,
    },
    /// `|λ| > 1` and `r > 1`.
    LambdaAndRAboveOne,
}

impl ValidityConstraint {
    pub fn holds(&self, delta_or_lambda: f64, r: f64) -> bool {
        match self {
            ValidityConstraint::Everywhere => delta_or_lambda > 0.0 && r > 0.0,
            ValidityConstraint::RAbovePowerOfDelta { m, delta_power } => {
                delta_or_lambda > 0.0 && r > m * delta_or_lambda.powf(rational_to_f64(delta_power))
            }
            ValidityConstraint::LambdaAndRAboveOne => delta_or_lambda.abs() > 1.0 && r > 1.0,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            ValidityConstraint::Everywhere => "delta > 0, r > 0".into(),
            ValidityConstraint::RAbovePowerOfDelta { m, delta_power } => {
                format!("r > {m} * delta^({delta_power})")
            }
            ValidityConstraint::LambdaAndRAboveOne => "|lambda| > 1, r > 1".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundPrediction {
    pub kind: BoundKind,
    /// Leading `δ` exponent (0 for oscillatory bounds).
    #[serde(serialize_with = "serialize_rational")]
    pub delta_exponent: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub r_exponent: Rational,
    #[serde(serialize_with = "serialize_opt_rational")]
    pub lambda_exponent: Option<Rational>,
    /// Summands of the bound with the unknown constant set to 1.
    pub terms: Vec<ShapeTerm>,
    pub known_factor: f64,
    pub constant_fitted: bool,
    pub constraint: ValidityConstraint,
    pub constraint_text: String,
    pub source: String,
    /// Exponent the prediction was derived from.
    pub alpha: Option<ExponentVector>,
    /// Jacobian chain length, for chain-based predictions.
    pub chain_length: Option<usize>,
}

impl BoundPrediction {
    /// Bound value with the unknown constant set to 1. For oscillatory
    /// predictions the first argument is `λ`.
    pub fn shape(&self, delta_or_lambda: f64, r: f64) -> f64 {
        match self.kind {
            BoundKind::Oscillatory => {
                let le = self.lambda_exponent.as_ref().map_or(0.0, rational_to_f64);
                self.known_factor * delta_or_lambda.abs().powf(le) * r.powf(rational_to_f64(&self.r_exponent))
            }
            _ => self.terms.iter().map(|t| t.eval(delta_or_lambda, r)).sum(),
        }
    }
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn int(n: u64) -> Rational {
    Rational::from_integer(n.into())
}

/// `μ(α) = 4 / |a_α|^{1/|α|}`.
pub fn mu_alpha(p: &Polynomial, alpha: &ExponentVector) -> f64 {
    let a = p.coefficient(alpha).map_or(0.0, |c| rational_to_f64(&c.abs()));
    4.0 / a.powf(1.0 / alpha.total_degree() as f64)
}

/// Volume bound from one admissible index:
/// `C [d μ(α) δ^{1/|α|} r^{n−1} + (d μ(α) δ^{1/|α|})^n]`.
pub fn admissible_volume_bound(p: &Polynomial, cert: &AdmissibleCertificate) -> Result<BoundPrediction, BoundsError> {
    if !cert.verify(p) {
        return Err(BoundsError::InvalidCertificate);
    }
    let n = p.dimension() as u64;
    let k = cert.total_degree() as i64;
    let d = p.degree().unwrap_or(0) as f64;
    let mu = mu_alpha(p, &cert.alpha);
    let scale = d * mu;
    Ok(BoundPrediction {
        kind: BoundKind::Volume,
        delta_exponent: rat(1, k),
        r_exponent: int(n - 1),
        lambda_exponent: None,
        terms: vec![
            ShapeTerm {
                coefficient: scale,
                delta_exponent: rat(1, k),
                r_exponent: int(n - 1),
            },
            ShapeTerm {
                coefficient: scale.powi(n as i32),
                delta_exponent: rat(n as i64, k),
                r_exponent: Rational::zero(),
            },
        ],
        known_factor: mu,
        constant_fitted: true,
        constraint: ValidityConstraint::Everywhere,
        constraint_text: ValidityConstraint::Everywhere.describe(),
        source: "admissible-volume".into(),
        alpha: Some(cert.alpha.clone()),
        chain_length: None,
    })
}

/// `θ = (1 − 2^{l−1}) / (2^{l−1} + |α|)` and `τ = 2^{l−1} / (2^{l−1} + |α|)`.
pub fn chain_exponents(l: usize, alpha_degree: u32) -> (Rational, Rational) {
    let two = int(1u64 << (l - 1));
    let den = &two + int(alpha_degree.into());
    ((Rational::one() - &two) / &den, two / den)
}

/// Volume bound `C r^{n−1+θ} δ^τ` from the Jacobian chain, valid for
/// `r > M δ^{|α|/(|α|+1)}`.
///
/// `alpha_choice` defaults to the admissible-degree minimizer of `P_{l+1}`,
/// which maximizes `τ`.
pub fn chain_volume_bound(
    p: &Polynomial,
    l: usize,
    alpha_choice: Option<&ExponentVector>,
) -> Result<BoundPrediction, BoundsError> {
    let chain = p.jacobian_chain(l)?;
    let last = &chain[l];
    let degree = last.degree();
    if degree.is_none_or(|d| d < 1) {
        return Err(BoundsError::DegenerateChain { l, degree });
    }
    let cert = match alpha_choice {
        Some(alpha) => match is_admissible(last, alpha) {
            Ok(Some(c)) => c,
            Ok(None) | Err(AdmissibilityError::NotInSupport(_)) => {
                return Err(BoundsError::NotAdmissibleForChain(alpha.clone()))
            }
            Err(e) => return Err(e.into()),
        },
        None => admissible_degree(last)?.argmin,
    };
    let k = cert.total_degree();
    let (theta, tau) = chain_exponents(l, k);
    let n = p.dimension() as u64;
    let r_exponent = int(n - 1) + &theta;
    let constraint = ValidityConstraint::RAbovePowerOfDelta {
        m: 1.0,
        delta_power: rat(k as i64, k as i64 + 1),
    };
    Ok(BoundPrediction {
        kind: BoundKind::Volume,
        delta_exponent: tau.clone(),
        r_exponent: r_exponent.clone(),
        lambda_exponent: None,
        terms: vec![ShapeTerm {
            coefficient: 1.0,
            delta_exponent: tau,
            r_exponent,
        }],
        known_factor: 1.0,
        constant_fitted: true,
        constraint_text: format!("{} (M fitted; default 1)", constraint.describe()),
        constraint,
        source: "jacobian-chain-volume".into(),
        alpha: Some(cert.alpha),
        chain_length: Some(l),
    })
}

/// Degree-based comparator `C r^{n−1} δ^{1/d} / (α! |a_α|)^{1/d}` using the
/// graded-lex smallest top-degree monomial.
pub fn baseline_ccw_bound(p: &Polynomial) -> Result<BoundPrediction, BoundsError> {
    let d = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(BoundsError::ConstantPolynomial),
    };
    let (alpha, coeff) = p
        .terms()
        .find(|(e, _)| e.total_degree() == d)
        .expect("a top-degree term exists");
    let weight = alpha.factorial().to_f64().unwrap_or(f64::INFINITY) * rational_to_f64(&coeff.abs());
    let factor = 1.0 / weight.powf(1.0 / d as f64);
    let n = p.dimension() as u64;
    Ok(BoundPrediction {
        kind: BoundKind::Volume,
        delta_exponent: rat(1, d as i64),
        r_exponent: int(n - 1),
        lambda_exponent: None,
        terms: vec![ShapeTerm {
            coefficient: factor,
            delta_exponent: rat(1, d as i64),
            r_exponent: int(n - 1),
        }],
        known_factor: factor,
        constant_fitted: true,
        constraint: ValidityConstraint::Everywhere,
        constraint_text: ValidityConstraint::Everywhere.describe(),
        source: "degree-baseline-volume".into(),
        alpha: Some(alpha.clone()),
        chain_length: None,
    })
}

/// An exponent of `r` that depends on `μ`:
/// `constant + mu_coefficient · μ + inverse_mu_coefficient / μ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MuExponent {
    #[serde(serialize_with = "serialize_rational")]
    pub constant: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub mu_coefficient: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub inverse_mu_coefficient: Rational,
}

impl MuExponent {
    pub fn eval(&self, mu: f64) -> f64 {
        rational_to_f64(&self.constant)
            + rational_to_f64(&self.mu_coefficient) * mu
            + rational_to_f64(&self.inverse_mu_coefficient) / mu
    }
}

/// Lower bound `τ` on the integrability index from one chain length.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainIndexBound {
    pub l: usize,
    pub alpha: ExponentVector,
    #[serde(serialize_with = "serialize_rational")]
    pub theta: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub tau: Rational,
    /// `n − μ(|α|+1)/|α|`.
    pub growth_first: MuExponent,
    /// `n + θ − τ/μ`.
    pub growth_second: MuExponent,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntegrabilityBounds {
    /// `1/ad(P)`.
    #[serde(serialize_with = "serialize_rational")]
    pub lower_ad: Rational,
    pub ad_alpha: ExponentVector,
    /// Growth exponent `n − μ|α|` of `∫_{Δ_r}|P|^{−μ}` for `μ < 1/|α|`.
    pub growth_admissible: MuExponent,
    pub lower_tau: Vec<ChainIndexBound>,
    #[serde(serialize_with = "serialize_opt_rational")]
    pub best_tau: Option<Rational>,
    /// `1/ND(P)`, an upper bound when `∇P(0) = 0`.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub upper_nd: Option<Rational>,
    pub notes: Vec<String>,
}

impl IntegrabilityBounds {
    /// `max(1/ad, best τ)`.
    pub fn best_lower(&self) -> Rational {
        match &self.best_tau {
            Some(t) if *t > self.lower_ad => t.clone(),
            _ => self.lower_ad.clone(),
        }
    }
}

pub fn integrability_bounds(p: &Polynomial) -> Result<IntegrabilityBounds, BoundsError> {
    if p.is_constant() {
        return Err(BoundsError::ConstantPolynomial);
    }
    if !p.constant_term().is_zero() {
        return Err(BoundsError::NonzeroAtOrigin);
    }
    let n = p.dimension() as u64;
    let ad = admissible_degree(p)?;
    let mut notes = Vec::new();

    let mut lower_tau = Vec::new();
    for l in 1..=p.dimension() {
        match chain_volume_bound(p, l, None) {
            Ok(pred) => {
                let alpha = pred.alpha.expect("chain prediction carries alpha");
                let k = alpha.total_degree();
                let (theta, tau) = chain_exponents(l, k);
                lower_tau.push(ChainIndexBound {
                    l,
                    growth_first: MuExponent {
                        constant: int(n),
                        mu_coefficient: -rat(k as i64 + 1, k as i64),
                        inverse_mu_coefficient: Rational::zero(),
                    },
                    growth_second: MuExponent {
                        constant: int(n) + &theta,
                        mu_coefficient: Rational::zero(),
                        inverse_mu_coefficient: -tau.clone(),
                    },
                    alpha,
                    theta,
                    tau,
                });
            }
            Err(BoundsError::DegenerateChain { l, degree }) => {
                notes.push(format!(
                    "chain length {l} skipped: P_{} has degree {}",
                    l + 1,
                    degree.map_or("-inf".to_string(), |d| d.to_string())
                ));
            }
            Err(e) => return Err(e),
        }
    }
    let best_tau = lower_tau.iter().map(|b| b.tau.clone()).max();

    let linear_part_vanishes = p.support().all(|e| e.total_degree() != 1);
    let upper_nd = if linear_part_vanishes {
        let nd = newton_distance(p)?;
        Some(Rational::one() / nd.exact)
    } else {
        notes.push("gradient does not vanish at the origin; Newton-distance upper bound omitted".into());
        None
    };

    Ok(IntegrabilityBounds {
        lower_ad: rat(1, ad.ad as i64),
        growth_admissible: MuExponent {
            constant: int(n),
            mu_coefficient: -int(ad.ad.into()),
            inverse_mu_coefficient: Rational::zero(),
        },
        ad_alpha: ad.argmin.alpha,
        lower_tau,
        best_tau,
        upper_nd,
        notes,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OscillatoryBound {
    /// `C r^{n−1} |λ|^{−1/ad(P)}`.
    pub admissible: BoundPrediction,
    /// `C r^{n−1} |λ|^{−1/deg P}`.
    pub degree_baseline: BoundPrediction,
}

pub fn oscillatory_decay_bound(p: &Polynomial) -> Result<OscillatoryBound, BoundsError> {
    let d = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(BoundsError::ConstantPolynomial),
    };
    let ad = admissible_degree(p)?;
    let n = p.dimension() as u64;
    let make = |exponent: Rational, alpha: Option<ExponentVector>, source: &str| BoundPrediction {
        kind: BoundKind::Oscillatory,
        delta_exponent: Rational::zero(),
        r_exponent: int(n - 1),
        lambda_exponent: Some(exponent),
        terms: Vec::new(),
        known_factor: 1.0,
        constant_fitted: true,
        constraint: ValidityConstraint::LambdaAndRAboveOne,
        constraint_text: ValidityConstraint::LambdaAndRAboveOne.describe(),
        source: source.into(),
        alpha,
        chain_length: None,
    };
    Ok(OscillatoryBound {
        admissible: make(-rat(1, ad.ad as i64), Some(ad.argmin.alpha), "oscillatory-admissible"),
        degree_baseline: make(-rat(1, d as i64), None, "oscillatory-degree-baseline"),
    })
}

/// Sign-preserving helper used by reports.
pub fn is_sharper(a: &BoundPrediction, b: &BoundPrediction) -> bool {
    a.delta_exponent > b.delta_exponent && !a.delta_exponent.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissibility::admissible_indices;
    use crate::poly::parse_polynomial;

    fn example5() -> Polynomial {
        parse_polynomial("x1^5 + x1*x2^3 + x2^2", 2).unwrap()
    }

    fn cert_for(p: &Polynomial, alpha: &[u32]) -> AdmissibleCertificate {
        is_admissible(p, &ExponentVector::new(alpha.to_vec())).unwrap().unwrap()
    }

    #[test]
    fn admissible_volume_examples() {
        let p = example5();
        let b = admissible_volume_bound(&p, &cert_for(&p, &[1, 3])).unwrap();
        assert_eq!(b.delta_exponent, rat(1, 4));
        assert_eq!(b.r_exponent, int(1));
        assert_eq!(b.known_factor, 4.0);
        assert_eq!(b.terms[1].delta_exponent, rat(2, 4));
        assert!(b.constant_fitted);

        let b = admissible_volume_bound(&p, &cert_for(&p, &[5, 0])).unwrap();
        assert_eq!(b.delta_exponent, rat(1, 5));
        assert_eq!(b.known_factor, 4.0);

        let q = parse_polynomial("x1^2 + x2^2", 2).unwrap();
        let b = admissible_volume_bound(&q, &cert_for(&q, &[2, 0])).unwrap();
        assert_eq!(b.delta_exponent, rat(1, 2));

        let scaled = parse_polynomial("16*x1^2 + x2^2", 2).unwrap();
        let b = admissible_volume_bound(&scaled, &cert_for(&scaled, &[2, 0])).unwrap();
        assert!((b.known_factor - 1.0).abs() < 1e-15);
    }

    #[test]
    fn forged_certificate_rejected() {
        let p = example5();
        let forged = AdmissibleCertificate {
            alpha: ExponentVector::from([0, 2]),
            witness: crate::admissibility::Permutation::identity(2),
        };
        assert_eq!(
            admissible_volume_bound(&p, &forged).unwrap_err(),
            BoundsError::InvalidCertificate
        );
    }

    #[test]
    fn chain_volume_examples() {
        let p = example5();
        let b = chain_volume_bound(&p, 2, None).unwrap();
        assert_eq!(b.alpha, Some(ExponentVector::from([0, 5])));
        assert_eq!(b.delta_exponent, rat(2, 7));
        assert_eq!(b.r_exponent, int(1) + rat(-1, 7));

        let b = chain_volume_bound(&p, 2, Some(&ExponentVector::from([4, 2]))).unwrap();
        assert_eq!(b.delta_exponent, rat(1, 4));
        assert_eq!(b.r_exponent, int(1) + rat(-1, 8));
        match &b.constraint {
            ValidityConstraint::RAbovePowerOfDelta { delta_power, .. } => {
                assert_eq!(*delta_power, rat(6, 7))
            }
            other => panic!("{other:?}"),
        }

        assert_eq!(
            chain_volume_bound(&p, 2, Some(&ExponentVector::from([3, 1]))).unwrap_err(),
            BoundsError::NotAdmissibleForChain(ExponentVector::from([3, 1]))
        );
        assert!(matches!(
            chain_volume_bound(&p, 3, None).unwrap_err(),
            BoundsError::Poly(PolyError::ChainLength { .. })
        ));
        let linear = parse_polynomial("x1 + x2", 2).unwrap();
        assert_eq!(
            chain_volume_bound(&linear, 1, None).unwrap_err(),
            BoundsError::DegenerateChain { l: 1, degree: Some(0) }
        );
    }

    #[test]
    fn chain_length_one_matches_admissible_form() {
        let p = example5();
        let b = chain_volume_bound(&p, 1, None).unwrap();
        let p2 = &p.jacobian_chain(1).unwrap()[1];
        let alpha = b.alpha.clone().unwrap();
        let plain = admissible_volume_bound(p2, &cert_for(p2, alpha.as_slice())).unwrap();
        let k = alpha.total_degree() as i64;
        assert_eq!(b.delta_exponent, rat(1, 1 + k));
        assert_eq!(b.r_exponent, plain.r_exponent);
    }

    #[test]
    fn exponent_identities() {
        for l in 1..=5 {
            for k in 1..=12 {
                let (theta, tau) = chain_exponents(l, k);
                assert_eq!(&theta + &tau, rat(1, (1i64 << (l - 1)) + k as i64));
                assert!(!theta.is_positive());
                assert_eq!(theta.is_zero(), l == 1);
                if k > 1 {
                    assert!(chain_exponents(l, k - 1).1 > tau);
                }
            }
        }
    }

    #[test]
    fn baseline_examples() {
        let p = example5();
        let b = baseline_ccw_bound(&p).unwrap();
        assert_eq!(b.delta_exponent, rat(1, 5));
        assert_eq!(b.alpha, Some(ExponentVector::from([5, 0])));
        assert!((b.known_factor - 120f64.powf(-0.2)).abs() < 1e-15);

        let q = parse_polynomial("x1^2 + x2^2", 2).unwrap();
        assert_eq!(baseline_ccw_bound(&q).unwrap().delta_exponent, rat(1, 2));

        let sharper = admissible_volume_bound(&p, &cert_for(&p, &[1, 3])).unwrap();
        assert!(is_sharper(&sharper, &b));
        assert!(baseline_ccw_bound(&parse_polynomial("2", 1).unwrap()).is_err());
    }

    #[test]
    fn integrability_examples() {
        let b = integrability_bounds(&example5()).unwrap();
        assert_eq!(b.lower_ad, rat(1, 4));
        assert_eq!(b.best_tau, Some(rat(2, 7)));
        let l2 = b.lower_tau.iter().find(|c| c.l == 2).unwrap();
        assert_eq!(l2.alpha, ExponentVector::from([0, 5]));
        assert_eq!(b.upper_nd, Some(rat(7, 10)));
        assert!((b.growth_admissible.eval(0.2) - 1.2).abs() < 1e-12);
        assert!(b.best_lower() <= b.upper_nd.clone().unwrap());

        let shifted = parse_polynomial("x1 + 1", 1).unwrap();
        assert_eq!(
            integrability_bounds(&shifted).unwrap_err(),
            BoundsError::NonzeroAtOrigin
        );

        let linear = integrability_bounds(&parse_polynomial("x1", 1).unwrap()).unwrap();
        assert_eq!(linear.lower_ad, rat(1, 1));
        assert_eq!(linear.upper_nd, None);
        assert!(!linear.notes.is_empty());
    }

    #[test]
    fn oscillatory_examples() {
        let b = oscillatory_decay_bound(&example5()).unwrap();
        assert_eq!(b.admissible.lambda_exponent, Some(rat(-1, 4)));
        assert_eq!(b.degree_baseline.lambda_exponent, Some(rat(-1, 5)));
        let b = oscillatory_decay_bound(&parse_polynomial("x1^2", 1).unwrap()).unwrap();
        assert_eq!(b.admissible.lambda_exponent, Some(rat(-1, 2)));
        let b = oscillatory_decay_bound(&parse_polynomial("x1*x2", 2).unwrap()).unwrap();
        assert_eq!(b.admissible.lambda_exponent, Some(rat(-1, 2)));
    }

    #[test]
    fn all_admissible_exponents_feed_volume_bounds() {
        let p = example5();
        let exps: Vec<Rational> = admissible_indices(&p)
            .unwrap()
            .iter()
            .map(|c| admissible_volume_bound(&p, c).unwrap().delta_exponent)
            .collect();
        assert_eq!(exps, vec![rat(1, 4), rat(1, 5)]);
    }
}
