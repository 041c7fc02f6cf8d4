//! Admissible monomials and the admissible degree `ad(P)`.
//!
//! `x^α` is admissible for `P` when `a_α ≠ 0` and some ordering of the
//! coordinates `(i_1, …, i_n)` has `α_{i_1} ≥ 1` and makes `α` the strict
//! lexicographic maximum of the support: for every other support point `β`,
//! the first position `j` (in that order) where the two differ has
//! `α_{i_j} > β_{i_j}`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::poly::{ExponentVector, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdmissibilityError {
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("polynomial is constant; no monomial can be admissible")]
    ConstantPolynomial,
    #[error("exponent vector has length {found}, polynomial has dimension {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("{0} is not in the support of the polynomial")]
    NotInSupport(ExponentVector),
}

/// A coordinate order `(i_1, …, i_n)`, stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Builds from a 0-based image; `None` unless every index in `0..n`
    /// appears exactly once.
    pub fn new(image: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; image.len()];
        for &i in &image {
            if i >= image.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Permutation(image))
    }

    /// Builds from the 1-based notation used in reports, e.g. `(2,1)`.
    pub fn from_one_based(image: &[usize]) -> Option<Self> {
        if image.contains(&0) {
            return None;
        }
        Self::new(image.iter().map(|i| i - 1).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    /// Advances to the next permutation in lexicographic order; returns
    /// `false` (leaving `self` unchanged) at the last one.
    fn advance(&mut self) -> bool {
        let v = &mut self.0;
        if v.len() < 2 {
            return false;
        }
        let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
            return false;
        };
        let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).expect("successor");
        v.swap(i, j);
        v[i + 1..].reverse();
        true
    }

    /// All permutations of `0..n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        let mut next = Some(Permutation::identity(n));
        std::iter::from_fn(move || {
            let current = next.take()?;
            let mut succ = current.clone();
            if succ.advance() {
                next = Some(succ);
            }
            Some(current)
        })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An admissible exponent together with the coordinate order witnessing it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AdmissibleCertificate {
    pub alpha: ExponentVector,
    pub witness: Permutation,
}

impl AdmissibleCertificate {
    /// Re-checks the certificate against the raw definition.
    pub fn verify(&self, p: &Polynomial) -> bool {
        self.alpha.len() == p.dimension()
            && self.witness.len() == p.dimension()
            && p.coefficient(&self.alpha).is_some()
            && witnesses(p, &self.alpha, &self.witness)
    }

    pub fn total_degree(&self) -> u32 {
        self.alpha.total_degree()
    }
}

/// True when `order` makes `alpha` admissible for `p`.
fn witnesses(p: &Polynomial, alpha: &ExponentVector, order: &Permutation) -> bool {
    let first = order.as_slice()[0];
    if alpha.get(first) == 0 {
        return false;
    }
    p.support().filter(|beta| *beta != alpha).all(|beta| {
        order
            .as_slice()
            .iter()
            .map(|&i| (alpha.get(i), beta.get(i)))
            .find(|(a, b)| a != b)
            .is_some_and(|(a, b)| a > b)
    })
}

/// Tests whether `x^alpha` is admissible for `p`, returning the first
/// witnessing order in lexicographic permutation order.
pub fn is_admissible(
    p: &Polynomial,
    alpha: &ExponentVector,
) -> Result<Option<AdmissibleCertificate>, AdmissibilityError> {
    if p.is_zero() {
        return Err(AdmissibilityError::ZeroPolynomial);
    }
    if alpha.len() != p.dimension() {
        return Err(AdmissibilityError::LengthMismatch {
            expected: p.dimension(),
            found: alpha.len(),
        });
    }
    if p.coefficient(alpha).is_none() {
        return Err(AdmissibilityError::NotInSupport(alpha.clone()));
    }
    Ok(Permutation::all(p.dimension())
        .find(|order| witnesses(p, alpha, order))
        .map(|witness| AdmissibleCertificate {
            alpha: alpha.clone(),
            witness,
        }))
}

/// Every admissible index of `p`, one witness each, in ascending graded-lex
/// order of `α`.
pub fn admissible_indices(p: &Polynomial) -> Result<Vec<AdmissibleCertificate>, AdmissibilityError> {
    if p.is_zero() {
        return Err(AdmissibilityError::ZeroPolynomial);
    }
    if p.is_constant() {
        return Err(AdmissibilityError::ConstantPolynomial);
    }
    let mut out = Vec::new();
    for alpha in p.support() {
        if let Some(cert) = is_admissible(p, alpha)? {
            out.push(cert);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibleDegree {
    pub ad: u32,
    pub argmin: AdmissibleCertificate,
}

/// `ad(P) = min |α|` over admissible `α`; ties go to the graded-lex smallest.
pub fn admissible_degree(p: &Polynomial) -> Result<AdmissibleDegree, AdmissibilityError> {
    let certs = admissible_indices(p)?;
    // certs are sorted graded-lex ascending, so the first has minimal |α|
    let argmin = certs
        .into_iter()
        .next()
        .expect("every non-constant polynomial has an admissible monomial");
    Ok(AdmissibleDegree {
        ad: argmin.total_degree(),
        argmin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn example5() -> Polynomial {
        parse_polynomial("x1^5 + x1*x2^3 + x2^2", 2).unwrap()
    }

    fn ev<const N: usize>(a: [u32; N]) -> ExponentVector {
        ExponentVector::from(a)
    }

    #[test]
    fn permutations_in_lexicographic_order() {
        let all: Vec<Vec<usize>> = Permutation::all(3).map(|p| p.as_slice().to_vec()).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0]
            ]
        );
        assert_eq!(Permutation::all(1).count(), 1);
        assert_eq!(Permutation::all(5).count(), 120);
        assert!(Permutation::new(vec![0, 0]).is_none());
        assert!(Permutation::from_one_based(&[2, 1]).is_some());
    }

    #[test]
    fn admissibility_of_example_monomials() {
        let p = example5();
        let c = is_admissible(&p, &ev([5, 0])).unwrap().unwrap();
        assert_eq!(c.witness.one_based(), vec![1, 2]);
        let c = is_admissible(&p, &ev([1, 3])).unwrap().unwrap();
        assert_eq!(c.witness.one_based(), vec![2, 1]);
        assert_eq!(is_admissible(&p, &ev([0, 2])).unwrap(), None);
    }

    #[test]
    fn not_in_support_is_distinct_from_not_admissible() {
        let p = example5();
        assert_eq!(
            is_admissible(&p, &ev([1, 1])).unwrap_err(),
            AdmissibilityError::NotInSupport(ev([1, 1]))
        );
        assert!(matches!(
            is_admissible(&p, &ev([1, 1, 1])).unwrap_err(),
            AdmissibilityError::LengthMismatch { .. }
        ));
    }

    #[test]
    fn admissible_sets() {
        let alphas = |text: &str, dim| -> Vec<ExponentVector> {
            admissible_indices(&parse_polynomial(text, dim).unwrap())
                .unwrap()
                .into_iter()
                .map(|c| c.alpha)
                .collect()
        };
        assert_eq!(alphas("x1^5 + x1*x2^3 + x2^2", 2), vec![ev([1, 3]), ev([5, 0])]);
        assert_eq!(alphas("x1^2 + x2^2", 2), vec![ev([0, 2]), ev([2, 0])]);
        assert_eq!(alphas("x1*x2^2", 2), vec![ev([1, 2])]);
    }

    #[test]
    fn constant_term_is_never_admissible() {
        let p = parse_polynomial("x1 + 1", 1).unwrap();
        assert_eq!(is_admissible(&p, &ev([0])).unwrap(), None);
        assert_eq!(
            admissible_indices(&parse_polynomial("3", 2).unwrap()).unwrap_err(),
            AdmissibilityError::ConstantPolynomial
        );
    }

    #[test]
    fn admissible_degrees() {
        let d = admissible_degree(&example5()).unwrap();
        assert_eq!(d.ad, 4);
        assert_eq!(d.argmin.alpha, ev([1, 3]));

        let d = admissible_degree(&parse_polynomial("x1^2 + x2^2", 2).unwrap()).unwrap();
        assert_eq!(d.ad, 2);

        let p3 = parse_polynomial("-45*x1^4*x2^2 + 3*x2^5 - 40*x1^3*x2", 2).unwrap();
        let d = admissible_degree(&p3).unwrap();
        assert_eq!(d.ad, 5);
        assert_eq!(d.argmin.alpha, ev([0, 5]));
        assert_eq!(d.argmin.witness.one_based(), vec![2, 1]);
    }

    #[test]
    fn certificates_reverify() {
        let p = example5();
        for c in admissible_indices(&p).unwrap() {
            assert!(c.verify(&p));
        }
        let forged = AdmissibleCertificate {
            alpha: ev([0, 2]),
            witness: Permutation::identity(2),
        };
        assert!(!forged.verify(&p));
    }
}
