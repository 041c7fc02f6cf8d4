//! Exact sparse multivariate polynomials over the rationals.
//!
//! Every symbolic computation in the crate goes through [`Polynomial`]:
//! coefficients are arbitrary-precision rationals, terms are kept in a
//! graded-lexicographic map, and no stored coefficient is ever zero.

mod float;
mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use float::FloatPoly;
pub use parse::parse_polynomial;

/// Exact coefficient type. Always reduced, denominator positive.
pub type Rational = BigRational;

/// Largest ambient dimension accepted by the parser. Admissibility enumerates
/// all `n!` coordinate orders, so this is kept small.
pub const MAX_DIMENSION: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("variable x{index} at position {position} is out of range for dimension {dimension}")]
    VariableOutOfRange {
        index: usize,
        dimension: usize,
        position: usize,
    },
    #[error("division by zero in rational literal at position {position}")]
    DivisionByZero { position: usize },
    #[error("dimension {dimension} is not supported (expected 1..={max})", max = MAX_DIMENSION)]
    UnsupportedDimension { dimension: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("axis {axis} is out of range for dimension {dimension}")]
    AxisOutOfRange { axis: usize, dimension: usize },
    #[error("expected a vector of length {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("chain length {l} must lie in 1..={dimension}")]
    ChainLength { l: usize, dimension: usize },
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
}

/// A multi-index `α = (α_1, …, α_n)`.
///
/// Ordered graded-lexicographically: total degree first, then
/// lexicographically with `x1` most significant.
#[derive(Clone, PartialEq, Eq, Hash, Debug, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        ExponentVector(exponents)
    }

    pub fn zeros(dimension: usize) -> Self {
        ExponentVector(vec![0; dimension])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|α| = Σ α_i`.
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, axis: usize) -> u32 {
        self.0[axis]
    }

    /// `α!` as an exact integer.
    pub fn factorial(&self) -> BigInt {
        self.0
            .iter()
            .map(|&a| (1..=a).fold(BigInt::one(), |acc, k| acc * BigInt::from(k)))
            .fold(BigInt::one(), |acc, f| acc * f)
    }

    fn plus(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

impl<const N: usize> From<[u32; N]> for ExponentVector {
    fn from(v: [u32; N]) -> Self {
        ExponentVector(v.to_vec())
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Sparse polynomial `P(x) = Σ a_α x^α` with exact rational coefficients.
///
/// A dimension of zero is allowed and denotes constants; it arises when
/// coefficient slices peel off the last variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    dimension: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl Polynomial {
    pub fn zero(dimension: usize) -> Self {
        Polynomial {
            dimension,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dimension: usize, value: Rational) -> Self {
        Self::monomial(dimension, ExponentVector::zeros(dimension), value)
    }

    pub fn one(dimension: usize) -> Self {
        Self::constant(dimension, Rational::one())
    }

    /// `coefficient · x^exponents`. Panics if the exponent length differs
    /// from `dimension`.
    pub fn monomial(dimension: usize, exponents: ExponentVector, coefficient: Rational) -> Self {
        assert_eq!(exponents.len(), dimension, "exponent length mismatch");
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(exponents, coefficient);
        }
        Polynomial { dimension, terms }
    }

    /// The coordinate function `x_{axis+1}`.
    pub fn variable(dimension: usize, axis: usize) -> Result<Self, PolyError> {
        check_axis(axis, dimension)?;
        let mut e = vec![0; dimension];
        e[axis] = 1;
        Ok(Self::monomial(dimension, e.into(), Rational::one()))
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, combining
    /// like terms and dropping zeros.
    pub fn from_terms<I>(dimension: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (ExponentVector, Rational)>,
    {
        let mut p = Polynomial::zero(dimension);
        for (e, c) in terms {
            if e.len() != dimension {
                return Err(PolyError::LengthMismatch {
                    expected: dimension,
                    found: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Convenience constructor from small integer coefficients.
    pub fn from_int_terms(dimension: usize, terms: &[(&[u32], i64)]) -> Result<Self, PolyError> {
        Self::from_terms(
            dimension,
            terms
                .iter()
                .map(|(e, c)| (ExponentVector::new(e.to_vec()), Rational::from_integer((*c).into()))),
        )
    }

    fn add_term(&mut self, e: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(ExponentVector::total_degree).max()
    }

    /// Degree in a single variable, or `None` for the zero polynomial.
    pub fn degree_in(&self, axis: usize) -> Option<u32> {
        self.terms.keys().map(|e| e.get(axis)).max()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn support(&self) -> impl DoubleEndedIterator<Item = &ExponentVector> + '_ {
        self.terms.keys()
    }

    pub fn coefficient(&self, exponents: &ExponentVector) -> Option<&Rational> {
        self.terms.get(exponents)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&ExponentVector::zeros(self.dimension))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn check_same_dimension(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.dimension != other.dimension {
            return Err(PolyError::DimensionMismatch {
                left: self.dimension,
                right: other.dimension,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same_dimension(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same_dimension(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same_dimension(other)?;
        let mut out = Polynomial::zero(self.dimension);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.plus(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Rational) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero(self.dimension);
        }
        Polynomial {
            dimension: self.dimension,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * factor)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        (0..k).fold(Polynomial::one(self.dimension), |acc, _| &acc * self)
    }

    /// Formal partial derivative with respect to `x_{axis+1}`.
    pub fn partial_derivative(&self, axis: usize) -> Result<Polynomial, PolyError> {
        check_axis(axis, self.dimension)?;
        let mut out = Polynomial::zero(self.dimension);
        for (e, c) in &self.terms {
            let k = e.get(axis);
            if k == 0 {
                continue;
            }
            let mut d = e.clone();
            d.0[axis] -= 1;
            out.add_term(d, c * Rational::from_integer(k.into()));
        }
        Ok(out)
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.dimension)
            .map(|axis| self.partial_derivative(axis).expect("axis in range"))
            .collect()
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<f64, PolyError> {
        self.check_point_len(x.len())?;
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: f64 = e.as_slice().iter().zip(x).map(|(&k, &xi)| xi.powi(k as i32)).product();
                rational_to_f64(c) * mono
            })
            .sum())
    }

    pub fn evaluate_exact(&self, x: &[Rational]) -> Result<Rational, PolyError> {
        self.check_point_len(x.len())?;
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (&k, xi) in e.as_slice().iter().zip(x) {
                for _ in 0..k {
                    term *= xi;
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    fn check_point_len(&self, len: usize) -> Result<(), PolyError> {
        if len != self.dimension {
            return Err(PolyError::LengthMismatch {
                expected: self.dimension,
                found: len,
            });
        }
        Ok(())
    }

    /// Coefficient of `x_{axis+1}^power`, as a polynomial in the remaining
    /// `n − 1` variables (the axis is removed, later variables shift down).
    pub fn coefficient_slice(&self, axis: usize, power: u32) -> Result<Polynomial, PolyError> {
        check_axis(axis, self.dimension)?;
        let mut out = Polynomial::zero(self.dimension - 1);
        for (e, c) in &self.terms {
            if e.get(axis) == power {
                let mut rest = e.0.clone();
                rest.remove(axis);
                out.add_term(ExponentVector(rest), c.clone());
            }
        }
        Ok(out)
    }

    /// Inverse of the variable removal in [`coefficient_slice`]: inserts a new
    /// variable at `axis` that this polynomial does not depend on.
    ///
    /// [`coefficient_slice`]: Polynomial::coefficient_slice
    pub fn insert_variable(&self, axis: usize) -> Result<Polynomial, PolyError> {
        if axis > self.dimension {
            return Err(PolyError::AxisOutOfRange {
                axis,
                dimension: self.dimension + 1,
            });
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut v = e.0.clone();
                v.insert(axis, 0);
                (ExponentVector(v), c.clone())
            })
            .collect();
        Ok(Polynomial {
            dimension: self.dimension + 1,
            terms,
        })
    }

    /// Relabels variables: new variable `k` is old variable `order[k]`.
    pub fn permute_variables(&self, order: &[usize]) -> Result<Polynomial, PolyError> {
        if order.len() != self.dimension {
            return Err(PolyError::LengthMismatch {
                expected: self.dimension,
                found: order.len(),
            });
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let v: Vec<u32> = order.iter().map(|&old| e.get(old)).collect();
                (ExponentVector(v), c.clone())
            })
            .collect();
        Ok(Polynomial {
            dimension: self.dimension,
            terms,
        })
    }

    /// The iterated Jacobian chain `[P_1, …, P_{l+1}]` with `P_1 = P` and
    /// `P_m = det(∂P_i/∂x_j)_{1 ≤ i,j ≤ m−1}`.
    pub fn jacobian_chain(&self, l: usize) -> Result<Vec<Polynomial>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if l == 0 || l > self.dimension {
            return Err(PolyError::ChainLength {
                l,
                dimension: self.dimension,
            });
        }
        let mut chain = vec![self.clone()];
        // rows[i][j] = ∂P_{i+1}/∂x_{j+1}, grown one row per step
        let mut rows: Vec<Vec<Polynomial>> = Vec::with_capacity(l);
        for m in 1..=l {
            rows.push(chain[m - 1].gradient());
            let minor: Vec<Vec<Polynomial>> = rows.iter().map(|r| r[..m].to_vec()).collect();
            chain.push(determinant(&minor, self.dimension));
        }
        Ok(chain)
    }

    /// Float copy for fast repeated evaluation.
    pub fn to_float(&self) -> FloatPoly {
        FloatPoly::new(self)
    }

    /// `Σ |a_α| r^{|α|}`, an upper bound of `|P|` on the box `(−r, r)^n`.
    pub fn abs_bound_on_box(&self, r: f64) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| rational_to_f64(&c.abs()) * r.powi(e.total_degree() as i32))
            .sum()
    }
}

/// Cofactor expansion along the first row.
fn determinant(matrix: &[Vec<Polynomial>], dimension: usize) -> Polynomial {
    let size = matrix.len();
    match size {
        0 => Polynomial::one(dimension),
        1 => matrix[0][0].clone(),
        _ => {
            let mut acc = Polynomial::zero(dimension);
            for col in 0..size {
                if matrix[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = matrix[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != col)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = &matrix[0][col] * &determinant(&minor, dimension);
                acc = if col % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

fn check_axis(axis: usize, dimension: usize) -> Result<(), PolyError> {
    if axis >= dimension {
        return Err(PolyError::AxisOutOfRange { axis, dimension });
    }
    Ok(())
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact rational value of a finite float.
pub fn f64_to_rational(x: f64) -> Rational {
    Rational::from_float(x).expect("finite float")
}

/// Serialized as its canonical text.
impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Polynomial {
    /// Canonical form: descending graded-lex order, explicit `*`, `^` only
    /// for powers ≥ 2. Round-trips through [`parse_polynomial`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let magnitude = c.abs();
            let mono = monomial_text(e);
            if mono.is_empty() {
                write!(f, "{}", rational_text(&magnitude))?;
            } else if magnitude.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", rational_text(&magnitude))?;
            }
        }
        Ok(())
    }
}

fn rational_text(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn monomial_text(e: &ExponentVector) -> String {
    e.as_slice()
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| {
            if k == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{k}", i + 1)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

// Operator impls assume matching dimensions; use the `checked_*` methods
// when that is not already guaranteed.

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial dimensions differ")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial dimensions differ")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial dimensions differ")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, dim: usize) -> Polynomial {
        parse_polynomial(text, dim).unwrap()
    }

    fn example5() -> Polynomial {
        p("x1^5 + x1*x2^3 + x2^2", 2)
    }

    #[test]
    fn add_examples() {
        assert_eq!(&p("x1 + 1", 1) + &p("x1 - 1", 1), p("2*x1", 1));
        let q = example5();
        assert_eq!(&q + &Polynomial::zero(2), q);
        assert!((&p("x1*x2", 2) + &p("-x1*x2", 2)).is_zero());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p("x1 + x2", 2) * &p("x1 - x2", 2), p("x1^2 - x2^2", 2));
        let q = example5();
        assert_eq!(&q * &Polynomial::one(2), q);
        assert_eq!(p("x1 + 1", 1).pow(2), p("x1^2 + 2*x1 + 1", 1));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let err = p("x1", 1).checked_add(&p("x2", 2)).unwrap_err();
        assert_eq!(err, PolyError::DimensionMismatch { left: 1, right: 2 });
        assert!(p("x1", 1).checked_mul(&p("x2", 2)).is_err());
    }

    #[test]
    fn degree_marker() {
        assert_eq!(Polynomial::zero(2).degree(), None);
        assert_eq!(p("3", 2).degree(), Some(0));
        assert_eq!(example5().degree(), Some(5));
        let prod = &example5() * &p("x1*x2 + 1", 2);
        assert_eq!(prod.degree(), Some(7));
    }

    #[test]
    fn partial_derivative_examples() {
        let q = example5();
        assert_eq!(q.partial_derivative(0).unwrap(), p("5*x1^4 + x2^3", 2));
        assert!(p("x2^3", 2).partial_derivative(0).unwrap().is_zero());
        assert_eq!(
            p("x1*x2^3 + x2^2", 2).partial_derivative(1).unwrap(),
            p("3*x1*x2^2 + 2*x2", 2)
        );
        assert_eq!(
            q.partial_derivative(2).unwrap_err(),
            PolyError::AxisOutOfRange { axis: 2, dimension: 2 }
        );
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(p("x1^2 + x2^2", 2).evaluate(&[1.0, 2.0]).unwrap(), 5.0);
        assert_eq!(p("x1^2 - 7/2", 2).evaluate(&[0.0, 0.0]).unwrap(), -3.5);
        assert_eq!(example5().evaluate(&[1.0, 1.0]).unwrap(), 3.0);
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(
            example5().evaluate_exact(&[half.clone(), half]).unwrap(),
            Rational::new(11.into(), 32.into())
        );
        assert_eq!(
            example5().evaluate(&[1.0]).unwrap_err(),
            PolyError::LengthMismatch { expected: 2, found: 1 }
        );
    }

    #[test]
    fn coefficient_slice_examples() {
        let q = example5();
        assert_eq!(q.coefficient_slice(0, 1).unwrap(), p("x1^3", 1));
        assert_eq!(q.coefficient_slice(0, 0).unwrap(), p("x1^2", 1));
        assert!(q.coefficient_slice(0, 3).unwrap().is_zero());
        assert_eq!(q.coefficient_slice(0, 1).unwrap().dimension(), 1);
        assert!(q.coefficient_slice(5, 0).is_err());
    }

    #[test]
    fn jacobian_chain_examples() {
        let q = example5();
        let chain = q.jacobian_chain(1).unwrap();
        assert_eq!(chain, vec![q.clone(), p("5*x1^4 + x2^3", 2)]);

        let chain = q.jacobian_chain(2).unwrap();
        assert_eq!(chain[2], p("-45*x1^4*x2^2 + 3*x2^5 - 40*x1^3*x2", 2));

        let chain = p("x1*x2", 2).jacobian_chain(2).unwrap();
        assert_eq!(chain[1], p("x2", 2));
        assert_eq!(chain[2], p("x2", 2));

        assert_eq!(
            q.jacobian_chain(3).unwrap_err(),
            PolyError::ChainLength { l: 3, dimension: 2 }
        );
        assert_eq!(
            Polynomial::zero(2).jacobian_chain(1).unwrap_err(),
            PolyError::ZeroPolynomial
        );
    }

    #[test]
    fn three_by_three_chain_matches_explicit_determinant() {
        let q = p("x1^2*x2 + x2^2*x3 + x3^3 + x1", 3);
        let chain = q.jacobian_chain(3).unwrap();
        let g1 = q.gradient();
        let g2 = chain[1].gradient();
        let g3 = chain[2].gradient();
        // rule of Sarrus
        let m = [&g1, &g2, &g3];
        let term = |a: usize, b: usize, c: usize| &(&m[0][a] * &m[1][b]) * &m[2][c];
        let det = &(&(&term(0, 1, 2) + &term(1, 2, 0)) + &term(2, 0, 1))
            - &(&(&term(2, 1, 0) + &term(0, 2, 1)) + &term(1, 0, 2));
        assert_eq!(chain[3], det);
    }

    #[test]
    fn formatting_is_canonical() {
        assert_eq!(p("-1/3 + 2*x2*x1 + x1^2", 2).to_string(), "x1^2 + 2*x1*x2 - 1/3");
        assert_eq!(p("-x1 + 0.5", 1).to_string(), "-x1 + 1/2");
        assert_eq!(Polynomial::zero(3).to_string(), "0");
        assert_eq!(p("x2 - 2/3*x1^3", 2).to_string(), "-2/3*x1^3 + x2");
    }

    #[test]
    fn insert_variable_inverts_slice() {
        let q = example5();
        let slice = q.coefficient_slice(1, 3).unwrap();
        let lifted = slice.insert_variable(1).unwrap();
        assert_eq!(lifted, p("x1", 2));
    }

    #[test]
    fn abs_bound_dominates_values() {
        let q = p("x1^5 - 3*x1*x2^3 + x2^2 - 1", 2);
        let bound = q.abs_bound_on_box(2.0);
        assert_eq!(bound, 32.0 + 48.0 + 4.0 + 1.0);
        assert!(q.evaluate(&[-2.0, 2.0]).unwrap().abs() <= bound);
    }
}
