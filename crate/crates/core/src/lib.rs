//! Sublevel-set volume bounds, admissible monomials, Newton distances and
//! oscillatory-integral decay for real multivariate polynomials, together
//! with deterministic Monte Carlo and quadrature labs that check each
//! predicted exponent empirically.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod admissibility;
pub mod bounds;
pub mod cli;
pub mod integral;
pub mod lojacheck;
pub mod montecarlo;
pub mod newton;
pub mod poly;
pub mod report;
pub mod rng;

pub use poly::{parse_polynomial, ExponentVector, FloatPoly, PolyError, Polynomial, Rational};
