use super::{rational_to_f64, Polynomial};

/// Double-precision copy of a [`Polynomial`] for hot evaluation loops.
#[derive(Clone, Debug)]
pub struct FloatPoly {
    dimension: usize,
    coefficients: Vec<f64>,
    /// Row-major `terms × dimension`.
    exponents: Vec<u32>,
}

impl FloatPoly {
    pub fn new(p: &Polynomial) -> Self {
        let mut coefficients = Vec::with_capacity(p.num_terms());
        let mut exponents = Vec::with_capacity(p.num_terms() * p.dimension());
        for (e, c) in p.terms() {
            coefficients.push(rational_to_f64(c));
            exponents.extend_from_slice(e.as_slice());
        }
        FloatPoly {
            dimension: p.dimension(),
            coefficients,
            exponents,
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    fn term_exponents(&self, t: usize) -> &[u32] {
        &self.exponents[t * self.dimension..(t + 1) * self.dimension]
    }

    /// Value at `x`; `x.len()` must equal the dimension.
    #[inline]
    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dimension);
        let mut acc = 0.0;
        for (t, &c) in self.coefficients.iter().enumerate() {
            let mut m = c;
            for (&k, &xi) in self.term_exponents(t).iter().zip(x) {
                if k > 0 {
                    m *= xi.powi(k as i32);
                }
            }
            acc += m;
        }
        acc
    }

    /// Writes `∇P(x)` into `grad` and returns `P(x)`.
    pub fn eval_with_gradient(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        debug_assert_eq!(grad.len(), self.dimension);
        grad.iter_mut().for_each(|g| *g = 0.0);
        let mut value = 0.0;
        for (t, &c) in self.coefficients.iter().enumerate() {
            let e = self.term_exponents(t);
            let mut m = c;
            for (&k, &xi) in e.iter().zip(x) {
                m *= xi.powi(k as i32);
            }
            value += m;
            for axis in 0..self.dimension {
                let k = e[axis];
                if k == 0 {
                    continue;
                }
                let mut d = c * k as f64;
                for (j, (&kj, &xj)) in e.iter().zip(x).enumerate() {
                    let p = if j == axis { kj - 1 } else { kj };
                    d *= xj.powi(p as i32);
                }
                grad[axis] += d;
            }
        }
        value
    }

    /// Coefficients (ascending powers of `t`) of `t ↦ P(x with x_axis = t)`.
    pub fn restrict_to_axis(&self, axis: usize, x: &[f64]) -> Vec<f64> {
        let max_power = (0..self.coefficients.len())
            .map(|t| self.term_exponents(t)[axis])
            .max()
            .unwrap_or(0) as usize;
        let mut out = vec![0.0; max_power + 1];
        for (t, &c) in self.coefficients.iter().enumerate() {
            let e = self.term_exponents(t);
            let mut m = c;
            for (j, (&k, &xj)) in e.iter().zip(x).enumerate() {
                if j != axis {
                    m *= xj.powi(k as i32);
                }
            }
            out[e[axis] as usize] += m;
        }
        out
    }

    /// Upper bound on `|∂P/∂x_axis|` over the box `(−r, r)^n`.
    pub fn derivative_bound_on_box(&self, axis: usize, r: f64) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(t, &c)| {
                let e = self.term_exponents(t);
                let k = e[axis];
                if k == 0 {
                    return 0.0;
                }
                let total: u32 = e.iter().sum();
                c.abs() * k as f64 * r.powi(total as i32 - 1)
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use crate::poly::parse_polynomial;

    #[test]
    fn matches_exact_evaluation() {
        let p = parse_polynomial("x1^5 + x1*x2^3 - 3/7*x2^2 + 2", 2).unwrap();
        let f = p.to_float();
        for x in [[0.3, -1.2], [2.0, 0.5], [-1.5, 1.5]] {
            assert!((f.eval(&x) - p.evaluate(&x).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn gradient_matches_symbolic_derivative() {
        let p = parse_polynomial("x1^5 + x1*x2^3 + x2^2", 2).unwrap();
        let f = p.to_float();
        let x = [0.7, -1.1];
        let mut g = [0.0; 2];
        let v = f.eval_with_gradient(&x, &mut g);
        assert!((v - f.eval(&x)).abs() < 1e-14);
        for (axis, gi) in g.iter().enumerate() {
            let d = p.partial_derivative(axis).unwrap().evaluate(&x).unwrap();
            assert!((gi - d).abs() < 1e-12);
        }
    }

    #[test]
    fn axis_restriction() {
        let p = parse_polynomial("x1^2*x2 + 3*x2 - x1", 2).unwrap();
        let f = p.to_float();
        // x2 = 2: 2 t^2 - t + 6
        assert_eq!(f.restrict_to_axis(0, &[9.0, 2.0]), vec![6.0, -1.0, 2.0]);
        // x1 = 1: t (1 + 3) - 1
        assert_eq!(f.restrict_to_axis(1, &[1.0, 9.0]), vec![-1.0, 4.0]);
    }
}
