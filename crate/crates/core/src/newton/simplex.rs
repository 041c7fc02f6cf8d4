//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Sized for the Newton-polyhedron programs in this crate: a handful of
//! rows and at most a few hundred columns.

use num_traits::{Signed, Zero};

use crate::poly::Rational;

/// `minimize c·x  subject to  A x = b, x ≥ 0`.
#[derive(Clone, Debug)]
pub struct StandardLp {
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// `rows × (cols + 1)`, last column is the right-hand side.
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.t[row][col].clone();
        for v in self.t[row].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.t[row].clone();
        for (r, line) in self.t.iter_mut().enumerate() {
            if r == row || line[col].is_zero() {
                continue;
            }
            let factor = line[col].clone();
            for (v, pv) in line.iter_mut().zip(&pivot_row) {
                *v -= &factor * pv;
            }
        }
        self.basis[row] = col;
    }

    fn reduced_cost(&self, costs: &[Rational], col: usize) -> Rational {
        let mut r = costs[col].clone();
        for (row, &bv) in self.basis.iter().enumerate() {
            if !costs[bv].is_zero() && !self.t[row][col].is_zero() {
                r -= &costs[bv] * &self.t[row][col];
            }
        }
        r
    }

    /// Runs simplex iterations for `costs` over the columns `allowed`.
    /// Returns `false` if the objective is unbounded below.
    fn optimize(&mut self, costs: &[Rational], allowed: &dyn Fn(usize) -> bool) -> bool {
        loop {
            let entering = (0..self.cols)
                .filter(|&j| allowed(j) && !self.basis.contains(&j))
                .find(|&j| self.reduced_cost(costs, j).is_negative());
            let Some(col) = entering else {
                return true;
            };
            let rhs = self.cols;
            let mut best: Option<(usize, Rational)> = None;
            for row in 0..self.t.len() {
                let a = &self.t[row][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.t[row][rhs] / a;
                let better = match &best {
                    None => true,
                    Some((brow, bratio)) => {
                        ratio < *bratio || (ratio == *bratio && self.basis[row] < self.basis[*brow])
                    }
                };
                if better {
                    best = Some((row, ratio));
                }
            }
            match best {
                Some((row, _)) => self.pivot(row, col),
                None => return false,
            }
        }
    }

    fn objective(&self, costs: &[Rational]) -> Rational {
        self.basis
            .iter()
            .enumerate()
            .map(|(row, &bv)| &costs[bv] * &self.t[row][self.cols])
            .fold(Rational::zero(), |acc, v| acc + v)
    }
}

pub fn solve(lp: &StandardLp) -> LpOutcome {
    let m = lp.a.len();
    let n = lp.c.len();
    assert_eq!(lp.b.len(), m);
    let cols = n + m;

    // Flip rows so that b ≥ 0, then append one artificial per row.
    let mut t = Vec::with_capacity(m);
    for (row, b) in lp.a.iter().zip(&lp.b) {
        assert_eq!(row.len(), n);
        let sign = if b.is_negative() {
            -Rational::from_integer(1.into())
        } else {
            Rational::from_integer(1.into())
        };
        let mut line: Vec<Rational> = row.iter().map(|v| v * &sign).collect();
        line.extend((0..m).map(|_| Rational::zero()));
        line.push(b * &sign);
        t.push(line);
    }
    for (i, line) in t.iter_mut().enumerate() {
        line[n + i] = Rational::from_integer(1.into());
    }
    let mut tab = Tableau {
        t,
        basis: (n..n + m).collect(),
        cols,
    };

    let mut phase1 = vec![Rational::zero(); cols];
    for c in phase1.iter_mut().skip(n) {
        *c = Rational::from_integer(1.into());
    }
    tab.optimize(&phase1, &|_| true);
    if tab.objective(&phase1).is_positive() {
        return LpOutcome::Infeasible;
    }

    // Drive zero-valued artificials out of the basis; drop redundant rows.
    let mut row = 0;
    while row < tab.t.len() {
        if tab.basis[row] >= n {
            match (0..n).find(|&j| !tab.t[row][j].is_zero()) {
                Some(col) => tab.pivot(row, col),
                None => {
                    tab.t.remove(row);
                    tab.basis.remove(row);
                    continue;
                }
            }
        }
        row += 1;
    }

    let mut phase2 = lp.c.clone();
    phase2.extend((0..m).map(|_| Rational::zero()));
    if !tab.optimize(&phase2, &|j| j < n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &bv) in tab.basis.iter().enumerate() {
        if bv < n {
            x[bv] = tab.t[row][cols].clone();
        }
    }
    let value = lp.c.iter().zip(&x).fold(Rational::zero(), |acc, (c, v)| acc + c * v);
    LpOutcome::Optimal { x, value }
}
