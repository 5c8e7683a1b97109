//! Two-phase dense rational simplex with Bland's rule.
//!
//! Solves `maximize c·x  subject to  A x <= b` with `x` free. Free variables are
//! split as `x = x⁺ - x⁻`; rows with negative right-hand side get an artificial
//! variable for phase one.

use num_traits::{One, Signed, Zero};

use super::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rational, point: Vec<Rational> },
    Unbounded,
    Infeasible,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.cols]
    }

    fn pivot(&mut self, r: usize, c: usize, obj: &mut [Rational]) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= p * &f;
                }
            }
        }
        if !obj[c].is_zero() {
            let f = obj[c].clone();
            for (x, p) in obj.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= p * &f;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Minimizes the objective row (reduced costs, last entry = -value) over
    /// the columns `allowed`. Returns false if unbounded.
    fn run(&mut self, obj: &mut [Rational], allowed: usize) -> bool {
        loop {
            let Some(enter) = (0..allowed).find(|&j| obj[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return false,
                Some((r, _)) => self.pivot(r, enter, obj),
            }
        }
    }
}

/// Maximizes `c·x` subject to `A x <= b`.
pub fn maximize(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    let negative_rows: Vec<usize> = (0..m).filter(|&i| b[i].is_negative()).collect();
    let structural = 2 * n + m;
    let cols = structural + negative_rows.len();

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut art = 0;
    for i in 0..m {
        let sign = if b[i].is_negative() { -Rational::one() } else { Rational::one() };
        let mut row = vec![Rational::zero(); cols + 1];
        for j in 0..n {
            row[j] = &a[i][j] * &sign;
            row[n + j] = -&a[i][j] * &sign;
        }
        row[2 * n + i] = sign.clone();
        row[cols] = &b[i] * &sign;
        if b[i].is_negative() {
            row[structural + art] = Rational::one();
            basis.push(structural + art);
            art += 1;
        } else {
            basis.push(2 * n + i);
        }
        rows.push(row);
    }
    let mut t = Tableau { rows, basis, cols };

    if art > 0 {
        // phase one: minimize the sum of artificials
        let mut obj = vec![Rational::zero(); cols + 1];
        for j in structural..cols {
            obj[j] = Rational::one();
        }
        for i in 0..m {
            if t.basis[i] >= structural {
                for j in 0..=cols {
                    let v = t.rows[i][j].clone();
                    obj[j] -= v;
                }
            }
        }
        t.run(&mut obj, cols);
        if !obj[cols].is_zero() {
            return LpOutcome::Infeasible;
        }
        // drive degenerate artificials out of the basis
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= structural {
                match (0..structural).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(j) => {
                        let mut dummy = vec![Rational::zero(); cols + 1];
                        t.pivot(i, j, &mut dummy);
                        i += 1;
                    }
                    None => {
                        t.rows.remove(i);
                        t.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
    }

    // phase two: minimize -c·x
    let mut obj = vec![Rational::zero(); cols + 1];
    for j in 0..n {
        obj[j] = -c[j].clone();
        obj[n + j] = c[j].clone();
    }
    for i in 0..t.rows.len() {
        let bj = t.basis[i];
        if !obj[bj].is_zero() {
            let f = obj[bj].clone();
            for j in 0..=cols {
                let v = &t.rows[i][j] * &f;
                obj[j] -= v;
            }
        }
    }
    if !t.run(&mut obj, structural) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &bj) in t.basis.iter().enumerate() {
        if bj < n {
            x[bj] += t.rhs(i);
        } else if bj < 2 * n {
            x[bj - n] -= t.rhs(i);
        }
    }
    let value = super::rational::dot(c, &x);
    LpOutcome::Optimal { value, point: x }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rational::{rat, ratio};

    fn rows(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn unit_square() {
        let a = rows(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]]);
        let b = vec![rat(1), rat(1), rat(0), rat(0)];
        match maximize(&[rat(1), rat(1)], &a, &b) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, rat(2));
                assert_eq!(point, vec![rat(1), rat(1)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn needs_phase_one() {
        // 1 <= x <= 2, 3 <= y <= 5, maximize -x - y
        let a = rows(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        let b = vec![rat(2), rat(-1), rat(5), rat(-3)];
        match maximize(&[rat(-1), rat(-1)], &a, &b) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(-4)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = rows(&[&[-1], &[1]]);
        assert_eq!(maximize(&[rat(1)], &a, &[rat(0), rat(-1)]), LpOutcome::Infeasible);
        let a = rows(&[&[-1, 0], &[0, -1]]);
        assert_eq!(
            maximize(&[rat(1), rat(0)], &a, &[rat(0), rat(0)]),
            LpOutcome::Unbounded
        );
    }

    #[test]
    fn rational_optimum() {
        // 3x + 2y <= 1, x, y >= 0, maximize x + y
        let a = rows(&[&[3, 2], &[-1, 0], &[0, -1]]);
        match maximize(&[rat(1), rat(1)], &a, &[rat(1), rat(0), rat(0)]) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, ratio(1, 2)),
            other => panic!("{other:?}"),
        }
    }
}
