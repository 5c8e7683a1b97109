//! Hermite normal forms of integer matrices.
//!
//! The row-style form `H = U·A` (echelon rows, positive pivots, entries above a
//! pivot reduced into `[0, pivot)`) is unique for the row lattice of `A`, which is
//! what [`canonical_form`](super::canonical::canonical_form) relies on. The
//! public [`hermite_normal_form`] is the column-style transpose of it.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::rational::Integer;

pub type IntMatrix = Vec<Vec<Integer>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn transpose(a: &IntMatrix) -> IntMatrix {
    let rows = a.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = a[0].len();
    (0..cols).map(|j| (0..rows).map(|i| a[i][j].clone()).collect()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j])
                })
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free Bareiss elimination.
pub fn det(a: &IntMatrix) -> Integer {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(p) => {
                    m.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

// rows[i] <- a*rows[i] + b*rows[j]; rows[j] <- c*rows[i] + d*rows[j]
fn combine_rows(m: &mut IntMatrix, i: usize, j: usize, coef: [&Integer; 4]) {
    let [a, b, c, d] = coef;
    let cols = m[i].len();
    for k in 0..cols {
        let x = m[i][k].clone();
        let y = m[j][k].clone();
        m[i][k] = a * &x + b * &y;
        m[j][k] = c * &x + d * &y;
    }
}

/// Row-style Hermite normal form: returns `(H, U)` with `U·A = H`, `U` unimodular.
pub fn row_hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let rows = a.len();
    let mut h = a.clone();
    let mut u = identity(rows);
    if rows == 0 {
        return (h, u);
    }
    let cols = h[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            if h[i][c].is_zero() {
                continue;
            }
            if h[r][c].is_zero() {
                h.swap(r, i);
                u.swap(r, i);
                continue;
            }
            let egcd = h[r][c].extended_gcd(&h[i][c]);
            let (g, x, y) = (egcd.gcd, egcd.x, egcd.y);
            let p = &h[r][c] / &g;
            let q = &h[i][c] / &g;
            // [x y; -q p] has determinant x*p + y*q = 1
            let nq = -q;
            combine_rows(&mut h, r, i, [&x, &y, &nq, &p]);
            combine_rows(&mut u, r, i, [&x, &y, &nq, &p]);
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            for x in h[r].iter_mut() {
                *x = -&*x;
            }
            for x in u[r].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot = h[r][c].clone();
        for i in 0..r {
            let q = h[i][c].div_floor(&pivot);
            if q.is_zero() {
                continue;
            }
            for k in 0..cols {
                let v = &q * &h[r][k];
                h[i][k] -= v;
            }
            for k in 0..rows {
                let v = &q * &u[r][k];
                u[i][k] -= v;
            }
        }
        r += 1;
    }
    (h, u)
}

/// Column-style Hermite normal form: returns `(H, U)` with `A·U = H`, `U`
/// unimodular and `H` lower triangular (column echelon) with positive pivots and
/// entries left of each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (h, u) = row_hnf(&transpose(a));
    (transpose(&h), transpose(&u))
}

/// Basis of the integer right kernel `{x in Z^n : A x = 0}`; always saturated.
pub fn integer_kernel(a: &IntMatrix, n: usize) -> IntMatrix {
    if a.is_empty() {
        return identity(n);
    }
    let (h, u) = hermite_normal_form(a);
    let rank = (0..n).filter(|&j| h.iter().any(|row| !row[j].is_zero())).count();
    (rank..n).map(|j| u.iter().map(|row| row[j].clone()).collect()).collect()
}
