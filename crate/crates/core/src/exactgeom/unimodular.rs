use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::hnf::{det, IntMatrix};
use super::polytope::{hull, Polytope};
use super::rational::{Integer, Point, Rational};
use crate::error::{GeomError, Result};

/// Lattice-preserving affine isomorphism `x ↦ M x + t` with `|det M| = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnimodularMap {
    matrix: IntMatrix,
    translation: Vec<Integer>,
}

impl UnimodularMap {
    pub fn new(matrix: IntMatrix, translation: Vec<Integer>) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) || translation.len() != n {
            return Err(GeomError::DimensionMismatch { expected: n, found: translation.len() });
        }
        if det(&matrix).abs() != BigInt::one() {
            return Err(GeomError::InvalidArgument("matrix is not unimodular".into()));
        }
        Ok(Self { matrix, translation })
    }

    pub fn from_i64(matrix: &[Vec<i64>], translation: &[i64]) -> Result<Self> {
        Self::new(
            matrix.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
            translation.iter().map(|&x| BigInt::from(x)).collect(),
        )
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn translation(&self) -> &[Integer] {
        &self.translation
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply_linear(&self, x: &[Rational]) -> Point {
        self.matrix.iter().map(|row| super::rational::dot_int(row, x)).collect()
    }

    pub fn apply(&self, x: &[Rational]) -> Point {
        self.apply_linear(x)
            .into_iter()
            .zip(&self.translation)
            .map(|(y, t)| y + Rational::from_integer(t.clone()))
            .collect()
    }

    pub fn apply_polytope(&self, p: &Polytope) -> Result<Polytope> {
        if p.dim() != self.dim() {
            return Err(GeomError::DimensionMismatch { expected: self.dim(), found: p.dim() });
        }
        let images: Vec<Point> = p.vertices().iter().map(|v| self.apply(v)).collect();
        hull(&images)
    }

    /// Transforms a linear functional `u` so that `u'·(M x + t)` differs from `u·x` by a constant.
    pub fn transform_functional(&self, u: &[Integer]) -> Result<Vec<Integer>> {
        // u' = u M^{-1}, computed via the adjugate-free rational inverse
        let m: Vec<Vec<Rational>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
            .collect();
        let inv = super::linalg::inverse(&m).ok_or(GeomError::InvalidArgument("singular".into()))?;
        let n = self.dim();
        Ok((0..n)
            .map(|j| {
                (0..n)
                    .map(|i| Rational::from_integer(u[i].clone()) * &inv[i][j])
                    .sum::<Rational>()
                    .to_integer()
            })
            .collect())
    }
}
