use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::linalg;
use super::point::{Point, Rational};
use crate::error::{Error, Result};

/// Whether translations must be integral (`Aff_n(Z)`) or may be rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapMode {
    Strict,
    Weak,
}

/// `x ↦ M x + t` with an integer matrix `M`.
///
/// Construction only checks shapes; unimodularity is a property queried
/// with [`AffineUnimodularMap::is_unimodular`] so that certificates can
/// carry (and be rejected for) bad maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineUnimodularMap {
    matrix: Vec<Vec<BigInt>>,
    translation: Point,
    mode: MapMode,
}

impl AffineUnimodularMap {
    pub fn new(matrix: Vec<Vec<BigInt>>, translation: Point, mode: MapMode) -> Result<Self> {
        let n = matrix.len();
        if let Some(row) = matrix.iter().find(|r| r.len() != n) {
            return Err(Error::Malformed(format!(
                "matrix is not square: {} rows, a row of length {}",
                n,
                row.len()
            )));
        }
        if translation.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: translation.dim(),
            });
        }
        Ok(Self {
            matrix,
            translation,
            mode,
        })
    }

    pub fn from_ints(matrix: &[&[i64]], translation: Point, mode: MapMode) -> Result<Self> {
        let m = matrix
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::new(m, translation, mode)
    }

    pub fn identity(n: usize) -> Self {
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
            .collect();
        Self {
            matrix,
            translation: Point::origin(n),
            mode: MapMode::Strict,
        }
    }

    pub fn translation_by(t: Point, mode: MapMode) -> Self {
        let mut m = Self::identity(t.dim());
        m.translation = t;
        m.mode = mode;
        m
    }

    pub fn linear(matrix: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = matrix.len();
        Self::new(matrix, Point::origin(n), MapMode::Strict)
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<BigInt>] {
        &self.matrix
    }

    pub fn translation(&self) -> &Point {
        &self.translation
    }

    pub fn mode(&self) -> MapMode {
        self.mode
    }

    pub fn with_mode(mut self, mode: MapMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_translation(mut self, translation: Point) -> Self {
        self.translation = translation;
        self
    }

    fn rational_matrix(&self) -> Vec<Vec<Rational>> {
        self.matrix
            .iter()
            .map(|r| r.iter().cloned().map(Rational::from_integer).collect())
            .collect()
    }

    pub fn determinant(&self) -> BigInt {
        linalg::determinant(&self.rational_matrix()).to_integer()
    }

    /// `|det M| = 1`, and in strict mode an integral translation.
    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one() && (self.mode == MapMode::Weak || self.translation.is_integral())
    }

    pub fn apply(&self, x: &Point) -> Result<Point> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.dim(),
            });
        }
        let coords = self
            .matrix
            .iter()
            .zip(self.translation.coords())
            .map(|(row, t)| {
                row.iter()
                    .zip(x.coords())
                    .fold(t.clone(), |acc, (m, xi)| acc + xi * Rational::from_integer(m.clone()))
            })
            .collect();
        Ok(Point::new(coords))
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: inner.dim(),
            });
        }
        let n = self.dim();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(BigInt::zero(), |acc, k| acc + &self.matrix[i][k] * &inner.matrix[k][j]))
                    .collect()
            })
            .collect();
        let translation = self.apply(&inner.translation)?;
        let mode = if self.mode == MapMode::Weak || inner.mode == MapMode::Weak {
            MapMode::Weak
        } else {
            MapMode::Strict
        };
        Ok(Self {
            matrix,
            translation,
            mode,
        })
    }

    /// Inverse map; integral because `|det M| = 1`.
    pub fn inverse(&self) -> Result<Self> {
        let det = self.determinant();
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        let inv = linalg::inverse(&self.rational_matrix()).expect("unit determinant");
        let matrix: Vec<Vec<BigInt>> = inv.iter().map(|r| r.iter().map(|q| q.to_integer()).collect()).collect();
        let linear = Self {
            matrix,
            translation: Point::origin(self.dim()),
            mode: self.mode,
        };
        let t = linear.apply(&self.translation)?;
        Ok(linear.with_translation(t.scale(&-Rational::one())))
    }

    /// The map conjugated by the dilation `x ↦ k x`: `x ↦ M x + k t`.
    pub fn dilated(&self, k: &Rational) -> Self {
        Self {
            matrix: self.matrix.clone(),
            translation: self.translation.scale(k),
            mode: self.mode,
        }
    }
}
