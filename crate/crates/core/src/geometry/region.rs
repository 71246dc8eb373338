//! Affine frames and linear constraint systems.

use num_traits::{Signed, Zero};

use super::linalg::{self, Matrix};
use super::point::{Point, Rational};

/// The affine function `x ↦ coeffs·x + constant`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineFunctional {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
}

impl AffineFunctional {
    pub fn eval(&self, x: &Point) -> Rational {
        x.dot(&self.coeffs) + &self.constant
    }

    /// Value at `x / k`, scaled by `k`: `coeffs·x + k·constant`.
    pub fn eval_dilated(&self, x: &Point, k: &Rational) -> Rational {
        x.dot(&self.coeffs) + &self.constant * k
    }

    fn scaled(&self, f: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * f).collect(),
            constant: &self.constant * f,
        }
    }

    fn combine(parts: &[(Rational, &AffineFunctional)], constant: Rational, n: usize) -> Self {
        let mut out = Self {
            coeffs: vec![Rational::zero(); n],
            constant,
        };
        for (w, g) in parts {
            for (c, gc) in out.coeffs.iter_mut().zip(&g.coeffs) {
                *c += w * gc;
            }
            out.constant += w * &g.constant;
        }
        out
    }
}

/// An inequality `f(x) >= 0`, or `f(x) > 0` when strict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    pub functional: AffineFunctional,
    pub strict: bool,
}

/// `{x : e(x) = 0 for every equality, f(x) >= 0 (> 0) for every inequality}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRegion {
    pub ambient: usize,
    pub equalities: Vec<AffineFunctional>,
    pub inequalities: Vec<Inequality>,
}

impl LinearRegion {
    pub fn contains(&self, x: &Point) -> bool {
        self.equalities.iter().all(|e| e.eval(x).is_zero())
            && self.inequalities.iter().all(|ineq| {
                let v = ineq.functional.eval(x);
                if ineq.strict {
                    v.is_positive()
                } else {
                    !v.is_negative()
                }
            })
    }

    /// Every inequality made strict: the relative interior when the
    /// inequalities are irredundant facet inequalities.
    pub fn interior(&self) -> Self {
        let mut r = self.clone();
        for ineq in &mut r.inequalities {
            ineq.strict = true;
        }
        r
    }

    pub fn closure(&self) -> Self {
        let mut r = self.clone();
        for ineq in &mut r.inequalities {
            ineq.strict = false;
        }
        r
    }
}

/// An affine coordinate system on the affine hull of a point set.
#[derive(Debug, Clone)]
pub struct AffineFrame {
    pub origin: Point,
    /// Local coordinates on the hull, one functional per hull dimension.
    pub coords: Vec<AffineFunctional>,
    /// Equations cutting out the affine hull.
    pub hull: Vec<AffineFunctional>,
}

impl AffineFrame {
    /// Frame of the affine hull of `points` (nonempty, common dimension).
    /// The directions are `p_i - p_0` for a greedily chosen independent
    /// subset, so for affinely independent input the local coordinates are
    /// barycentric coordinates 1..m.
    pub fn of(points: &[Point]) -> Self {
        let origin = points[0].clone();
        let n = origin.dim();
        let mut basis: Matrix = Vec::new();
        for p in &points[1..] {
            let dir = (p - &origin).into_coords();
            basis.push(dir);
            if linalg::rank(&basis) < basis.len() {
                basis.pop();
            }
        }
        let d = basis.len();

        let (_, pivots) = linalg::rref(&basis);
        // columns of the n×d direction matrix = rows of `basis`; pick d independent coordinates
        let square: Matrix = (0..d)
            .map(|r| (0..d).map(|j| basis[j][pivots[r]].clone()).collect())
            .collect();
        let inv = linalg::inverse(&square).unwrap_or_default();
        let coords = (0..d)
            .map(|j| {
                let mut coeffs = vec![Rational::zero(); n];
                for r in 0..d {
                    coeffs[pivots[r]] = inv[j][r].clone();
                }
                let constant = -origin.dot(&coeffs);
                AffineFunctional { coeffs, constant }
            })
            .collect();
        let hull = linalg::nullspace(&basis, n)
            .into_iter()
            .map(|a| {
                let constant = -origin.dot(&a);
                AffineFunctional { coeffs: a, constant }
            })
            .collect();
        Self { origin, coords, hull }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn ambient(&self) -> usize {
        self.origin.dim()
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.hull.iter().all(|e| e.eval(x).is_zero())
    }

    pub fn local(&self, x: &Point) -> Vec<Rational> {
        self.coords.iter().map(|f| f.eval(x)).collect()
    }

    /// Pulls back a functional on local coordinates, `u ↦ a·u + c`, to the ambient space.
    pub(crate) fn pull_back(&self, a: &[Rational], c: Rational) -> AffineFunctional {
        let parts: Vec<(Rational, &AffineFunctional)> = a.iter().cloned().zip(self.coords.iter()).collect();
        AffineFunctional::combine(&parts, c, self.ambient())
    }
}

/// Scales a functional so that its coefficients are coprime integers, for dedup.
pub(crate) fn normalized(f: &AffineFunctional) -> AffineFunctional {
    let Some(lead) = f.coeffs.iter().find(|c| !c.is_zero()) else {
        return f.clone();
    };
    f.scaled(&lead.abs().recip())
}
