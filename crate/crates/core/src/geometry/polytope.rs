use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::affine::AffineUnimodularMap;
use super::linalg;
use super::lp::{self, LpOutcome};
use super::point::{int, lcm_of_denominators, Point, Rational};
use super::region::{normalized, AffineFrame, AffineFunctional, Inequality, LinearRegion};
use super::simplex::{Location, Simplex};
use crate::error::{Error, Result};

/// Largest polytope dimension handled by triangulation and Ehrhart routines.
pub const MAX_DIM: usize = 3;

/// Convex hull of finitely many rational points, stored by its vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPolytope {
    vertices: Vec<Point>,
}

/// A facet: its inequality `f(x) >= 0` on the affine hull, and the indices of
/// the vertices on it.
#[derive(Debug, Clone)]
pub struct Facet {
    pub functional: AffineFunctional,
    pub vertices: Vec<usize>,
}

impl RationalPolytope {
    /// Convex hull of `points`, keeping exactly the extreme points in input
    /// order. Extremality is decided by exact linear feasibility.
    pub fn reduce_to_vertices(points: &[Point]) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyInput)?;
        if let Some(p) = points.iter().find(|p| p.dim() != first.dim()) {
            return Err(Error::DimensionMismatch {
                expected: first.dim(),
                found: p.dim(),
            });
        }
        let mut seen = BTreeSet::new();
        let mut kept: Vec<Point> = points.iter().filter(|p| seen.insert(*p)).cloned().collect();
        let mut i = 0;
        while i < kept.len() {
            let others: Vec<Point> = kept
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p.clone())
                .collect();
            if !others.is_empty() && in_convex_hull(&others, &kept[i]) {
                kept.remove(i);
            } else {
                i += 1;
            }
        }
        Ok(Self { vertices: kept })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].dim()
    }

    /// Dimension of the affine hull.
    pub fn dim(&self) -> usize {
        AffineFrame::of(&self.vertices).dim()
    }

    /// Least `D` such that `D·P` is integral.
    pub fn denominator(&self) -> BigInt {
        lcm_of_denominators(self.vertices.iter().flat_map(Point::coords))
    }

    pub fn is_integral(&self) -> bool {
        self.denominator().is_one()
    }

    pub fn dilate(&self, k: i64) -> Result<Self> {
        if k <= 0 {
            return Err(Error::InvalidDilation(k));
        }
        Ok(self.scaled(&int(k)))
    }

    /// Scaling by a positive rational keeps extreme points extreme.
    pub(crate) fn scaled(&self, k: &Rational) -> Self {
        Self {
            vertices: self.vertices.iter().map(|v| v.scale(k)).collect(),
        }
    }

    pub fn translate(&self, t: &Point) -> Self {
        Self {
            vertices: self.vertices.iter().map(|v| v + t).collect(),
        }
    }

    /// Image under an affine map. A singular map is allowed; the image is re-reduced.
    pub fn map(&self, map: &AffineUnimodularMap) -> Result<Self> {
        let image = self.vertices.iter().map(|v| map.apply(v)).collect::<Result<Vec<_>>>()?;
        if map.determinant().is_zero() {
            Self::reduce_to_vertices(&image)
        } else {
            Ok(Self { vertices: image })
        }
    }

    /// Interior/boundary/outside relative to the affine hull, decided by an
    /// exact LP: maximize `t` over convex combinations with every weight `>= t`.
    pub fn membership_classify(&self, x: &Point) -> Location {
        if x.dim() != self.ambient_dim() {
            return Location::Outside;
        }
        match max_min_weight(&self.vertices, x) {
            None => Location::Outside,
            Some(t) if t.is_positive() => Location::Interior,
            Some(_) => Location::Boundary,
        }
    }

    /// Facet inequalities on the affine hull, oriented inward and deduplicated.
    pub fn facets(&self) -> Vec<Facet> {
        let frame = AffineFrame::of(&self.vertices);
        let d = frame.dim();
        if d == 0 {
            return Vec::new();
        }
        let local: Vec<Vec<Rational>> = self.vertices.iter().map(|v| frame.local(v)).collect();
        let mut facets: Vec<Facet> = Vec::new();
        for combo in combinations(local.len(), d) {
            let rows: Vec<Vec<Rational>> = combo[1..]
                .iter()
                .map(|&i| local[i].iter().zip(&local[combo[0]]).map(|(a, b)| a - b).collect())
                .collect();
            let ns = linalg::nullspace(&rows, d);
            if ns.len() != 1 {
                continue;
            }
            let normal = &ns[0];
            let offset = dot(normal, &local[combo[0]]);
            let values: Vec<Rational> = local.iter().map(|u| dot(normal, u) - &offset).collect();
            let sign = if values.iter().all(|v| !v.is_negative()) {
                Rational::one()
            } else if values.iter().all(|v| !v.is_positive()) {
                -Rational::one()
            } else {
                continue;
            };
            let a: Vec<Rational> = normal.iter().map(|x| x * &sign).collect();
            let functional = normalized(&frame.pull_back(&a, -(&offset * &sign)));
            if facets.iter().any(|f| f.functional == functional) {
                continue;
            }
            let on: Vec<usize> = (0..values.len()).filter(|&i| values[i].is_zero()).collect();
            facets.push(Facet {
                functional,
                vertices: on,
            });
        }
        facets
    }

    /// The closed polytope as equalities (affine hull) plus facet inequalities.
    pub fn region(&self) -> LinearRegion {
        let frame = AffineFrame::of(&self.vertices);
        LinearRegion {
            ambient: self.ambient_dim(),
            equalities: frame.hull,
            inequalities: self
                .facets()
                .into_iter()
                .map(|f| Inequality {
                    functional: f.functional,
                    strict: false,
                })
                .collect(),
        }
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.membership_classify(x) != Location::Outside
    }

    /// Pulling triangulation: cone the first vertex over the recursively
    /// triangulated facets that avoid it. Vertices of the cells are vertices
    /// of the polytope; the global vertex order makes facet triangulations
    /// agree on shared faces.
    pub fn triangulate(&self) -> Result<Vec<Simplex>> {
        let d = self.dim();
        if d > MAX_DIM {
            return Err(Error::UnsupportedDimension { dim: d, max: MAX_DIM });
        }
        pulling(&self.vertices).into_iter().map(Simplex::closed).collect()
    }

    /// Volume in the ambient space (0 unless full-dimensional).
    pub fn volume(&self) -> Result<Rational> {
        if self.dim() < self.ambient_dim() {
            return Ok(Rational::zero());
        }
        Ok(self
            .triangulate()?
            .iter()
            .fold(Rational::zero(), |acc, s| acc + s.volume()))
    }
}

fn pulling(vertices: &[Point]) -> Vec<Vec<Point>> {
    let poly = RationalPolytope {
        vertices: vertices.to_vec(),
    };
    if poly.dim() == 0 {
        return vec![vec![vertices[0].clone()]];
    }
    let mut cells = Vec::new();
    for facet in poly.facets() {
        if facet.vertices.contains(&0) {
            continue;
        }
        let sub: Vec<Point> = facet.vertices.iter().map(|&i| vertices[i].clone()).collect();
        for cell in pulling(&sub) {
            let mut c = vec![vertices[0].clone()];
            c.extend(cell);
            cells.push(c);
        }
    }
    cells
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Whether `x` is a convex combination of `points`.
pub(crate) fn in_convex_hull(points: &[Point], x: &Point) -> bool {
    let m = points.len();
    let n = x.dim();
    let mut a = Vec::with_capacity(n + 1);
    a.push(vec![Rational::one(); m]);
    for j in 0..n {
        a.push(points.iter().map(|p| p[j].clone()).collect());
    }
    let mut b = vec![Rational::one()];
    b.extend(x.coords().iter().cloned());
    lp::maximize(&vec![Rational::zero(); m], &a, &b).is_feasible()
}

/// `max t` such that `x = Σ λ_i p_i`, `Σ λ_i = 1`, `λ_i >= t >= 0`; `None`
/// when `x` is not in the hull.
pub(crate) fn max_min_weight(points: &[Point], x: &Point) -> Option<Rational> {
    let m = points.len();
    let n = x.dim();
    // variables: λ (m), t, slack (m)
    let width = 2 * m + 1;
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut row = vec![Rational::zero(); width];
    row[..m].fill(Rational::one());
    a.push(row);
    b.push(Rational::one());
    for j in 0..n {
        let mut row = vec![Rational::zero(); width];
        for (i, p) in points.iter().enumerate() {
            row[i] = p[j].clone();
        }
        a.push(row);
        b.push(x[j].clone());
    }
    for i in 0..m {
        let mut row = vec![Rational::zero(); width];
        row[i] = Rational::one();
        row[m] = -Rational::one();
        row[m + 1 + i] = -Rational::one();
        a.push(row);
        b.push(Rational::zero());
    }
    let mut c = vec![Rational::zero(); width];
    c[m] = Rational::one();
    match lp::maximize(&c, &a, &b) {
        LpOutcome::Optimal { value, .. } => Some(value),
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("t is bounded by the weights"),
    }
}
