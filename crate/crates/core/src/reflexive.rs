//! Lattice polygons: lattice length, reflexivity, polar duality and the
//! twelve-point identity for convex reflexive polygons.

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::counting::count_interior;
use crate::error::{Error, Result};
use crate::geometry::{Point, RationalPolytope};

/// A cyclically ordered polygon with integer vertices.
///
/// Convex polygons are normalized on construction: counterclockwise, with
/// repeated and collinear (non-corner) vertices dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePolygon {
    vertices: Vec<[i64; 2]>,
    convex: bool,
}

fn cross(o: [i64; 2], a: [i64; 2], b: [i64; 2]) -> i128 {
    let (ax, ay) = ((a[0] - o[0]) as i128, (a[1] - o[1]) as i128);
    let (bx, by) = ((b[0] - o[0]) as i128, (b[1] - o[1]) as i128);
    ax * by - ay * bx
}

fn twice_signed_area(v: &[[i64; 2]]) -> i128 {
    (0..v.len())
        .map(|i| {
            let (p, q) = (v[i], v[(i + 1) % v.len()]);
            p[0] as i128 * q[1] as i128 - p[1] as i128 * q[0] as i128
        })
        .sum()
}

impl LatticePolygon {
    pub fn new(vertices: Vec<[i64; 2]>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::Malformed(format!(
                "a polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        let area = twice_signed_area(&vertices);
        let n = vertices.len();
        let convex = area != 0
            && (0..n).all(|i| {
                let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                vertices.iter().all(|&w| cross(a, b, w) * area.signum() >= 0)
            });
        if !convex {
            return Ok(Self { vertices, convex });
        }
        let mut v = vertices;
        if area < 0 {
            v.reverse();
        }
        loop {
            let n = v.len();
            let Some(i) = (0..n).find(|&i| cross(v[(i + n - 1) % n], v[i], v[(i + 1) % n]) == 0) else {
                break;
            };
            v.remove(i);
        }
        Ok(Self { vertices: v, convex })
    }

    pub fn from_points(points: &[Point]) -> Result<Self> {
        let vertices = points
            .iter()
            .map(|p| {
                if p.dim() != 2 {
                    return Err(Error::DimensionMismatch {
                        expected: 2,
                        found: p.dim(),
                    });
                }
                let ints = p.to_integers().ok_or_else(|| Error::NotIntegral(p.to_string()))?;
                let x = ints[0]
                    .to_i64()
                    .ok_or_else(|| Error::Malformed("coordinate out of range".into()))?;
                let y = ints[1]
                    .to_i64()
                    .ok_or_else(|| Error::Malformed("coordinate out of range".into()))?;
                Ok([x, y])
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(vertices)
    }

    pub fn vertices(&self) -> &[[i64; 2]] {
        &self.vertices
    }

    pub fn is_convex(&self) -> bool {
        self.convex
    }

    pub fn points(&self) -> Vec<Point> {
        self.vertices.iter().map(|v| Point::from_ints(v)).collect()
    }

    pub fn to_polytope(&self) -> RationalPolytope {
        RationalPolytope::reduce_to_vertices(&self.points()).expect("polygon has vertices")
    }

    pub fn translate(&self, t: [i64; 2]) -> Self {
        Self {
            vertices: self.vertices.iter().map(|v| [v[0] + t[0], v[1] + t[1]]).collect(),
            convex: self.convex,
        }
    }

    /// Image under `x ↦ M x + t`.
    pub fn transform(&self, m: [[i64; 2]; 2], t: [i64; 2]) -> Result<Self> {
        Self::new(
            self.vertices
                .iter()
                .map(|v| {
                    [
                        m[0][0] * v[0] + m[0][1] * v[1] + t[0],
                        m[1][0] * v[0] + m[1][1] * v[1] + t[1],
                    ]
                })
                .collect(),
        )
    }

    /// Translates the unique interior lattice point to the origin.
    pub fn centered(&self) -> Result<Self> {
        let interior = self.interior_points()?;
        match interior.as_slice() {
            [p] => Ok(self.translate([-p[0], -p[1]])),
            _ => Err(Error::NotReflexive(interior.len() as u64)),
        }
    }

    fn interior_points(&self) -> Result<Vec<[i64; 2]>> {
        if !self.convex {
            return Err(Error::NotConvex);
        }
        let p = self.to_polytope();
        let region = crate::counting::LatticeRegion::interior_of(&p);
        Ok(region
            .points(&1.into())
            .into_iter()
            .map(|x| [x[0].to_i64().expect("small"), x[1].to_i64().expect("small")])
            .collect())
    }

    /// Equal up to a cyclic shift of the vertex list.
    pub fn same_cycle(&self, other: &Self) -> bool {
        let n = self.vertices.len();
        n == other.vertices.len() && (0..n).any(|s| (0..n).all(|i| self.vertices[(i + s) % n] == other.vertices[i]))
    }
}

/// Number of lattice segments on the boundary: `Σ gcd(|Δx|, |Δy|)` over edges.
pub fn lattice_length(p: &LatticePolygon) -> u64 {
    let v = p.vertices();
    (0..v.len())
        .map(|i| {
            let (a, b) = (v[i], v[(i + 1) % v.len()]);
            (b[0] - a[0]).unsigned_abs().gcd(&(b[1] - a[1]).unsigned_abs())
        })
        .sum()
}

/// Exactly one lattice point strictly inside. Convex polygons only.
pub fn is_reflexive(p: &LatticePolygon) -> Result<bool> {
    if !p.is_convex() {
        return Err(Error::NotConvex);
    }
    Ok(count_interior(&p.to_polytope(), 1)? == 1)
}

/// Polar dual `{y : ⟨x, y⟩ <= 1 for all x ∈ P}` of a convex reflexive
/// polygon whose interior lattice point is the origin. Each edge of `P`
/// yields the dual vertex where both of its endpoints' inequalities are tight.
pub fn dual_polygon(p: &LatticePolygon) -> Result<LatticePolygon> {
    if !p.is_convex() {
        return Err(Error::NotConvex);
    }
    let interior = count_interior(&p.to_polytope(), 1)?;
    if interior != 1 {
        return Err(Error::NotReflexive(interior));
    }
    let v = p.vertices();
    let n = v.len();
    if (0..n).any(|i| cross(v[i], v[(i + 1) % n], [0, 0]) <= 0) {
        return Err(Error::NotCentered);
    }
    let dual = (0..n)
        .map(|i| {
            let ([a, b], [c, d]) = (v[i], v[(i + 1) % n]);
            let det = a * d - b * c;
            let (x, y) = (d - b, a - c);
            if x % det != 0 || y % det != 0 {
                return Err(Error::NotIntegral(format!("({x}/{det}, {y}/{det})")));
            }
            Ok([x / det, y / det])
        })
        .collect::<Result<Vec<_>>>()?;
    LatticePolygon::new(dual)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwelveReport {
    pub length: u64,
    pub dual_length: u64,
    pub passed: bool,
}

impl TwelveReport {
    pub fn sum(&self) -> u64 {
        self.length + self.dual_length
    }
}

/// `lattice_length(P) + lattice_length(P*) = 12`.
pub fn twelve_check(p: &LatticePolygon) -> Result<TwelveReport> {
    let dual = dual_polygon(p)?;
    let length = lattice_length(p);
    let dual_length = lattice_length(&dual);
    Ok(TwelveReport {
        length,
        dual_length,
        passed: length + dual_length == 12,
    })
}
