use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::affine::AffineUnimodularMap;
use super::linalg;
use super::point::{lcm_of_denominators, Point, Rational};
use super::region::{AffineFrame, AffineFunctional, Inequality, LinearRegion};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Openness {
    Closed,
    /// Relatively open: the interior with respect to the affine hull.
    Open,
}

/// Position of a point relative to a convex set and its affine hull.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    Interior,
    Boundary,
    Outside,
}

/// Convex hull of affinely independent points, closed or relatively open.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Simplex {
    vertices: Vec<Point>,
    openness: Openness,
}

impl Simplex {
    pub fn new(vertices: Vec<Point>, openness: Openness) -> Result<Self> {
        let first = vertices.first().ok_or(Error::EmptyInput)?;
        let n = first.dim();
        if let Some(v) = vertices.iter().find(|v| v.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.dim(),
            });
        }
        let diffs: Vec<Vec<Rational>> = vertices[1..].iter().map(|v| (v - first).into_coords()).collect();
        if linalg::rank(&diffs) != diffs.len() {
            return Err(Error::AffinelyDependent);
        }
        Ok(Self { vertices, openness })
    }

    pub fn closed(vertices: Vec<Point>) -> Result<Self> {
        Self::new(vertices, Openness::Closed)
    }

    pub fn open(vertices: Vec<Point>) -> Result<Self> {
        Self::new(vertices, Openness::Open)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn openness(&self) -> Openness {
        self.openness
    }

    pub fn is_open(&self) -> bool {
        self.openness == Openness::Open
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn ambient(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn with_openness(&self, openness: Openness) -> Self {
        Self {
            vertices: self.vertices.clone(),
            openness,
        }
    }

    /// Sorted vertex list; equal keys mean equal point sets.
    pub fn key(&self) -> Vec<Point> {
        let mut v = self.vertices.clone();
        v.sort();
        v
    }

    pub fn denominator(&self) -> BigInt {
        lcm_of_denominators(self.vertices.iter().flat_map(Point::coords))
    }

    /// Barycentric coordinate functionals `λ_0, …, λ_d` as affine functions of `x`.
    pub fn barycentric_functionals(&self) -> (Vec<AffineFunctional>, Vec<AffineFunctional>) {
        let frame = AffineFrame::of(&self.vertices);
        let n = self.ambient();
        let mut lambda0 = AffineFunctional {
            coeffs: vec![Rational::zero(); n],
            constant: Rational::one(),
        };
        for f in &frame.coords {
            for (c, fc) in lambda0.coeffs.iter_mut().zip(&f.coeffs) {
                *c -= fc;
            }
            lambda0.constant -= &f.constant;
        }
        let mut all = vec![lambda0];
        all.extend(frame.coords.iter().cloned());
        (all, frame.hull)
    }

    /// Affine coordinates of `x`, or `None` when `x` is off the affine hull.
    pub fn barycentric_coordinates(&self, x: &Point) -> Option<Vec<Rational>> {
        if x.dim() != self.ambient() {
            return None;
        }
        let (lambdas, hull) = self.barycentric_functionals();
        if !hull.iter().all(|e| e.eval(x).is_zero()) {
            return None;
        }
        Some(lambdas.iter().map(|l| l.eval(x)).collect())
    }

    /// Location relative to the closed simplex, ignoring openness.
    pub fn classify(&self, x: &Point) -> Location {
        match self.barycentric_coordinates(x) {
            None => Location::Outside,
            Some(l) if l.iter().all(Signed::is_positive) => Location::Interior,
            Some(l) if l.iter().all(|c| !c.is_negative()) => Location::Boundary,
            Some(_) => Location::Outside,
        }
    }

    pub fn contains(&self, x: &Point) -> bool {
        match self.classify(x) {
            Location::Interior => true,
            Location::Boundary => self.openness == Openness::Closed,
            Location::Outside => false,
        }
    }

    /// The simplex as a constraint system honoring its openness.
    pub fn region(&self) -> LinearRegion {
        let (lambdas, hull) = self.barycentric_functionals();
        LinearRegion {
            ambient: self.ambient(),
            equalities: hull,
            inequalities: lambdas
                .into_iter()
                .map(|functional| Inequality {
                    functional,
                    strict: self.is_open(),
                })
                .collect(),
        }
    }

    /// Euclidean volume when full-dimensional in the ambient space, else 0.
    pub fn volume(&self) -> Rational {
        let d = self.dim();
        if d != self.ambient() {
            return Rational::zero();
        }
        let rows: Vec<Vec<Rational>> = self.vertices[1..]
            .iter()
            .map(|v| (v - &self.vertices[0]).into_coords())
            .collect();
        let factorial: BigInt = (1..=d).map(BigInt::from).product();
        linalg::determinant(&rows).abs() / Rational::from_integer(factorial)
    }

    pub fn dilate(&self, k: &Rational) -> Self {
        Self {
            vertices: self.vertices.iter().map(|v| v.scale(k)).collect(),
            openness: self.openness,
        }
    }

    /// Image under an affine map; fails if the map collapses the simplex.
    pub fn map(&self, map: &AffineUnimodularMap) -> Result<Self> {
        let vertices = self.vertices.iter().map(|v| map.apply(v)).collect::<Result<Vec<_>>>()?;
        Self::new(vertices, self.openness)
    }

    /// Vertex-index sets of every nonempty face, largest faces first, then
    /// lexicographic.
    fn face_index_sets(&self) -> Vec<Vec<usize>> {
        let m = self.vertices.len();
        let mut sets: Vec<Vec<usize>> = (1u32..(1 << m))
            .map(|mask| (0..m).filter(|i| mask & (1 << i) != 0).collect())
            .collect();
        sets.sort_by(|a: &Vec<usize>, b: &Vec<usize>| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        sets
    }

    fn open_face(&self, indices: &[usize]) -> Self {
        Self {
            vertices: indices.iter().map(|&i| self.vertices[i].clone()).collect(),
            openness: Openness::Open,
        }
    }

    /// All relatively open faces; they partition the closed simplex.
    pub fn open_faces(&self) -> Vec<Simplex> {
        self.face_index_sets().iter().map(|s| self.open_face(s)).collect()
    }

    /// The open faces of the closed simplex that avoid every excluded closed
    /// facet. Their disjoint union is the simplex minus those facets.
    pub fn half_open_decompose(&self, excluded_facets: &[Vec<Point>]) -> Result<Vec<Simplex>> {
        if self.is_open() {
            return Err(Error::Malformed(
                "half-open decomposition needs a closed simplex".into(),
            ));
        }
        let excluded: Vec<BTreeSet<usize>> = excluded_facets
            .iter()
            .map(|facet| self.facet_indices(facet))
            .collect::<Result<_>>()?;
        Ok(self
            .face_index_sets()
            .iter()
            .filter(|face| !excluded.iter().any(|facet| face.iter().all(|i| facet.contains(i))))
            .map(|face| self.open_face(face))
            .collect())
    }

    fn facet_indices(&self, facet: &[Point]) -> Result<BTreeSet<usize>> {
        let not_a_facet = || Error::NotAFacet(facet.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
        let indices: BTreeSet<usize> = facet
            .iter()
            .map(|p| self.vertices.iter().position(|v| v == p).ok_or_else(not_a_facet))
            .collect::<Result<_>>()?;
        if indices.len() != facet.len() || indices.len() + 1 != self.vertices.len() {
            return Err(not_a_facet());
        }
        Ok(indices)
    }
}

/// Distinct open faces of a family of closed simplices, in first-seen order.
/// For a triangulation these partition its union.
pub fn open_faces_of_complex(simplices: &[Simplex]) -> Vec<Simplex> {
    let mut seen = BTreeSet::new();
    simplices
        .iter()
        .flat_map(Simplex::open_faces)
        .filter(|f| seen.insert(f.key()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::point::{int, rat};

    fn pt(c: &[i64]) -> Point {
        Point::from_ints(c)
    }

    fn standard_triangle() -> Simplex {
        Simplex::closed(vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1])]).unwrap()
    }

    #[test]
    fn rejects_dependent_vertices() {
        let s = Simplex::closed(vec![pt(&[0, 0]), pt(&[1, 1]), pt(&[2, 2])]);
        assert_eq!(s, Err(Error::AffinelyDependent));
        assert_eq!(Simplex::closed(vec![]), Err(Error::EmptyInput));
    }

    #[test]
    fn barycentric_examples() {
        let s = standard_triangle();
        let centroid = Point::new(vec![rat(1, 3), rat(1, 3)]);
        assert_eq!(
            s.barycentric_coordinates(&centroid).unwrap(),
            vec![rat(1, 3), rat(1, 3), rat(1, 3)]
        );
        assert_eq!(
            s.barycentric_coordinates(&pt(&[0, 0])).unwrap(),
            vec![int(1), int(0), int(0)]
        );
        let seg = Simplex::closed(vec![pt(&[0, 0]), pt(&[1, 0])]).unwrap();
        assert!(seg.barycentric_coordinates(&pt(&[0, 1])).is_none());
        assert_eq!(s.classify(&centroid), Location::Interior);
        assert_eq!(s.classify(&pt(&[1, 0])), Location::Boundary);
        assert_eq!(s.classify(&pt(&[1, 1])), Location::Outside);
    }

    #[test]
    fn volumes() {
        assert_eq!(standard_triangle().volume(), rat(1, 2));
        let t3 = Simplex::closed(vec![pt(&[0, 0]), Point::new(vec![int(1), rat(2, 3)]), pt(&[3, 0])]).unwrap();
        assert_eq!(t3.volume(), int(1));
        let seg = Simplex::closed(vec![pt(&[0, 0]), pt(&[1, 3])]).unwrap();
        assert_eq!(seg.volume(), int(0));
    }

    #[test]
    fn triangle_has_seven_open_faces() {
        let faces = standard_triangle().half_open_decompose(&[]).unwrap();
        assert_eq!(faces.len(), 7);
        assert_eq!(faces.iter().filter(|f| f.dim() == 2).count(), 1);
        assert_eq!(faces.iter().filter(|f| f.dim() == 1).count(), 3);
        assert_eq!(faces.iter().filter(|f| f.dim() == 0).count(), 3);
    }

    #[test]
    fn left_piece_of_split_triangle() {
        let a = pt(&[0, 0]);
        let b = pt(&[1, 0]);
        let c = Point::new(vec![int(1), rat(2, 3)]);
        let l = Simplex::closed(vec![a.clone(), b.clone(), c.clone()]).unwrap();
        let pieces = l.half_open_decompose(&[vec![b.clone(), c.clone()]]).unwrap();
        let keys: Vec<Vec<Point>> = pieces.iter().map(Simplex::key).collect();
        assert_eq!(pieces.len(), 4);
        assert!(keys.contains(&l.key()));
        assert!(keys.contains(&vec![a.clone(), b.clone()]));
        assert!(keys.contains(&vec![a.clone(), c.clone()]));
        assert!(keys.contains(&vec![a.clone()]));
        assert!(pieces.iter().all(Simplex::is_open));
    }

    #[test]
    fn segment_minus_endpoint() {
        let s = Simplex::closed(vec![pt(&[0]), pt(&[1])]).unwrap();
        let pieces = s.half_open_decompose(&[vec![pt(&[1])]]).unwrap();
        assert_eq!(pieces.len(), 2);
        assert_eq!(pieces[0].dim(), 1);
        assert_eq!(pieces[1].vertices(), &[pt(&[0])]);
    }

    #[test]
    fn excluding_a_non_facet_is_an_error() {
        let s = standard_triangle();
        assert!(matches!(
            s.half_open_decompose(&[vec![pt(&[0, 0])]]),
            Err(Error::NotAFacet(_))
        ));
        assert!(matches!(
            s.half_open_decompose(&[vec![pt(&[0, 0]), pt(&[5, 5])]]),
            Err(Error::NotAFacet(_))
        ));
    }

    #[test]
    fn open_region_excludes_boundary() {
        let s = standard_triangle().with_openness(Openness::Open);
        assert!(!s.region().contains(&pt(&[0, 0])));
        assert!(s.region().contains(&Point::new(vec![rat(1, 4), rat(1, 4)])));
        assert!(standard_triangle().region().contains(&pt(&[0, 0])));
        let vertex = Simplex::open(vec![pt(&[2, 3])]).unwrap();
        assert!(vertex.contains(&pt(&[2, 3])));
        assert!(vertex.region().contains(&pt(&[2, 3])));
    }
}
