//! Constructors for the named example polytopes and certificates.

use crate::equidecomp::{CertificateMode, DecompositionCertificate, Target};
use crate::error::{Error, Result};
use crate::geometry::{
    int, open_faces_of_complex, rat, AffineUnimodularMap, MapMode, Point, Rational, RationalPolytope, Simplex,
};
use crate::reflexive::LatticePolygon;

fn pt(c: &[i64]) -> Point {
    Point::from_ints(c)
}

fn hull(points: &[Point]) -> RationalPolytope {
    RationalPolytope::reduce_to_vertices(points).expect("fixture points are nonempty")
}

fn check_denominator(d: i64) -> Result<()> {
    if d < 2 {
        return Err(Error::Malformed(format!(
            "denominator parameter must be at least 2, got {d}"
        )));
    }
    Ok(())
}

pub fn unit_square() -> RationalPolytope {
    hull(&[pt(&[0, 0]), pt(&[1, 0]), pt(&[1, 1]), pt(&[0, 1])])
}

/// The segment `[0, p/q]`, `q >= 1`.
pub fn segment(p: i64, q: i64) -> Result<RationalPolytope> {
    if q < 1 {
        return Err(Error::Malformed(format!(
            "segment denominator must be positive, got {q}"
        )));
    }
    Ok(hull(&[pt(&[0]), Point::new(vec![rat(p, q)])]))
}

/// `conv{(0,0), (1, (D-1)/D), (D, 0)}`: denominator `D`, polynomial Ehrhart function.
pub fn mw_triangle(d: i64) -> Result<RationalPolytope> {
    check_denominator(d)?;
    Ok(hull(&[
        pt(&[0, 0]),
        Point::new(vec![int(1), rat(d - 1, d)]),
        pt(&[d, 0]),
    ]))
}

/// The integral triangle `conv{(1,0), (1,1), (D,0)}` the pieces rearrange into.
pub fn mw_target(d: i64) -> Result<RationalPolytope> {
    check_denominator(d)?;
    Ok(hull(&[pt(&[1, 0]), pt(&[1, 1]), pt(&[d, 0])]))
}

/// `x ↦ [[D-1, -D], [-1, 1]] x + (1, 1)`.
pub fn mw_map(d: i64) -> AffineUnimodularMap {
    AffineUnimodularMap::from_ints(&[&[d - 1, -d], &[-1, 1]], pt(&[1, 1]), MapMode::Strict)
        .expect("2x2 matrix with 2-vector")
}

/// Split the triangle along `x = 1`. The left part, without its edge on the
/// line, is carried by [`mw_map`]; the closed right part stays put.
pub fn mw_certificate(d: i64) -> Result<DecompositionCertificate> {
    check_denominator(d)?;
    let origin = pt(&[0, 0]);
    let foot = pt(&[1, 0]);
    let apex = Point::new(vec![int(1), rat(d - 1, d)]);
    let far = pt(&[d, 0]);

    let left = Simplex::closed(vec![origin, foot.clone(), apex.clone()])?;
    let right = Simplex::closed(vec![foot.clone(), far, apex.clone()])?;
    let left_pieces = left.half_open_decompose(&[vec![foot, apex]])?;
    let right_pieces = right.open_faces();

    let mut maps = vec![mw_map(d); left_pieces.len()];
    maps.extend(std::iter::repeat_n(
        AffineUnimodularMap::identity(2),
        right_pieces.len(),
    ));
    let mut pieces = left_pieces;
    pieces.extend(right_pieces);
    Ok(DecompositionCertificate {
        source: mw_triangle(d)?,
        target: Target::Polytope(mw_target(d)?),
        pieces,
        maps,
        mode: CertificateMode::Strict,
    })
}

/// Square pyramid with apex `(1/2, 0, 1/2)`: denominator 2, yet polynomial.
pub fn stanley_pyramid() -> RationalPolytope {
    hull(&[
        pt(&[0, 0, 0]),
        pt(&[1, 0, 0]),
        pt(&[1, 1, 0]),
        pt(&[0, 1, 0]),
        Point::new(vec![rat(1, 2), int(0), rat(1, 2)]),
    ])
}

/// Normal of the cutting plane through the pyramid.
pub const STANLEY_NORMAL: [i64; 3] = [-1, 1, 1];

/// Unimodular and fixing the plane `w·x = 0` pointwise.
pub fn stanley_map() -> AffineUnimodularMap {
    AffineUnimodularMap::from_ints(
        &[&[1, 0, 0], &[1, 0, -1], &[-1, 1, 2]],
        Point::origin(3),
        MapMode::Strict,
    )
    .expect("3x3 matrix")
}

pub fn stanley_target() -> RationalPolytope {
    hull(&[pt(&[0, 0, 0]), pt(&[1, 0, 0]), pt(&[1, 1, 0]), pt(&[0, 0, 1])])
}

/// Cut the pyramid by `w·x = 0`. Every open cell of the resulting
/// triangulation lying in `w·x >= 0` is carried by [`stanley_map`]; cells
/// on the plane go with that side, which is harmless because the map fixes
/// the plane. Everything else keeps the identity.
pub fn stanley_certificate() -> DecompositionCertificate {
    let pyramid = stanley_pyramid();
    let cells = pyramid.triangulate().expect("3-dimensional");
    let pieces = open_faces_of_complex(&cells);
    let w: Vec<Rational> = STANLEY_NORMAL.iter().map(|&c| int(c)).collect();
    let maps = pieces
        .iter()
        .map(|s| {
            if s.vertices().iter().all(|v| v.dot(&w) >= int(0)) {
                stanley_map()
            } else {
                AffineUnimodularMap::identity(3)
            }
        })
        .collect();
    DecompositionCertificate {
        source: pyramid,
        target: Target::Polytope(stanley_target()),
        pieces,
        maps,
        mode: CertificateMode::Strict,
    }
}

/// The triangle together with its mirror image in the x-axis.
pub fn quadrilateral_q(d: i64) -> Result<RationalPolytope> {
    check_denominator(d)?;
    Ok(hull(&[
        pt(&[0, 0]),
        Point::new(vec![int(1), rat(d - 1, d)]),
        pt(&[d, 0]),
        Point::new(vec![int(1), rat(1 - d, d)]),
    ]))
}

/// `[0, 1/2]` onto `[1/2, 1]` by a half-integral translation: weakly
/// equidecomposable at scale 2, not equidecomposable at scale 1.
pub fn weak_segment_certificate(mode: CertificateMode) -> DecompositionCertificate {
    let half = Point::new(vec![rat(1, 2)]);
    let closed = Simplex::closed(vec![pt(&[0]), half.clone()]).expect("distinct endpoints");
    let pieces = closed.open_faces();
    let shift = AffineUnimodularMap::translation_by(half.clone(), MapMode::Weak);
    DecompositionCertificate {
        source: hull(&[pt(&[0]), half.clone()]),
        target: Target::Polytope(hull(&[half, pt(&[1])])),
        maps: vec![shift; pieces.len()],
        pieces,
        mode,
    }
}

/// Convex reflexive polygons centered at their interior point. Includes
/// the square, the triangle `conv{(-1,-1),(2,-1),(-1,2)}`, their duals, and
/// `conv{(1,0),(0,1),(-1,-1)}`.
pub fn reflexive_samples() -> Vec<LatticePolygon> {
    let polys: &[&[[i64; 2]]] = &[
        &[[-1, -1], [1, -1], [1, 1], [-1, 1]],
        &[[1, 0], [0, 1], [-1, 0], [0, -1]],
        &[[-1, -1], [2, -1], [-1, 2]],
        &[[1, 1], [-1, 0], [0, -1]],
        &[[1, 0], [0, 1], [-1, -1]],
        &[[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]],
        &[[1, 0], [1, 1], [0, 1], [-1, 0], [0, -1]],
        &[[-1, -1], [1, -1], [0, 1]],
        &[[-1, -1], [3, -1], [-1, 1]],
        &[[-1, 0], [1, -1], [1, 1]],
    ];
    polys
        .iter()
        .map(|v| LatticePolygon::new(v.to_vec()).expect("fixture polygon"))
        .collect()
}

/// A fixture emitted by name.
#[derive(Debug, Clone)]
pub enum Fixture {
    Polytope(RationalPolytope),
    Certificate(DecompositionCertificate),
    Polygon(LatticePolygon),
}

/// Names accepted by [`by_name`], with the parameter each one reads.
pub const CATALOG: &[(&str, Option<&str>)] = &[
    ("unit-square", None),
    ("segment", Some("q")),
    ("mw-triangle", Some("D")),
    ("mw-target", Some("D")),
    ("mw-certificate", Some("D")),
    ("quadrilateral", Some("D")),
    ("stanley-pyramid", None),
    ("stanley-target", None),
    ("stanley-certificate", None),
    ("weak-segment-certificate", None),
    ("reflexive", Some("index")),
];

/// Looks up a fixture; `param` defaults to 3 for `D`, 2 for `q` and 0 for `index`.
pub fn by_name(name: &str, param: Option<i64>) -> Result<Fixture> {
    let d = param.unwrap_or(3);
    Ok(match name {
        "unit-square" => Fixture::Polytope(unit_square()),
        "segment" => Fixture::Polytope(segment(1, param.unwrap_or(2))?),
        "mw-triangle" => Fixture::Polytope(mw_triangle(d)?),
        "mw-target" => Fixture::Polytope(mw_target(d)?),
        "mw-certificate" => Fixture::Certificate(mw_certificate(d)?),
        "quadrilateral" => Fixture::Polytope(quadrilateral_q(d)?),
        "stanley-pyramid" => Fixture::Polytope(stanley_pyramid()),
        "stanley-target" => Fixture::Polytope(stanley_target()),
        "stanley-certificate" => Fixture::Certificate(stanley_certificate()),
        "weak-segment-certificate" => Fixture::Certificate(weak_segment_certificate(CertificateMode::Weak(2))),
        "reflexive" => {
            let samples = reflexive_samples();
            let i = param.unwrap_or(0);
            let poly = usize::try_from(i)
                .ok()
                .and_then(|i| samples.get(i).cloned())
                .ok_or_else(|| Error::Malformed(format!("no reflexive sample with index {i}")))?;
            Fixture::Polygon(poly)
        }
        other => return Err(Error::Malformed(format!("unknown fixture {other:?}"))),
    })
}
