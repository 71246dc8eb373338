//! JSON interchange formats.
//!
//! Every coordinate is a rational string (`"2/3"`, `"-1"`, `"5"`); matrix
//! entries are plain JSON integers. Nothing here ever touches floating point.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use quasiperiod::equidecomp::{CertificateMode, DecompositionCertificate, Target};
use quasiperiod::reflexive::LatticePolygon;
use quasiperiod::{AffineUnimodularMap, MapMode, Openness, Point, Rational, RationalPolytope, Simplex};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed rational {0:?}")]
    BadRational(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Geometry(#[from] quasiperiod::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// Parses `"p/q"` or an integer string. Accepts the Unicode minus sign and
/// reduces to lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational, FormatError> {
    let normalized = s.trim().replace('\u{2212}', "-");
    let bad = || FormatError::BadRational(s.to_string());
    let (num, den) = match normalized.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (normalized.as_str(), "1"),
    };
    // BigInt's parser accepts a leading '+', which is not part of the format.
    if num.starts_with('+') || den.starts_with(['+', '-']) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(FormatError::ZeroDenominator(s.to_string()));
    }
    Ok(Rational::new(n, d))
}

/// Canonical form: lowest terms, no `/1` for integers.
pub fn emit_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn parse_point(coords: &[String]) -> Result<Point, FormatError> {
    coords
        .iter()
        .map(|c| parse_rational(c))
        .collect::<Result<Vec<_>, _>>()
        .map(Point::new)
}

fn emit_point(p: &Point) -> Vec<String> {
    p.coords().iter().map(emit_rational).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeFile {
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
}

impl PolytopeFile {
    pub fn parse(&self) -> Result<RationalPolytope, FormatError> {
        let points = self.points()?;
        Ok(RationalPolytope::reduce_to_vertices(&points)?)
    }

    fn points(&self) -> Result<Vec<Point>, FormatError> {
        if self.vertices.is_empty() {
            return Err(FormatError::Shape("polytope has no vertices".into()));
        }
        self.vertices
            .iter()
            .map(|v| {
                if v.len() != self.dim {
                    return Err(FormatError::Shape(format!(
                        "vertex has {} coordinates, dim is {}",
                        v.len(),
                        self.dim
                    )));
                }
                parse_point(v)
            })
            .collect()
    }

    pub fn emit(p: &RationalPolytope) -> Self {
        Self {
            dim: p.ambient_dim(),
            vertices: p.vertices().iter().map(emit_point).collect(),
        }
    }

    /// Reads the file as a lattice polygon; vertices must be integral and planar.
    pub fn parse_polygon(&self) -> Result<LatticePolygon, FormatError> {
        if self.dim != 2 {
            return Err(FormatError::Shape(format!("a polygon needs dim 2, got {}", self.dim)));
        }
        Ok(LatticePolygon::from_points(&self.points()?)?)
    }

    pub fn emit_polygon(p: &LatticePolygon) -> Self {
        Self {
            dim: 2,
            vertices: p
                .vertices()
                .iter()
                .map(|v| v.iter().map(i64::to_string).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceFile {
    pub vertices: Vec<Vec<String>>,
    pub open: bool,
}

impl PieceFile {
    fn parse(&self) -> Result<Simplex, FormatError> {
        if !self.open {
            return Err(FormatError::Shape(
                "pieces must be relatively open simplices; decompose closed pieces first".into(),
            ));
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| parse_point(v))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Simplex::new(vertices, Openness::Open)?)
    }

    fn emit(s: &Simplex) -> Self {
        Self {
            vertices: s.vertices().iter().map(emit_point).collect(),
            open: s.is_open(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnionFile {
    pub pieces: Vec<PieceFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TargetFile {
    Polytope(PolytopeFile),
    Union(UnionFile),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub matrix: Vec<Vec<i64>>,
    pub translation: Vec<String>,
}

impl MapFile {
    fn parse(&self, mode: MapMode) -> Result<AffineUnimodularMap, FormatError> {
        let matrix = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Ok(AffineUnimodularMap::new(matrix, parse_point(&self.translation)?, mode)?)
    }

    fn emit(m: &AffineUnimodularMap) -> Result<Self, FormatError> {
        let matrix = m
            .matrix()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        x.to_i64()
                            .ok_or_else(|| FormatError::Shape(format!("matrix entry {x} exceeds 64 bits")))
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        Ok(Self {
            matrix,
            translation: emit_point(m.translation()),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum ModeFile {
    Strict,
    Weak(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub source: PolytopeFile,
    pub target: TargetFile,
    pub pieces: Vec<PieceFile>,
    pub maps: Vec<MapFile>,
    pub mode: ModeFile,
}

impl CertificateFile {
    pub fn parse(&self) -> Result<DecompositionCertificate, FormatError> {
        if self.pieces.len() != self.maps.len() {
            return Err(FormatError::Shape(format!(
                "{} pieces but {} maps",
                self.pieces.len(),
                self.maps.len()
            )));
        }
        let (mode, map_mode) = match self.mode {
            ModeFile::Strict => (CertificateMode::Strict, MapMode::Strict),
            ModeFile::Weak(0) => return Err(FormatError::Shape("weak scale must be at least 1".into())),
            ModeFile::Weak(k) => (CertificateMode::Weak(k), MapMode::Weak),
        };
        let target = match &self.target {
            TargetFile::Polytope(p) => Target::Polytope(p.parse()?),
            TargetFile::Union(u) => {
                if u.pieces.is_empty() {
                    return Err(FormatError::Shape("target union has no pieces".into()));
                }
                Target::Union(u.pieces.iter().map(PieceFile::parse).collect::<Result<_, _>>()?)
            }
        };
        Ok(DecompositionCertificate {
            source: self.source.parse()?,
            target,
            pieces: self.pieces.iter().map(PieceFile::parse).collect::<Result<_, _>>()?,
            maps: self.maps.iter().map(|m| m.parse(map_mode)).collect::<Result<_, _>>()?,
            mode,
        })
    }

    pub fn emit(cert: &DecompositionCertificate) -> Result<Self, FormatError> {
        Ok(Self {
            source: PolytopeFile::emit(&cert.source),
            target: match &cert.target {
                Target::Polytope(p) => TargetFile::Polytope(PolytopeFile::emit(p)),
                Target::Union(pieces) => TargetFile::Union(UnionFile {
                    pieces: pieces.iter().map(PieceFile::emit).collect(),
                }),
            },
            pieces: cert.pieces.iter().map(PieceFile::emit).collect(),
            maps: cert.maps.iter().map(MapFile::emit).collect::<Result<_, _>>()?,
            mode: match cert.mode {
                CertificateMode::Strict => ModeFile::Strict,
                CertificateMode::Weak(k) => ModeFile::Weak(k),
            },
        })
    }
}

/// Pretty-printed JSON with a trailing newline; the on-disk form.
pub fn to_document<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("file types serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use quasiperiod::geometry::rat;

    #[test]
    fn rationals_parse_and_canonicalize() {
        assert_eq!(parse_rational("2/3").unwrap(), rat(2, 3));
        assert_eq!(parse_rational("4/6").unwrap(), rat(2, 3));
        assert_eq!(emit_rational(&parse_rational("4/6").unwrap()), "2/3");
        assert_eq!(parse_rational("\u{2212}1").unwrap(), rat(-1, 1));
        assert_eq!(parse_rational("3/-6").ok(), None);
        assert_eq!(emit_rational(&parse_rational("-8/4").unwrap()), "-2");
    }

    #[test]
    fn rejects_bad_rationals() {
        assert!(matches!(parse_rational("1/0"), Err(FormatError::ZeroDenominator(_))));
        for s in ["", "x", "1/", "/2", "1.5", "+3", "1/2/3"] {
            assert!(matches!(parse_rational(s), Err(FormatError::BadRational(_))), "{s:?}");
        }
    }

    #[test]
    fn mode_serializes_as_documented() {
        assert_eq!(serde_json::to_string(&ModeFile::Strict).unwrap(), "\"strict\"");
        assert_eq!(serde_json::to_string(&ModeFile::Weak(2)).unwrap(), "{\"weak\":2}");
        let m: ModeFile = serde_json::from_str("{\"weak\":3}").unwrap();
        assert_eq!(m, ModeFile::Weak(3));
    }

    #[test]
    fn closed_pieces_are_rejected() {
        let piece = PieceFile {
            vertices: vec![vec!["0".into()], vec!["1".into()]],
            open: false,
        };
        assert!(matches!(piece.parse(), Err(FormatError::Shape(_))));
    }
}
