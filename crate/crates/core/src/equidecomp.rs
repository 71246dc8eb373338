//! Verification of piecewise-unimodular equidecomposition certificates.
//!
//! A certificate claims `P = ∐ T_i` and `Q = ∐ U_i(T_i)` for relatively
//! open simplices `T_i` and affine unimodular maps `U_i`. Verification is
//! exact: containment by facet inequalities, disjointness by an LP on the
//! intersection of the two affine hulls, and coverage by checking that
//! every lattice point of `kP` lies in exactly one dilated piece for
//! `k = 1..D'(d+1)`, which is enough samples to pin down the Ehrhart
//! quasi-polynomial of both sides.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::counting::{IntegerBox, LatticeRegion};
use crate::geometry::lp::{self, LpOutcome};
use crate::geometry::{AffineUnimodularMap, Location, MapMode, Openness, Point, Rational, RationalPolytope, Simplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CertificateMode {
    Strict,
    /// Rational translations allowed; checked on the dilates by this factor.
    Weak(u64),
}

/// What the pieces are mapped onto.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Polytope(RationalPolytope),
    /// A disjoint union of (typically integral) open simplices.
    Union(Vec<Simplex>),
}

impl Target {
    fn denominator(&self) -> BigInt {
        match self {
            Target::Polytope(p) => p.denominator(),
            Target::Union(pieces) => pieces.iter().fold(BigInt::one(), |acc, s| acc.lcm(&s.denominator())),
        }
    }

    fn scaled(&self, k: &Rational) -> Self {
        match self {
            Target::Polytope(p) => Target::Polytope(p.scaled(k)),
            Target::Union(pieces) => Target::Union(pieces.iter().map(|s| s.dilate(k)).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionCertificate {
    pub source: RationalPolytope,
    pub target: Target,
    pub pieces: Vec<Simplex>,
    pub maps: Vec<AffineUnimodularMap>,
    pub mode: CertificateMode,
}

impl DecompositionCertificate {
    /// Copy with the translation of map `index` shifted by `shift`.
    pub fn with_translated_map(&self, index: usize, shift: &Point) -> Self {
        let mut cert = self.clone();
        let map = &cert.maps[index];
        let moved = map.translation() + shift;
        cert.maps[index] = map.clone().with_translation(moved);
        cert
    }

    /// Dilations at which coverage is checked: `1..=D'(d+1)` with `D'` the
    /// lcm of all denominators involved and `d` the source dimension.
    pub fn verification_dilations(&self) -> Vec<u64> {
        let d = self.source.dim() as u64;
        let denom = self
            .pieces
            .iter()
            .fold(self.source.denominator().lcm(&self.target.denominator()), |acc, s| {
                acc.lcm(&s.denominator())
            });
        let top = denom.to_u64().expect("denominator fits in u64") * (d + 1);
        (1..=top).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FailedCheck {
    Unimodularity,
    Containment,
    Disjointness,
    Coverage,
    Volume,
    EhrhartEquality,
}

impl fmt::Display for FailedCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FailedCheck::Unimodularity => "unimodularity",
            FailedCheck::Containment => "containment",
            FailedCheck::Disjointness => "disjointness",
            FailedCheck::Coverage => "coverage",
            FailedCheck::Volume => "volume",
            FailedCheck::EhrhartEquality => "ehrhart-equality",
        };
        f.write_str(s)
    }
}

/// Which half of a certificate a failure was found on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Source,
    Target,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Piece(usize),
    Point(Point),
    LatticePoint { dilation: u64, point: Point },
    Dilation(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub verdict: Verdict,
    pub failed_check: Option<FailedCheck>,
    pub side: Option<Side>,
    pub witness: Option<Witness>,
    pub detail: String,
    /// Largest dilation whose lattice points were checked.
    pub max_dilation: u64,
}

impl VerificationReport {
    fn pass(max_dilation: u64) -> Self {
        Self {
            verdict: Verdict::Pass,
            failed_check: None,
            side: None,
            witness: None,
            detail: String::new(),
            max_dilation,
        }
    }

    fn fail(check: FailedCheck, side: Option<Side>, witness: Option<Witness>, detail: impl Into<String>) -> Self {
        Self {
            verdict: Verdict::Fail,
            failed_check: Some(check),
            side,
            witness,
            detail: detail.into(),
            max_dilation: 0,
        }
    }

    pub fn is_pass(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// A point in the relative interiors of both simplices, if one exists.
///
/// Maximizes `t` subject to `Σλ_i v_i = Σμ_j w_j`, `Σλ = Σμ = 1` and every
/// weight `>= t`; the interiors meet iff the optimum is positive. Openness
/// flags are ignored: both arguments are read as relatively open.
pub fn open_intersection(s1: &Simplex, s2: &Simplex) -> Option<Point> {
    let n = s1.ambient();
    if s2.ambient() != n || !boxes_overlap(s1, s2) {
        return None;
    }
    let a = s1.vertices().len();
    let b = s2.vertices().len();
    let t = a + b;
    let width = 2 * (a + b) + 1;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let unit = |i: usize, v: Rational| {
        let mut r = vec![Rational::zero(); width];
        r[i] = v;
        r
    };

    let mut r = vec![Rational::zero(); width];
    r[..a].fill(Rational::one());
    rows.push(r);
    rhs.push(Rational::one());
    let mut r = vec![Rational::zero(); width];
    r[a..a + b].fill(Rational::one());
    rows.push(r);
    rhs.push(Rational::one());
    for j in 0..n {
        let mut r = vec![Rational::zero(); width];
        for (i, v) in s1.vertices().iter().enumerate() {
            r[i] = v[j].clone();
        }
        for (i, w) in s2.vertices().iter().enumerate() {
            r[a + i] = -w[j].clone();
        }
        rows.push(r);
        rhs.push(Rational::zero());
    }
    for i in 0..a + b {
        let mut r = unit(i, Rational::one());
        r[t] = -Rational::one();
        r[t + 1 + i] = -Rational::one();
        rows.push(r);
        rhs.push(Rational::zero());
    }
    let objective = unit(t, Rational::one());
    match lp::maximize(&objective, &rows, &rhs) {
        LpOutcome::Optimal { value, solution } if value.is_positive() => {
            let mut coords = vec![Rational::zero(); n];
            for (lambda, v) in solution[..a].iter().zip(s1.vertices()) {
                for (c, x) in coords.iter_mut().zip(v.coords()) {
                    *c += lambda * x;
                }
            }
            Some(Point::new(coords))
        }
        _ => None,
    }
}

fn boxes_overlap(s1: &Simplex, s2: &Simplex) -> bool {
    (0..s1.ambient()).all(|i| {
        let lo1 = s1.vertices().iter().map(|v| &v[i]).min().expect("nonempty");
        let hi1 = s1.vertices().iter().map(|v| &v[i]).max().expect("nonempty");
        let lo2 = s2.vertices().iter().map(|v| &v[i]).min().expect("nonempty");
        let hi2 = s2.vertices().iter().map(|v| &v[i]).max().expect("nonempty");
        lo1 <= hi2 && lo2 <= hi1
    })
}

/// Whether the relative interiors of two simplices are disjoint.
pub fn open_disjoint(s1: &Simplex, s2: &Simplex) -> bool {
    open_intersection(s1, s2).is_none()
}

/// The set being partitioned.
#[derive(Clone, Copy)]
enum Cover<'a> {
    Polytope(&'a RationalPolytope),
    Union(&'a [Simplex]),
}

impl Cover<'_> {
    fn ambient(&self) -> Option<usize> {
        match self {
            Cover::Polytope(p) => Some(p.ambient_dim()),
            Cover::Union(pieces) => pieces.first().map(Simplex::ambient),
        }
    }

    fn contains_closed(&self, x: &Point) -> bool {
        match self {
            Cover::Polytope(p) => p.region().contains(x),
            Cover::Union(pieces) => pieces.iter().any(|s| s.classify(x) != Location::Outside),
        }
    }

    fn volume(&self) -> crate::Result<Rational> {
        match self {
            Cover::Polytope(p) => p.volume(),
            Cover::Union(pieces) => Ok(pieces.iter().fold(Rational::zero(), |acc, s| acc + s.volume())),
        }
    }

    fn lattice_regions(&self) -> Vec<LatticeRegion> {
        match self {
            Cover::Polytope(p) => vec![LatticeRegion::of(*p)],
            Cover::Union(pieces) => pieces
                .iter()
                .map(|s| LatticeRegion::of(&s.with_openness(Openness::Open)))
                .collect(),
        }
    }
}

/// Checks that the relatively open `pieces` partition `p`: containment,
/// pairwise disjointness, volume, and lattice coverage at every dilation
/// in `dilations`. Reports the first failure in deterministic order.
pub fn verify_partition(p: &RationalPolytope, pieces: &[Simplex], dilations: &[u64]) -> VerificationReport {
    verify_cover(Cover::Polytope(p), pieces, dilations, None)
}

fn verify_cover(cover: Cover<'_>, pieces: &[Simplex], dilations: &[u64], side: Option<Side>) -> VerificationReport {
    let report = verify_structure(cover, pieces, side);
    if !report.is_pass() {
        return report;
    }
    verify_coverage(cover, pieces, dilations, side)
}

/// Containment, pairwise disjointness and the volume identity.
fn verify_structure(cover: Cover<'_>, pieces: &[Simplex], side: Option<Side>) -> VerificationReport {
    let pieces: Vec<Simplex> = pieces.iter().map(|s| s.with_openness(Openness::Open)).collect();
    let closed_region = match cover {
        Cover::Polytope(p) => Some(p.region()),
        Cover::Union(_) => None,
    };
    let contains_closed = |x: &Point| match &closed_region {
        Some(region) => region.contains(x),
        None => cover.contains_closed(x),
    };

    for (i, piece) in pieces.iter().enumerate() {
        if Some(piece.ambient()) != cover.ambient() {
            return VerificationReport::fail(
                FailedCheck::Containment,
                side,
                Some(Witness::Piece(i)),
                format!("piece {i} lives in a space of different dimension"),
            );
        }
        if let Some(v) = piece.vertices().iter().find(|v| !contains_closed(v)) {
            return VerificationReport::fail(
                FailedCheck::Containment,
                side,
                Some(Witness::Point(v.clone())),
                format!("vertex {v} of piece {i} lies outside the region"),
            );
        }
    }

    if let Some(report) = check_disjoint(&pieces, side) {
        return report;
    }

    match cover.volume() {
        Ok(total) => {
            let sum = pieces.iter().fold(Rational::zero(), |acc, s| acc + s.volume());
            if sum != total {
                return VerificationReport::fail(
                    FailedCheck::Volume,
                    side,
                    None,
                    format!("pieces have total volume {sum}, region has volume {total}"),
                );
            }
        }
        Err(e) => return VerificationReport::fail(FailedCheck::Volume, side, None, e.to_string()),
    }
    VerificationReport::pass(0)
}

/// Every lattice point of each dilate lies in exactly one dilated piece,
/// and the pieces hold no other lattice points.
fn verify_coverage(cover: Cover<'_>, pieces: &[Simplex], dilations: &[u64], side: Option<Side>) -> VerificationReport {
    let piece_regions: Vec<LatticeRegion> = pieces
        .iter()
        .map(|s| LatticeRegion::of(&s.with_openness(Openness::Open)))
        .collect();
    let cover_regions = cover.lattice_regions();
    for &k in dilations {
        let kb = BigInt::from(k);
        let boxes: Vec<IntegerBox> = piece_regions.iter().map(|r| r.bounding_box(&kb)).collect();
        let mut points: Vec<Vec<BigInt>> = cover_regions.iter().flat_map(|r| r.points(&kb)).collect();
        if cover_regions.len() > 1 {
            points.sort();
        }
        for x in &points {
            let hits = piece_regions
                .iter()
                .zip(&boxes)
                .filter(|(r, b)| b.contains(x) && r.contains(x, &kb))
                .count();
            if hits != 1 {
                return VerificationReport::fail(
                    FailedCheck::Coverage,
                    side,
                    Some(Witness::LatticePoint {
                        dilation: k,
                        point: Point::from_bigints(x),
                    }),
                    format!("lattice point lies in {hits} pieces at dilation {k}"),
                );
            }
        }
        let piece_total: BigInt = piece_regions.iter().map(|r| r.count(&kb)).sum();
        if piece_total != BigInt::from(points.len()) {
            return VerificationReport::fail(
                FailedCheck::Coverage,
                side,
                Some(Witness::Dilation(k)),
                format!(
                    "pieces hold {piece_total} lattice points at dilation {k}, region holds {}",
                    points.len()
                ),
            );
        }
    }
    VerificationReport::pass(dilations.iter().copied().max().unwrap_or(0))
}

fn check_disjoint(pieces: &[Simplex], side: Option<Side>) -> Option<VerificationReport> {
    for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            if let Some(x) = open_intersection(&pieces[i], &pieces[j]) {
                return Some(VerificationReport::fail(
                    FailedCheck::Disjointness,
                    side,
                    Some(Witness::Point(x)),
                    format!("pieces {i} and {j} overlap"),
                ));
            }
        }
    }
    None
}

/// Verifies a certificate according to its mode.
pub fn verify_certificate(cert: &DecompositionCertificate) -> VerificationReport {
    match cert.mode {
        CertificateMode::Strict => verify_strict(cert),
        CertificateMode::Weak(scale) => verify_weak(cert, scale),
    }
}

/// Weak verification: dilate everything (translations included) by `scale`
/// and verify the result as a strict certificate.
pub fn verify_weak(cert: &DecompositionCertificate, scale: u64) -> VerificationReport {
    if scale == 0 {
        return VerificationReport::fail(FailedCheck::Unimodularity, None, None, "weak scale must be positive");
    }
    let k = Rational::from_integer(BigInt::from(scale));
    let scaled = DecompositionCertificate {
        source: cert.source.scaled(&k),
        target: cert.target.scaled(&k),
        pieces: cert.pieces.iter().map(|s| s.dilate(&k)).collect(),
        maps: cert
            .maps
            .iter()
            .map(|m| m.dilated(&k).with_mode(MapMode::Strict))
            .collect(),
        mode: CertificateMode::Strict,
    };
    verify_strict(&scaled)
}

fn verify_strict(cert: &DecompositionCertificate) -> VerificationReport {
    if cert.pieces.len() != cert.maps.len() {
        return VerificationReport::fail(
            FailedCheck::Unimodularity,
            None,
            None,
            format!("{} pieces but {} maps", cert.pieces.len(), cert.maps.len()),
        );
    }
    let n = cert.source.ambient_dim();
    for (i, map) in cert.maps.iter().enumerate() {
        let strict = map.clone().with_mode(MapMode::Strict);
        if map.dim() != n || !strict.is_unimodular() {
            let why = if map.dim() != n {
                format!("map {i} acts on dimension {}, source has {n}", map.dim())
            } else if !map.determinant().abs().is_one() {
                format!("map {i} has determinant {}", map.determinant())
            } else {
                format!("map {i} has non-integral translation {}", map.translation())
            };
            return VerificationReport::fail(FailedCheck::Unimodularity, None, Some(Witness::Piece(i)), why);
        }
    }

    let images: Vec<Simplex> = cert
        .pieces
        .iter()
        .zip(&cert.maps)
        .map(|(s, m)| s.map(m).expect("unimodular maps preserve simplices"))
        .collect();
    let target_cover = match &cert.target {
        Target::Polytope(q) => Cover::Polytope(q),
        Target::Union(pieces) => {
            let open: Vec<Simplex> = pieces.iter().map(|s| s.with_openness(Openness::Open)).collect();
            if let Some(report) = check_disjoint(&open, Some(Side::Target)) {
                return report;
            }
            Cover::Union(pieces)
        }
    };
    let sides = [
        (Cover::Polytope(&cert.source), cert.pieces.as_slice(), Side::Source),
        (target_cover, images.as_slice(), Side::Target),
    ];

    // Exact structural checks on both sides before any lattice enumeration.
    for (cover, pieces, side) in sides {
        let report = verify_structure(cover, pieces, Some(side));
        if !report.is_pass() {
            return report;
        }
    }
    let dilations = cert.verification_dilations();
    for (cover, pieces, side) in sides {
        let report = verify_coverage(cover, pieces, &dilations, Some(side));
        if !report.is_pass() {
            return report;
        }
    }

    // Redundant given both partitions, but it is the statement being certified.
    let source = LatticeRegion::of(&cert.source);
    let target: Vec<LatticeRegion> = target_cover.lattice_regions();
    for &k in &dilations {
        let kb = BigInt::from(k);
        let target_count: BigInt = target.iter().map(|r| r.count(&kb)).sum();
        if source.count(&kb) != target_count {
            return VerificationReport::fail(
                FailedCheck::EhrhartEquality,
                None,
                Some(Witness::Dilation(k)),
                format!("source and target counts differ at dilation {k}"),
            );
        }
    }
    VerificationReport::pass(dilations.last().copied().unwrap_or(0))
}
