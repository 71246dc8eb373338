//! Exact lattice-point counting in dilates of polytopes and simplices.
//!
//! Counting is brute force over the integer bounding box of the dilate. The
//! box is walked in lexicographic order; along the last coordinate the
//! admissible range is solved exactly from the integer-scaled constraints
//! instead of testing every cell, which gives the same points in the same
//! order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geometry::point::{ceil, floor, lcm_of_denominators};
use crate::geometry::{LinearRegion, Point, Rational, RationalPolytope, Simplex};

/// Anything whose dilates can be counted.
#[derive(Debug, Clone, Copy)]
pub enum CountRegion<'a> {
    Polytope(&'a RationalPolytope),
    Simplex(&'a Simplex),
}

impl<'a> From<&'a RationalPolytope> for CountRegion<'a> {
    fn from(p: &'a RationalPolytope) -> Self {
        CountRegion::Polytope(p)
    }
}

impl<'a> From<&'a Simplex> for CountRegion<'a> {
    fn from(s: &'a Simplex) -> Self {
        CountRegion::Simplex(s)
    }
}

impl CountRegion<'_> {
    pub fn vertices(&self) -> &[Point] {
        match self {
            CountRegion::Polytope(p) => p.vertices(),
            CountRegion::Simplex(s) => s.vertices(),
        }
    }

    fn region(&self) -> LinearRegion {
        match self {
            CountRegion::Polytope(p) => p.region(),
            CountRegion::Simplex(s) => s.region(),
        }
    }
}

/// Inclusive integer box `Π [lo_i, hi_i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerBox {
    pub bounds: Vec<(BigInt, BigInt)>,
}

impl IntegerBox {
    pub fn is_empty(&self) -> bool {
        self.bounds.iter().any(|(lo, hi)| lo > hi)
    }

    pub fn volume(&self) -> BigInt {
        if self.is_empty() {
            return BigInt::zero();
        }
        self.bounds.iter().map(|(lo, hi)| hi - lo + BigInt::one()).product()
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        x.iter().zip(&self.bounds).all(|(c, (lo, hi))| lo <= c && c <= hi)
    }
}

fn check_dilation(k: i64) -> Result<BigInt> {
    if k <= 0 {
        return Err(Error::InvalidDilation(k));
    }
    Ok(BigInt::from(k))
}

fn box_of(vertices: &[Point], k: &BigInt) -> IntegerBox {
    let n = vertices[0].dim();
    let kq = Rational::from_integer(k.clone());
    let bounds = (0..n)
        .map(|i| {
            let lo = vertices.iter().map(|v| &v[i] * &kq).min().expect("nonempty");
            let hi = vertices.iter().map(|v| &v[i] * &kq).max().expect("nonempty");
            // lo > hi when the projection contains no integer
            (ceil(&lo), floor(&hi))
        })
        .collect();
    IntegerBox { bounds }
}

/// Integer box containing every lattice point of `k·region`.
pub fn bounding_box<'a>(region: impl Into<CountRegion<'a>>, k: i64) -> Result<IntegerBox> {
    let k = check_dilation(k)?;
    Ok(box_of(region.into().vertices(), &k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Relation {
    Zero,
    NonNegative,
    Positive,
}

/// `coeffs·x + k·constant` compared with zero, with integer data.
#[derive(Debug, Clone)]
struct IntConstraint {
    coeffs: Vec<BigInt>,
    constant: BigInt,
    relation: Relation,
}

impl IntConstraint {
    fn from_rational(coeffs: &[Rational], constant: &Rational, relation: Relation) -> Self {
        let scale = Rational::from_integer(lcm_of_denominators(coeffs.iter().chain(std::iter::once(constant))));
        Self {
            coeffs: coeffs.iter().map(|c| (c * &scale).to_integer()).collect(),
            constant: (constant * &scale).to_integer(),
            relation,
        }
    }

    fn holds(&self, value: &BigInt) -> bool {
        match self.relation {
            Relation::Zero => value.is_zero(),
            Relation::NonNegative => !value.is_negative(),
            Relation::Positive => value.is_positive(),
        }
    }
}

/// A region prepared for repeated exact lattice enumeration of its dilates.
#[derive(Debug, Clone)]
pub struct LatticeRegion {
    vertices: Vec<Point>,
    constraints: Vec<IntConstraint>,
}

impl LatticeRegion {
    /// `region` must be contained in the convex hull of `vertices`.
    pub fn new(region: &LinearRegion, vertices: &[Point]) -> Self {
        let mut constraints: Vec<IntConstraint> = region
            .equalities
            .iter()
            .map(|e| IntConstraint::from_rational(&e.coeffs, &e.constant, Relation::Zero))
            .collect();
        constraints.extend(region.inequalities.iter().map(|i| {
            let rel = if i.strict {
                Relation::Positive
            } else {
                Relation::NonNegative
            };
            IntConstraint::from_rational(&i.functional.coeffs, &i.functional.constant, rel)
        }));
        Self {
            vertices: vertices.to_vec(),
            constraints,
        }
    }

    pub fn of<'a>(region: impl Into<CountRegion<'a>>) -> Self {
        let region = region.into();
        Self::new(&region.region(), region.vertices())
    }

    /// The relative interior of a polytope.
    pub fn interior_of(p: &RationalPolytope) -> Self {
        Self::new(&p.region().interior(), p.vertices())
    }

    pub fn ambient(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn bounding_box(&self, k: &BigInt) -> IntegerBox {
        box_of(&self.vertices, k)
    }

    /// Whether the lattice point `x` lies in `k·region`.
    pub fn contains(&self, x: &[BigInt], k: &BigInt) -> bool {
        self.constraints.iter().all(|c| {
            let v = c
                .coeffs
                .iter()
                .zip(x)
                .fold(&c.constant * k, |acc, (a, xi)| acc + a * xi);
            c.holds(&v)
        })
    }

    /// Range of the last coordinate given the others, intersected with `[lo, hi]`.
    fn last_coordinate_range(
        &self,
        prefix: &[BigInt],
        k: &BigInt,
        mut lo: BigInt,
        mut hi: BigInt,
    ) -> Option<(BigInt, BigInt)> {
        let last = self.ambient() - 1;
        for c in &self.constraints {
            let rest = c.coeffs[..last]
                .iter()
                .zip(prefix)
                .fold(&c.constant * k, |acc, (a, xi)| acc + a * xi);
            let s = &c.coeffs[last];
            if s.is_zero() {
                if !c.holds(&rest) {
                    return None;
                }
                continue;
            }
            // s·x + rest ⋈ 0
            let neg = -rest;
            match c.relation {
                Relation::Zero => {
                    let (q, r) = neg.div_rem(s);
                    if !r.is_zero() {
                        return None;
                    }
                    lo = lo.max(q.clone());
                    hi = hi.min(q);
                }
                Relation::NonNegative => {
                    if s.is_positive() {
                        lo = lo.max(neg.div_ceil(s));
                    } else {
                        hi = hi.min(neg.div_floor(s));
                    }
                }
                Relation::Positive => {
                    if s.is_positive() {
                        lo = lo.max(neg.div_floor(s) + 1);
                    } else {
                        hi = hi.min(neg.div_ceil(s) - 1);
                    }
                }
            }
            if lo > hi {
                return None;
            }
        }
        Some((lo, hi))
    }

    /// Visits every lattice point of `k·region` in lexicographic order.
    pub fn for_each_point(&self, k: &BigInt, mut visit: impl FnMut(&[BigInt])) {
        let b = self.bounding_box(k);
        if b.is_empty() {
            return;
        }
        self.walk(&b, k, |prefix, lo, hi| {
            let mut x = prefix.to_vec();
            x.push(lo.clone());
            while &x[x.len() - 1] <= hi {
                visit(&x);
                let l = x.len() - 1;
                x[l] += 1;
            }
        });
    }

    pub fn points(&self, k: &BigInt) -> Vec<Vec<BigInt>> {
        let mut out = Vec::new();
        self.for_each_point(k, |x| out.push(x.to_vec()));
        out
    }

    pub fn count(&self, k: &BigInt) -> BigInt {
        let b = self.bounding_box(k);
        if b.is_empty() {
            return BigInt::zero();
        }
        let mut total = BigInt::zero();
        self.walk(&b, k, |_, lo, hi| total += hi - lo + 1);
        total
    }

    /// Odometer over all but the last coordinate; calls `row` with each
    /// nonempty admissible range of the last coordinate.
    fn walk(&self, b: &IntegerBox, k: &BigInt, mut row: impl FnMut(&[BigInt], &BigInt, &BigInt)) {
        let n = self.ambient();
        let outer = &b.bounds[..n - 1];
        let (last_lo, last_hi) = &b.bounds[n - 1];
        let mut prefix: Vec<BigInt> = outer.iter().map(|(lo, _)| lo.clone()).collect();
        loop {
            if let Some((lo, hi)) = self.last_coordinate_range(&prefix, k, last_lo.clone(), last_hi.clone()) {
                row(&prefix, &lo, &hi);
            }
            let mut i = prefix.len();
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                if prefix[i] < outer[i].1 {
                    prefix[i] += 1;
                    for (j, (lo, _)) in outer.iter().enumerate().skip(i + 1) {
                        prefix[j] = lo.clone();
                    }
                    break;
                }
            }
        }
    }
}

fn to_u64(n: BigInt) -> u64 {
    n.to_u64().expect("lattice-point count exceeds u64")
}

/// Number of lattice points in `k·region`; open simplices count only points
/// with strictly positive barycentric coordinates.
pub fn count_points<'a>(region: impl Into<CountRegion<'a>>, k: i64) -> Result<u64> {
    let k = check_dilation(k)?;
    Ok(to_u64(LatticeRegion::of(region).count(&k)))
}

/// Number of lattice points in the relative interior of `k·P`.
pub fn count_interior(p: &RationalPolytope, k: i64) -> Result<u64> {
    let k = check_dilation(k)?;
    Ok(to_u64(LatticeRegion::interior_of(p).count(&k)))
}
