//! Ehrhart quasi-polynomials by exact count-then-interpolate.
//!
//! For a rational polytope of dimension `d` and denominator `D`, the count
//! `|kP ∩ Z^n|` agrees with a degree-`d` quasi-polynomial of period `D`.
//! Counting at `k = 1..D(d+1)` gives `d+1` samples on each residue class,
//! which determines every coefficient function exactly.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::counting::{count_interior, LatticeRegion};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::geometry::{linalg, Rational, RationalPolytope, MAX_DIM};

/// `k ↦ Σ_i c_i(k mod N) k^i`.
#[derive(Debug, Clone)]
pub struct QuasiPolynomial {
    degree: usize,
    period: u64,
    /// `coefficients[r][i]` is `c_i` on the residue class `r`.
    coefficients: Vec<Vec<Rational>>,
}

impl QuasiPolynomial {
    pub fn new(degree: usize, period: u64, coefficients: Vec<Vec<Rational>>) -> Result<Self> {
        if period == 0 {
            return Err(Error::Malformed("period must be positive".into()));
        }
        if coefficients.len() as u64 != period || coefficients.iter().any(|c| c.len() != degree + 1) {
            return Err(Error::Malformed(format!(
                "coefficient table must be {period} rows of {} entries",
                degree + 1
            )));
        }
        Ok(Self {
            degree,
            period,
            coefficients,
        })
    }

    /// An ordinary polynomial, `coeffs[i]` multiplying `k^i`.
    pub fn polynomial(coeffs: Vec<Rational>) -> Self {
        let coeffs = if coeffs.is_empty() {
            vec![Rational::zero()]
        } else {
            coeffs
        };
        Self {
            degree: coeffs.len() - 1,
            period: 1,
            coefficients: vec![coeffs],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn coefficients(&self) -> &[Vec<Rational>] {
        &self.coefficients
    }

    /// `c_i(r)`.
    pub fn coefficient(&self, i: usize, residue: u64) -> &Rational {
        &self.coefficients[(residue % self.period) as usize][i]
    }

    /// The values of `c_i` over one period.
    pub fn coefficient_function(&self, i: usize) -> Vec<Rational> {
        self.coefficients.iter().map(|row| row[i].clone()).collect()
    }

    /// `c_i` when it is constant, `None` when it genuinely oscillates.
    pub fn constant_coefficient(&self, i: usize) -> Option<Rational> {
        let f = self.coefficient_function(i);
        f.iter().all(|c| *c == f[0]).then(|| f[0].clone())
    }

    pub fn evaluate(&self, k: i64) -> Rational {
        let r = k.rem_euclid(self.period as i64) as usize;
        let kq = Rational::from_integer(BigInt::from(k));
        self.coefficients[r]
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * &kq + c)
    }

    /// Same function presented with period `period` (a multiple of the
    /// current one) and degree at least `degree`.
    pub fn lift(&self, period: u64, degree: usize) -> Result<Self> {
        if period == 0 || !period.is_multiple_of(self.period) {
            return Err(Error::Malformed(format!(
                "{period} is not a multiple of the period {}",
                self.period
            )));
        }
        let degree = degree.max(self.degree);
        let coefficients = (0..period)
            .map(|r| {
                let mut row = self.coefficients[(r % self.period) as usize].clone();
                row.resize(degree + 1, Rational::zero());
                row
            })
            .collect();
        Ok(Self {
            degree,
            period,
            coefficients,
        })
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let period = self.period.lcm(&other.period);
        let degree = self.degree.max(other.degree);
        (
            self.lift(period, degree).expect("lcm is a common multiple"),
            other.lift(period, degree).expect("lcm is a common multiple"),
        )
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let (a, b) = self.common(other);
        let coefficients = a
            .coefficients
            .iter()
            .zip(&b.coefficients)
            .map(|(x, y)| x.iter().zip(y).map(|(p, q)| f(p, q)).collect())
            .collect();
        Self {
            degree: a.degree,
            period: a.period,
            coefficients,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        let mut out = self.clone();
        for row in &mut out.coefficients {
            for c in row.iter_mut() {
                *c *= factor;
            }
        }
        out
    }

    /// Least period of `c_i`: the smallest divisor `m` of the stored period
    /// with `c_i(r) = c_i(r + m)` for all `r`. Periods of a function on `Z`
    /// form a subgroup, so the least one divides any known period.
    pub fn coefficient_period(&self, i: usize) -> u64 {
        let f = self.coefficient_function(i);
        let n = self.period;
        (1..=n)
            .filter(|m| n.is_multiple_of(*m))
            .find(|&m| (0..n).all(|r| f[r as usize] == f[((r + m) % n) as usize]))
            .unwrap_or(n)
    }

    /// lcm of the least periods of all coefficient functions.
    pub fn minimal_period(&self) -> u64 {
        (0..=self.degree).fold(1, |acc, i| acc.lcm(&self.coefficient_period(i)))
    }

    /// Representation with the minimal period.
    pub fn reduced(&self) -> Self {
        let m = self.minimal_period();
        Self {
            degree: self.degree,
            period: m,
            coefficients: self.coefficients[..m as usize].to_vec(),
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.minimal_period() == 1
    }
}

/// Equality as functions on `Z`: both sides are lifted to a common period
/// and degree and compared coefficient-wise.
impl PartialEq for QuasiPolynomial {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.coefficients == b.coefficients
    }
}

impl Eq for QuasiPolynomial {}

impl fmt::Display for QuasiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.reduced();
        for (r, row) in q.coefficients.iter().enumerate() {
            if q.period > 1 {
                write!(f, "[k ≡ {r} mod {}] ", q.period)?;
            }
            let terms: Vec<String> = row
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| match i {
                    0 => format!("{c}"),
                    1 => format!("({c})k"),
                    _ => format!("({c})k^{i}"),
                })
                .collect();
            if terms.is_empty() {
                write!(f, "0")?;
            } else {
                write!(f, "{}", terms.join(" + "))?;
            }
            if r + 1 < q.coefficients.len() {
                write!(f, "; ")?;
            }
        }
        Ok(())
    }
}

/// Builds the quasi-polynomial of the given degree and period from counts.
///
/// Residue class `r` is fitted through its `degree + 1` samples among
/// `k = 1..period·(degree+1)`. Any further samples present in `counts` are
/// checked against the interpolant.
pub fn interpolate(counts: &BTreeMap<u64, u64>, degree: usize, period: u64) -> Result<QuasiPolynomial> {
    if period == 0 {
        return Err(Error::Malformed("period must be positive".into()));
    }
    let top = period * (degree as u64 + 1);
    if let Some(k) = (1..=top).find(|k| !counts.contains_key(k)) {
        return Err(Error::MissingSample(k));
    }
    let coefficients = (0..period)
        .map(|r| {
            let ks: Vec<u64> = (1..=top).filter(|k| k % period == r).collect();
            let vandermonde: Vec<Vec<Rational>> = ks
                .iter()
                .map(|&k| {
                    let kq = Rational::from_integer(BigInt::from(k));
                    let mut row = Vec::with_capacity(degree + 1);
                    let mut power = Rational::one();
                    for _ in 0..=degree {
                        row.push(power.clone());
                        power *= &kq;
                    }
                    row
                })
                .collect();
            let values: Vec<Rational> = ks
                .iter()
                .map(|k| Rational::from_integer(BigInt::from(counts[k])))
                .collect();
            linalg::solve(&vandermonde, &values).expect("distinct nodes")
        })
        .collect();
    let q = QuasiPolynomial {
        degree,
        period,
        coefficients,
    };
    for (&k, &count) in counts {
        let k_signed = i64::try_from(k).map_err(|_| Error::InterpolationMismatch(k))?;
        if q.evaluate(k_signed) != Rational::from_integer(BigInt::from(count)) {
            return Err(Error::InterpolationMismatch(k));
        }
    }
    if q.coefficients.iter().all(|row| row[degree].is_zero()) {
        return Err(Error::ZeroLeadingCoefficient);
    }
    Ok(q)
}

fn check_dim(p: &RationalPolytope) -> Result<usize> {
    let d = p.dim();
    if d > MAX_DIM {
        return Err(Error::UnsupportedDimension { dim: d, max: MAX_DIM });
    }
    Ok(d)
}

fn denominator_u64(p: &RationalPolytope) -> Result<u64> {
    p.denominator()
        .to_u64()
        .ok_or_else(|| Error::Malformed("denominator too large".into()))
}

/// Counts `|kP ∩ Z^n|` for `k = 1..=k_max`.
pub fn counts(p: &RationalPolytope, k_max: u64) -> BTreeMap<u64, u64> {
    let region = LatticeRegion::of(p);
    (1..=k_max)
        .map(|k| {
            let c = region.count(&BigInt::from(k)).to_u64().expect("count fits in u64");
            (k, c)
        })
        .collect()
}

/// The Ehrhart quasi-polynomial, presented with period `denominator(P)`.
pub fn ehrhart_of(p: &RationalPolytope) -> Result<QuasiPolynomial> {
    let d = check_dim(p)?;
    let period = denominator_u64(p)?;
    interpolate(&counts(p, period * (d as u64 + 1)), d, period)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseReport {
    pub denominator: u64,
    pub minimal_quasi_period: u64,
    pub collapsed: bool,
    pub quasi_polynomial: QuasiPolynomial,
}

/// Minimal quasi-period of `P` and whether it collapses below the denominator.
pub fn minimal_quasi_period(p: &RationalPolytope) -> Result<CollapseReport> {
    let q = ehrhart_of(p)?;
    let denominator = q.period();
    let minimal = q.minimal_period();
    Ok(CollapseReport {
        denominator,
        minimal_quasi_period: minimal,
        collapsed: minimal < denominator,
        quasi_polynomial: q,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReciprocityFailure {
    pub dilation: u64,
    /// `(-1)^d L_P(-k)`.
    pub evaluated: Rational,
    pub interior_count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReciprocityReport {
    pub passed: bool,
    pub max_k: u64,
    pub first_failure: Option<ReciprocityFailure>,
}

/// Checks `(-1)^d L_P(-k) = |relint(kP) ∩ Z^n|` for `k = 1..=k_max`.
pub fn reciprocity_check(p: &RationalPolytope, k_max: u64) -> Result<ReciprocityReport> {
    let d = check_dim(p)?;
    let q = ehrhart_of(p)?;
    let sign = if d % 2 == 0 { Rational::one() } else { -Rational::one() };
    for k in 1..=k_max {
        let k_signed = i64::try_from(k).map_err(|_| Error::InvalidDilation(i64::MAX))?;
        let evaluated = q.evaluate(-k_signed) * &sign;
        let interior = count_interior(p, k_signed)?;
        if evaluated != Rational::from_integer(BigInt::from(interior)) {
            return Ok(ReciprocityReport {
                passed: false,
                max_k: k_max,
                first_failure: Some(ReciprocityFailure {
                    dilation: k,
                    evaluated,
                    interior_count: interior,
                }),
            });
        }
    }
    Ok(ReciprocityReport {
        passed: true,
        max_k: k_max,
        first_failure: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadrilateralReport {
    pub denominator: i64,
    pub quadrilateral: QuasiPolynomial,
    pub triangle: QuasiPolynomial,
    /// `2 L_T(k) - Dk - 1`.
    pub predicted: QuasiPolynomial,
    pub identity_holds: bool,
    pub linear_coefficient_is_one: bool,
}

impl QuadrilateralReport {
    pub fn passed(&self) -> bool {
        self.identity_holds && self.linear_coefficient_is_one
    }
}

/// Compares `L_Q` with `2 L_T(k) - Dk - 1` for the quadrilateral built from
/// the triangle and its mirror image, and checks that `L_Q` has linear
/// coefficient exactly 1.
pub fn quadrilateral_identity_check(denominator: i64) -> Result<QuadrilateralReport> {
    let q = ehrhart_of(&fixtures::quadrilateral_q(denominator)?)?;
    let t = ehrhart_of(&fixtures::mw_triangle(denominator)?)?;
    let correction =
        QuasiPolynomial::polynomial(vec![Rational::one(), Rational::from_integer(BigInt::from(denominator))]);
    let predicted = t.scale(&Rational::from_integer(BigInt::from(2))).sub(&correction);
    let identity_holds = q == predicted;
    let linear_coefficient_is_one = q.constant_coefficient(1) == Some(Rational::one());
    Ok(QuadrilateralReport {
        denominator,
        quadrilateral: q,
        triangle: t,
        predicted,
        identity_holds,
        linear_coefficient_is_one,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::point::{int, rat};
    use crate::geometry::Point;

    fn samples(values: &[u64]) -> BTreeMap<u64, u64> {
        values.iter().enumerate().map(|(i, &v)| (i as u64 + 1, v)).collect()
    }

    fn segment(p: i64, q: i64) -> RationalPolytope {
        RationalPolytope::reduce_to_vertices(&[Point::from_ints(&[0]), Point::new(vec![rat(p, q)])]).unwrap()
    }

    #[test]
    fn interpolates_square_counts() {
        let q = interpolate(&samples(&[4, 9, 16]), 2, 1).unwrap();
        assert_eq!(q, QuasiPolynomial::polynomial(vec![int(1), int(2), int(1)]));
    }

    #[test]
    fn interpolates_half_segment() {
        let q = interpolate(&samples(&[1, 2, 2, 3]), 1, 2).unwrap();
        assert_eq!(q.coefficient(1, 0), &rat(1, 2));
        assert_eq!(q.coefficient(1, 1), &rat(1, 2));
        assert_eq!(q.coefficient(0, 0), &int(1));
        assert_eq!(q.coefficient(0, 1), &rat(1, 2));
        assert_eq!(q.evaluate(-2), int(0));
        assert_eq!(q.evaluate(0), int(1));
    }

    #[test]
    fn interpolation_errors() {
        assert_eq!(interpolate(&samples(&[4, 9]), 2, 1), Err(Error::MissingSample(3)));
        // k = 4 should be 25 for (k+1)^2
        assert_eq!(
            interpolate(&samples(&[4, 9, 16, 26]), 2, 1),
            Err(Error::InterpolationMismatch(4))
        );
        assert_eq!(interpolate(&samples(&[3, 3]), 1, 1), Err(Error::ZeroLeadingCoefficient));
    }

    #[test]
    fn evaluation() {
        let q = QuasiPolynomial::polynomial(vec![int(1), int(2), int(1)]);
        assert_eq!(q.evaluate(4), int(25));
        assert_eq!(q.evaluate(0), int(1));
        assert_eq!(q.evaluate(-3), int(4));
    }

    #[test]
    fn segments_never_collapse() {
        let r = minimal_quasi_period(&segment(1, 2)).unwrap();
        assert_eq!((r.denominator, r.minimal_quasi_period, r.collapsed), (2, 2, false));
        let r = minimal_quasi_period(&segment(3, 4)).unwrap();
        assert_eq!((r.denominator, r.minimal_quasi_period, r.collapsed), (4, 4, false));
    }

    #[test]
    fn lifting_preserves_values() {
        let q = interpolate(&samples(&[1, 2, 2, 3]), 1, 2).unwrap();
        let lifted = q.lift(6, 3).unwrap();
        assert_eq!(lifted.period(), 6);
        assert_eq!(lifted, q);
        for k in -10..10 {
            assert_eq!(lifted.evaluate(k), q.evaluate(k));
        }
        assert!(q.lift(3, 1).is_err());
        assert_eq!(lifted.reduced().period(), 2);
    }

    #[test]
    fn coefficient_periods() {
        // c_0 has period 3, c_1 has period 2: minimal quasi-period 6
        let rows: Vec<Vec<Rational>> = (0..6).map(|r| vec![int(r % 3), int(r % 2)]).collect();
        let q = QuasiPolynomial::new(1, 6, rows).unwrap();
        assert_eq!(q.coefficient_period(0), 3);
        assert_eq!(q.coefficient_period(1), 2);
        assert_eq!(q.minimal_period(), 6);
    }

    #[test]
    fn display_is_readable() {
        let q = QuasiPolynomial::polynomial(vec![int(1), rat(11, 6), int(1), rat(1, 6)]);
        assert_eq!(q.to_string(), "(1/6)k^3 + (1)k^2 + (11/6)k + 1");
    }
}
