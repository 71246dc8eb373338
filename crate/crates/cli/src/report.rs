//! Output shapes. Field order in these structs is the field order on the wire.

use quasiperiod::ehrhart::{CollapseReport, QuasiPolynomial, ReciprocityReport};
use quasiperiod::equidecomp::{Side, Verdict, VerificationReport, Witness};
use quasiperiod::reflexive::{LatticePolygon, TwelveReport};
use quasiperiod::Point;
use serde::Serialize;

use crate::format::emit_rational;

fn coords(p: &Point) -> Vec<String> {
    p.coords().iter().map(emit_rational).collect()
}

#[derive(Serialize)]
pub struct ErrorOut {
    pub error: ErrorBody,
}

#[derive(Serialize)]
pub struct ErrorBody {
    pub kind: &'static str,
    pub message: String,
}

#[derive(Serialize)]
pub struct CountOut {
    pub count: u64,
}

#[derive(Serialize)]
pub struct WrittenOut {
    pub written: String,
}

/// `coefficients[r][i]` is the coefficient of `k^i` when `k ≡ r (mod period)`.
#[derive(Serialize)]
pub struct QuasiPolynomialOut {
    pub degree: usize,
    pub period: u64,
    pub coefficients: Vec<Vec<String>>,
    pub display: String,
}

impl From<&QuasiPolynomial> for QuasiPolynomialOut {
    fn from(q: &QuasiPolynomial) -> Self {
        Self {
            degree: q.degree(),
            period: q.period(),
            coefficients: q
                .coefficients()
                .iter()
                .map(|row| row.iter().map(emit_rational).collect())
                .collect(),
            display: q.to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct CollapseOut {
    pub denominator: u64,
    pub minimal_quasi_period: u64,
    pub collapsed: bool,
    pub quasi_polynomial: QuasiPolynomialOut,
}

impl From<&CollapseReport> for CollapseOut {
    fn from(r: &CollapseReport) -> Self {
        Self {
            denominator: r.denominator,
            minimal_quasi_period: r.minimal_quasi_period,
            collapsed: r.collapsed,
            quasi_polynomial: (&r.quasi_polynomial.reduced()).into(),
        }
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessOut {
    Piece { index: usize },
    Point { point: Vec<String> },
    LatticePoint { dilation: u64, point: Vec<String> },
    Dilation { dilation: u64 },
}

impl From<&Witness> for WitnessOut {
    fn from(w: &Witness) -> Self {
        match w {
            Witness::Piece(index) => WitnessOut::Piece { index: *index },
            Witness::Point(p) => WitnessOut::Point { point: coords(p) },
            Witness::LatticePoint { dilation, point } => WitnessOut::LatticePoint {
                dilation: *dilation,
                point: coords(point),
            },
            Witness::Dilation(k) => WitnessOut::Dilation { dilation: *k },
        }
    }
}

#[derive(Serialize)]
pub struct VerificationOut {
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_check: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessOut>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
    pub max_dilation: u64,
}

impl From<&VerificationReport> for VerificationOut {
    fn from(r: &VerificationReport) -> Self {
        Self {
            verdict: match r.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
            },
            failed_check: r.failed_check.map(|c| c.to_string()),
            side: r.side.map(|s| match s {
                Side::Source => "source",
                Side::Target => "target",
            }),
            witness: r.witness.as_ref().map(WitnessOut::from),
            detail: r.detail.clone(),
            max_dilation: r.max_dilation,
        }
    }
}

#[derive(Serialize)]
pub struct ReciprocityFailureOut {
    pub dilation: u64,
    pub evaluated: String,
    pub interior_count: u64,
}

#[derive(Serialize)]
pub struct ReciprocityOut {
    pub verdict: &'static str,
    pub max_k: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<ReciprocityFailureOut>,
}

impl From<&ReciprocityReport> for ReciprocityOut {
    fn from(r: &ReciprocityReport) -> Self {
        Self {
            verdict: if r.passed { "pass" } else { "fail" },
            max_k: r.max_k,
            first_failure: r.first_failure.as_ref().map(|f| ReciprocityFailureOut {
                dilation: f.dilation,
                evaluated: emit_rational(&f.evaluated),
                interior_count: f.interior_count,
            }),
        }
    }
}

#[derive(Serialize)]
pub struct TwelveOut {
    pub vertices: Vec<[i64; 2]>,
    pub dual: Vec<[i64; 2]>,
    pub length: u64,
    pub dual_length: u64,
    pub sum: u64,
    pub verdict: &'static str,
}

impl TwelveOut {
    pub fn new(polygon: &LatticePolygon, dual: &LatticePolygon, r: &TwelveReport) -> Self {
        Self {
            vertices: polygon.vertices().to_vec(),
            dual: dual.vertices().to_vec(),
            length: r.length,
            dual_length: r.dual_length,
            sum: r.sum(),
            verdict: if r.passed { "pass" } else { "fail" },
        }
    }
}
