//! Benchmark workloads shared by the criterion benches in `benches/`.
//!
//! Each workload is a plain function so it can also be smoke-tested.

use quasiperiod::counting::count_points;
use quasiperiod::ehrhart::{ehrhart_of, QuasiPolynomial};
use quasiperiod::equidecomp::{verify_certificate, DecompositionCertificate, VerificationReport};
use quasiperiod::{fixtures, RationalPolytope};

/// Polytopes counted at a range of dilations.
pub fn counting_inputs() -> Vec<(&'static str, RationalPolytope)> {
    vec![
        ("triangle-D5", fixtures::mw_triangle(5).expect("D >= 2")),
        ("quadrilateral-D7", fixtures::quadrilateral_q(7).expect("D >= 2")),
        ("pyramid", fixtures::stanley_pyramid()),
    ]
}

pub fn count(p: &RationalPolytope, k: i64) -> u64 {
    count_points(p, k).expect("fixture dimension is supported")
}

pub fn ehrhart(p: &RationalPolytope) -> QuasiPolynomial {
    ehrhart_of(p).expect("fixture dimension is supported")
}

pub fn certificates() -> Vec<(String, DecompositionCertificate)> {
    let mut out: Vec<_> = [2, 4, 6]
        .into_iter()
        .map(|d| (format!("mw-D{d}"), fixtures::mw_certificate(d).expect("D >= 2")))
        .collect();
    out.push(("stanley".to_string(), fixtures::stanley_certificate()));
    out
}

pub fn verify(cert: &DecompositionCertificate) -> VerificationReport {
    verify_certificate(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workloads_run() {
        let (_, pyramid) = &counting_inputs()[2];
        assert_eq!(count(pyramid, 3), 20);
        assert!(ehrhart(pyramid).is_polynomial());
        assert!(certificates().iter().take(1).all(|(_, c)| verify(c).is_pass()));
    }
}
