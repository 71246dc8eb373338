use quasiperiod::counting::count_points;
use quasiperiod::ehrhart::ehrhart_of;
use quasiperiod::equidecomp::{
    open_disjoint, verify_certificate, verify_partition, verify_weak, CertificateMode, DecompositionCertificate,
    FailedCheck, Target, Verdict,
};
use quasiperiod::fixtures;
use quasiperiod::geometry::rat;
use quasiperiod::{AffineUnimodularMap, MapMode, Point, Simplex};

fn passing_certificates() -> Vec<(String, DecompositionCertificate)> {
    let mut out: Vec<(String, DecompositionCertificate)> = (2..=5)
        .map(|d| (format!("mw({d})"), fixtures::mw_certificate(d).unwrap()))
        .collect();
    out.push(("stanley".into(), fixtures::stanley_certificate()));
    out.push((
        "weak segment".into(),
        fixtures::weak_segment_certificate(CertificateMode::Weak(2)),
    ));
    out
}

fn target_count(cert: &DecompositionCertificate, k: i64) -> u64 {
    match &cert.target {
        Target::Polytope(q) => count_points(q, k).unwrap(),
        Target::Union(pieces) => pieces.iter().map(|s| count_points(s, k).unwrap()).sum(),
    }
}

#[test]
fn passing_certificates_have_equal_counts_and_quasi_polynomials() {
    for (name, cert) in passing_certificates() {
        let report = verify_certificate(&cert);
        assert!(report.is_pass(), "{name}: {report:?}");
        let Target::Polytope(q) = &cert.target else {
            unreachable!()
        };
        // Weak certificates only promise equality on multiples of their scale.
        let step = match cert.mode {
            CertificateMode::Strict => 1,
            CertificateMode::Weak(s) => s as i64,
        };
        for k in (1..=report.max_dilation as i64).map(|j| j * step) {
            assert_eq!(
                count_points(&cert.source, k).unwrap(),
                target_count(&cert, k),
                "{name} k={k}"
            );
        }
        if cert.mode == CertificateMode::Strict {
            assert_eq!(ehrhart_of(&cert.source).unwrap(), ehrhart_of(q).unwrap(), "{name}");
        }
    }
}

#[test]
fn every_single_map_translation_breaks_a_certificate() {
    for (name, cert) in passing_certificates() {
        if cert.mode != CertificateMode::Strict {
            continue;
        }
        let n = cert.source.ambient_dim();
        for i in 0..cert.maps.len() {
            for axis in 0..n {
                let mut shift = vec![0; n];
                shift[axis] = if i % 2 == 0 { 1 } else { -2 };
                let tampered = cert.with_translated_map(i, &Point::from_ints(&shift));
                let report = verify_certificate(&tampered);
                assert_eq!(report.verdict, Verdict::Fail, "{name} map {i} axis {axis}");
                assert!(
                    report.failed_check.is_some() && report.witness.is_some(),
                    "{name} map {i}: {report:?}"
                );
            }
        }
    }
}

#[test]
fn non_unimodular_map_is_reported() {
    let mut cert = fixtures::mw_certificate(3).unwrap();
    cert.maps[0] =
        AffineUnimodularMap::from_ints(&[&[2, 0], &[0, 1]], Point::from_ints(&[5, -1]), MapMode::Strict).unwrap();
    let report = verify_certificate(&cert);
    assert_eq!(report.failed_check, Some(FailedCheck::Unimodularity));
}

#[test]
fn weak_and_strict_agree_at_scale_one() {
    for (name, cert) in passing_certificates() {
        let strict = verify_certificate(&cert);
        let weak = verify_weak(&cert, 1);
        if cert.mode == CertificateMode::Strict {
            assert_eq!(strict.verdict, weak.verdict, "{name}");
        } else {
            // rational translation: rejected at scale 1, accepted at its own scale
            assert_eq!(weak.failed_check, Some(FailedCheck::Unimodularity), "{name}");
        }
    }
    let weak = fixtures::weak_segment_certificate(CertificateMode::Weak(2));
    assert!(verify_certificate(&weak).is_pass());
    let strict = fixtures::weak_segment_certificate(CertificateMode::Strict);
    assert_eq!(
        verify_certificate(&strict).failed_check,
        Some(FailedCheck::Unimodularity)
    );
    // Scale 4 also clears the half-integer translation.
    assert!(verify_weak(&weak, 4).is_pass());
}

#[test]
fn partition_checks() {
    let t3 = fixtures::mw_triangle(3).unwrap();
    let open_only = Simplex::open(t3.vertices().to_vec()).unwrap();
    let report = verify_partition(&t3, &[open_only], &[1, 2, 3]);
    assert_eq!(report.failed_check, Some(FailedCheck::Coverage));

    let square = fixtures::unit_square();
    let halves = [
        Simplex::open(vec![
            Point::from_ints(&[0, 0]),
            Point::from_ints(&[1, 0]),
            Point::from_ints(&[1, 1]),
        ])
        .unwrap(),
        Simplex::open(vec![
            Point::from_ints(&[0, 0]),
            Point::from_ints(&[0, 1]),
            Point::from_ints(&[1, 1]),
        ])
        .unwrap(),
    ];
    let report = verify_partition(&square, &halves, &[1]);
    assert_eq!(report.failed_check, Some(FailedCheck::Coverage));

    let cert = fixtures::mw_certificate(4).unwrap();
    let report = verify_partition(&cert.source, &cert.pieces, &cert.verification_dilations());
    assert!(report.is_pass(), "{report:?}");
}

#[test]
fn disjointness_primitive() {
    let tri = Simplex::open(vec![
        Point::from_ints(&[0, 0]),
        Point::from_ints(&[2, 0]),
        Point::from_ints(&[0, 2]),
    ])
    .unwrap();
    let edge = Simplex::open(vec![Point::from_ints(&[2, 0]), Point::from_ints(&[0, 2])]).unwrap();
    let chord = Simplex::open(vec![Point::from_ints(&[0, 0]), Point::from_ints(&[1, 1])]).unwrap();
    let shifted = Simplex::open(vec![
        Point::new(vec![rat(1, 2), rat(1, 2)]),
        Point::new(vec![rat(5, 2), rat(1, 2)]),
        Point::new(vec![rat(1, 2), rat(5, 2)]),
    ])
    .unwrap();
    assert!(open_disjoint(&tri, &edge));
    assert!(!open_disjoint(&tri, &chord));
    assert!(!open_disjoint(&tri, &tri));
    assert!(!open_disjoint(&tri, &shifted));
    assert!(open_disjoint(&edge, &chord));
}

#[test]
fn union_targets_are_supported() {
    // The unit square onto itself, presented as a union of its open faces.
    let square = fixtures::unit_square();
    let faces = quasiperiod::geometry::open_faces_of_complex(&square.triangulate().unwrap());
    let cert = DecompositionCertificate {
        source: square,
        target: Target::Union(faces.clone()),
        maps: vec![AffineUnimodularMap::identity(2); faces.len()],
        pieces: faces,
        mode: CertificateMode::Strict,
    };
    assert!(verify_certificate(&cert).is_pass());
    for k in 1..=4 {
        assert_eq!(count_points(&cert.source, k).unwrap(), target_count(&cert, k));
    }
}
