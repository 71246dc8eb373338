use std::path::PathBuf;
use std::process::Command;

use proptest::prelude::*;
use quasiperiod::fixtures::CATALOG;
use quasiperiod_cli::format::{emit_rational, parse_rational, to_document, CertificateFile, PolytopeFile};
use quasiperiod_cli::{run, EXIT_FAILED, EXIT_MALFORMED, EXIT_OK};
use serde_json::Value;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("quasiperiod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write(name: &str, contents: &str) -> String {
    let path = scratch(name);
    std::fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

fn cli(args: &[&str]) -> quasiperiod_cli::Outcome {
    run(std::iter::once("quasiperiod").chain(args.iter().copied()))
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|e| panic!("not JSON ({e}): {s}"))
}

fn example(name: &str, param: Option<&str>) -> String {
    let mut args = vec!["example", "--name", name];
    if let Some(p) = param {
        args.extend(["--param", p]);
    }
    let out = cli(&args);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    out.stdout
}

fn example_file(name: &str, param: Option<&str>, file: &str) -> String {
    write(file, &example(name, param))
}

#[test]
fn count_of_triangle_dilate() {
    let f = example_file("mw-triangle", Some("D=3"), "count-mw3.json");
    let out = cli(&["count", "--polytope", &f, "--dilation", "2"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "{\"count\":9}\n");
}

#[test]
fn collapse_reports_fields_in_order() {
    let f = example_file("mw-triangle", Some("D=3"), "collapse-mw3.json");
    let out = cli(&["collapse", "--polytope", &f]);
    assert_eq!(out.code, EXIT_OK);
    assert!(
        out.stdout
            .starts_with("{\"denominator\":3,\"minimal_quasi_period\":1,\"collapsed\":true,"),
        "{}",
        out.stdout
    );
}

#[test]
fn ehrhart_table_for_pyramid() {
    let f = example_file("stanley-pyramid", None, "ehrhart-pyramid.json");
    let v = json(&cli(&["ehrhart", "--polytope", &f]).stdout);
    assert_eq!(v["degree"], 3);
    assert_eq!(v["period"], 1);
    assert_eq!(v["coefficients"], serde_json::json!([["1", "11/6", "1", "1/6"]]));
}

#[test]
fn segment_keeps_its_period() {
    let f = write("segment-2-5.json", "{\"dim\":1,\"vertices\":[[\"0\"],[\"2/5\"]]}");
    let v = json(&cli(&["collapse", "--polytope", &f]).stdout);
    assert_eq!(v["denominator"], 5);
    assert_eq!(v["minimal_quasi_period"], 5);
    assert_eq!(v["collapsed"], false);
}

#[test]
fn verify_exit_codes() {
    let good = example_file("mw-certificate", Some("D=3"), "verify-mw3.json");
    let out = cli(&["verify", "--certificate", &good]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(json(&out.stdout)["verdict"], "pass");

    let mut cert = json(&example("mw-certificate", Some("D=3")));
    cert["maps"][0]["matrix"] = serde_json::json!([[2, 0], [0, 1]]);
    let bad = write("verify-mw3-bad.json", &cert.to_string());
    let out = cli(&["verify", "--certificate", &bad]);
    assert_eq!(out.code, EXIT_FAILED);
    let v = json(&out.stdout);
    assert_eq!(v["verdict"], "fail");
    assert_eq!(v["failed_check"], "unimodularity");
}

#[test]
fn weak_certificate_passes_and_strict_reading_fails() {
    let weak = example_file("weak-segment-certificate", None, "weak.json");
    assert_eq!(cli(&["verify", "--certificate", &weak]).code, EXIT_OK);

    let mut cert = json(&example("weak-segment-certificate", None));
    assert_eq!(cert["mode"], serde_json::json!({"weak": 2}));
    cert["mode"] = Value::from("strict");
    let strict = write("weak-as-strict.json", &cert.to_string());
    let out = cli(&["verify", "--certificate", &strict]);
    assert_eq!(out.code, EXIT_FAILED);
    assert_eq!(json(&out.stdout)["failed_check"], "unimodularity");
}

#[test]
fn reciprocity_and_twelve() {
    let q = example_file("quadrilateral", Some("D=3"), "recip-q3.json");
    let out = cli(&["reciprocity", "--polytope", &q, "--max-k", "5"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "{\"verdict\":\"pass\",\"max_k\":5}\n");

    // An off-center copy of the square: the command centers it first.
    let square = write(
        "square-shifted.json",
        "{\"dim\":2,\"vertices\":[[\"4\",\"4\"],[\"6\",\"4\"],[\"6\",\"6\"],[\"4\",\"6\"]]}",
    );
    let out = cli(&["twelve", "--polygon", &square]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let v = json(&out.stdout);
    assert_eq!((v["length"].as_u64(), v["dual_length"].as_u64()), (Some(8), Some(4)));
    assert_eq!(v["sum"], 12);
}

#[test]
fn twelve_rejects_non_reflexive_polygon() {
    let f = write(
        "big-triangle.json",
        "{\"dim\":2,\"vertices\":[[\"0\",\"0\"],[\"4\",\"0\"],[\"0\",\"4\"]]}",
    );
    let out = cli(&["twelve", "--polygon", &f]);
    assert_eq!(out.code, EXIT_MALFORMED);
    assert_eq!(json(&out.stderr)["error"]["kind"], "invalid-polygon");
}

#[test]
fn malformed_inputs_exit_2_with_json_errors() {
    let zero = write("zero-den.json", "{\"dim\":1,\"vertices\":[[\"1/0\"],[\"1\"]]}");
    let mismatch = write("mismatch.json", "{\"dim\":2,\"vertices\":[[\"1\"],[\"1\",\"2\"]]}");
    let garbage = write("garbage.json", "{not json");
    let four = write(
        "simplex4.json",
        "{\"dim\":4,\"vertices\":[[\"0\",\"0\",\"0\",\"0\"],[\"1\",\"0\",\"0\",\"0\"],[\"0\",\"1\",\"0\",\"0\"],[\"0\",\"0\",\"1\",\"0\"],[\"0\",\"0\",\"0\",\"1\"]]}",
    );
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (vec!["frobnicate"], "usage"),
        (vec!["count"], "usage"),
        (vec!["count", "--polytope", &zero], "malformed-input"),
        (vec!["count", "--polytope", &mismatch], "malformed-input"),
        (vec!["count", "--polytope", &garbage], "invalid-json"),
        (vec!["count", "--polytope", "/nonexistent/p.json"], "io"),
        (vec!["ehrhart", "--polytope", &four], "dimension-cap-exceeded"),
        (vec!["example", "--name", "no-such-fixture"], "malformed-input"),
        (
            vec!["example", "--name", "mw-triangle", "--param", "q=3"],
            "malformed-input",
        ),
        (
            vec!["example", "--name", "mw-triangle", "--param", "D=1"],
            "malformed-input",
        ),
    ];
    for (args, kind) in cases {
        let out = cli(&args);
        assert_eq!(out.code, EXIT_MALFORMED, "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert_eq!(json(&out.stderr)["error"]["kind"], kind, "{args:?}: {}", out.stderr);
    }
}

#[test]
fn unequal_piece_and_map_counts_are_malformed() {
    let mut cert = json(&example("mw-certificate", Some("D=2")));
    cert["maps"].as_array_mut().unwrap().pop();
    let f = write("short-maps.json", &cert.to_string());
    let out = cli(&["verify", "--certificate", &f]);
    assert_eq!(out.code, EXIT_MALFORMED);
}

/// Every catalog fixture survives parse → emit byte for byte.
#[test]
fn catalog_round_trips_byte_identically() {
    for &(name, param) in CATALOG {
        let params: Vec<Option<String>> = match param {
            None => vec![None],
            Some("index") => (0..10).map(|i| Some(format!("index={i}"))).collect(),
            Some(key) => (2..=5).map(|v| Some(format!("{key}={v}"))).collect(),
        };
        for p in params {
            let doc = example(name, p.as_deref());
            let reemitted = if doc.contains("\"pieces\"") {
                let file: CertificateFile = serde_json::from_str(&doc).unwrap();
                to_document(&CertificateFile::emit(&file.parse().unwrap()).unwrap())
            } else if name == "reflexive" {
                let file: PolytopeFile = serde_json::from_str(&doc).unwrap();
                to_document(&PolytopeFile::emit_polygon(&file.parse_polygon().unwrap()))
            } else {
                let file: PolytopeFile = serde_json::from_str(&doc).unwrap();
                to_document(&PolytopeFile::emit(&file.parse().unwrap()))
            };
            assert_eq!(doc, reemitted, "{name} {p:?}");
        }
    }
}

#[test]
fn out_flag_writes_the_same_document() {
    let path = scratch("written-pyramid.json");
    let p = path.to_str().unwrap();
    let out = cli(&["example", "--name", "stanley-pyramid", "--out", p]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        example("stanley-pyramid", None)
    );
}

#[test]
fn non_canonical_rationals_are_canonicalized() {
    let f = write(
        "noncanonical.json",
        "{\"dim\":1,\"vertices\":[[\"0/7\"],[\"\u{2212}4/6\"]]}",
    );
    let file: PolytopeFile = serde_json::from_str(&std::fs::read_to_string(&f).unwrap()).unwrap();
    let emitted = PolytopeFile::emit(&file.parse().unwrap());
    assert_eq!(emitted.vertices, vec![vec!["0".to_string()], vec!["-2/3".to_string()]]);
}

#[test]
fn binary_matches_library() {
    let f = example_file("mw-triangle", Some("D=4"), "binary-mw4.json");
    let exe = env!("CARGO_BIN_EXE_quasiperiod");
    let output = Command::new(exe)
        .args(["count", "--polytope", &f, "--dilation", "3"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(EXIT_OK));
    let lib = cli(&["count", "--polytope", &f, "--dilation", "3"]);
    assert_eq!(String::from_utf8(output.stdout).unwrap(), lib.stdout);

    let output = Command::new(exe).arg("nonsense").output().unwrap();
    assert_eq!(output.status.code(), Some(EXIT_MALFORMED));
    let err = json(&String::from_utf8(output.stderr).unwrap());
    assert_eq!(err["error"]["kind"], "usage");

    let mut cert = json(&example("stanley-certificate", None));
    cert["maps"][0]["translation"] = serde_json::json!(["0", "0", "1"]);
    let bad = write("binary-stanley-bad.json", &cert.to_string());
    let output = Command::new(exe)
        .args(["verify", "--certificate", &bad])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(EXIT_FAILED));
}

proptest! {
    #[test]
    fn rational_strings_round_trip(n in -10_000i64..10_000, d in 1i64..500) {
        let q = parse_rational(&format!("{n}/{d}")).unwrap();
        let s = emit_rational(&q);
        prop_assert_eq!(parse_rational(&s).unwrap(), q.clone());
        prop_assert_eq!(emit_rational(&parse_rational(&s).unwrap()), s);
    }
}
