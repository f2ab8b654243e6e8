use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qlct::io::{self, Document, Format};
use qlct_core::{fixtures, fourier_params, transform, GridSpec, Quaternion, SampledField};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;
use tempfile::TempDir;

fn qlct(args: &[&str]) -> Output {
    qlct_env(args, &[])
}

fn qlct_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qlct"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("qlct runs")
}

fn ok(out: Output) -> Output {
    assert!(out.status.success(), "qlct failed: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

fn max_diff(a: &SampledField, b: &SampledField) -> f64 {
    a.values().iter().zip(b.values()).map(|(&x, &y)| (x - y).norm()).fold(0.0, f64::max)
}

#[test]
fn transform_matches_library_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    let (input, output) = (path(&dir, "g.json"), path(&dir, "s.json"));
    ok(qlct(&["fixture", "gaussian", "--grid", "-6,6,-6,6,49,49", "--out", &input]));
    ok(qlct(&["transform", &input, "--params", "fourier", "--freq-grid", "-3,3,-3,3,25,25", "--out", &output]));

    let spec = GridSpec::square(-6.0, 6.0, 49).unwrap();
    let freq = GridSpec::square(-3.0, 3.0, 25).unwrap();
    let golden = transform::forward(&fixtures::gaussian(spec).unwrap(), fourier_params(), freq).unwrap();
    let doc = io::read(Path::new(&output)).unwrap();
    assert_eq!(doc.field.spec(), golden.field().spec());
    assert!(max_diff(&doc.field, golden.field()) <= 1e-9);
    assert!(doc.params.is_some());
}

#[test]
fn csv_and_json_roundtrip_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = StdRng::seed_from_u64(7);
    let spec = GridSpec::new(-1.3, 2.1, 0.0, 0.7, 11, 6).unwrap();
    let values = (0..spec.len())
        .map(|_| {
            Quaternion::new(rng.random(), rng.random::<f64>() * 1e-300, -rng.random::<f64>(), rng.random::<f64>() * 1e12)
        })
        .collect();
    let field = SampledField::new(spec, values).unwrap();
    let doc = Document::plain(field);
    for (name, format) in [("f.json", Format::Json), ("f.csv", Format::Csv)] {
        let p = PathBuf::from(path(&dir, name));
        io::write(&doc, &p, format).unwrap();
        let back = io::read(&p).unwrap();
        assert_eq!(back.field.spec(), doc.field.spec(), "{name}");
        let same = back.field.values().iter().zip(doc.field.values()).all(|(a, b)| {
            a.to_array().iter().zip(b.to_array()).all(|(x, y)| x.to_bits() == y.to_bits())
        });
        assert!(same, "{name} values changed");
    }
}

#[test]
fn csv_without_sidecar_infers_grid_from_shuffled_rows() {
    let dir = tempfile::tempdir().unwrap();
    let p = path(&dir, "rows.csv");
    let mut text = String::from("x1,x2,qa,qb,qc,qd\n");
    let mut rows = Vec::new();
    for a in [0.0, 0.5, 1.0] {
        for b in [-1.0, 1.0] {
            rows.push(format!("{a},{b},{},0,0,{}\n", a + b, a * b));
        }
    }
    rows.reverse();
    rows.swap(1, 4);
    text.extend(rows);
    std::fs::write(&p, text).unwrap();

    let doc = io::read(Path::new(&p)).unwrap();
    let spec = doc.field.spec();
    assert_eq!((spec.n1, spec.n2), (3, 2));
    assert_eq!((spec.x1_min, spec.x1_max, spec.x2_min, spec.x2_max), (0.0, 1.0, -1.0, 1.0));
    assert_eq!(doc.field.get(1, 1), Quaternion::new(1.5, 0.0, 0.0, 0.5));
}

#[test]
fn csv_with_missing_node_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = path(&dir, "gap.csv");
    std::fs::write(&p, "x1,x2,qa,qb,qc,qd\n0,0,1,0,0,0\n1,0,1,0,0,0\n0,1,1,0,0,0\n").unwrap();
    let out = qlct(&["transform", &p, "--params", "fourier"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_header_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = path(&dir, "bad.csv");
    std::fs::write(&p, "a,b,c\n1,2,3\n").unwrap();
    let out = qlct(&["transform", &p, "--params", "fourier"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn moments_report_example1_numerator_block() {
    let dir = tempfile::tempdir().unwrap();
    let input = path(&dir, "n.json");
    ok(qlct(&["fixture", "example1-numerator", "--grid", "0,2,0,2,129,129", "--rule", "simpson", "--out", &input]));
    let out = ok(qlct(&["moments", &input, "--denominator", "20,0,4,8"]));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let e_x1: Vec<f64> = serde_json::from_value(v["moments"]["e_x1"].clone()).unwrap();
    for (got, want) in e_x1.iter().zip([44.0 / 3.0, 8.0 / 3.0, 16.0 / 3.0, 12.0]) {
        assert!((got - want).abs() <= 1e-9, "{got} vs {want}");
    }
    let left: Vec<f64> = serde_json::from_value(v["normalized"]["e_x1"].clone()).unwrap();
    for (got, want) in left.iter().zip([0.855556, 0.1, 0.055556, 0.277778]) {
        assert!((got - want).abs() <= 1e-6, "{got} vs {want}");
    }
    assert_eq!(v["validation"]["strict_ok"], Value::Bool(false));
}

#[test]
fn require_valid_rejects_non_density() {
    let dir = tempfile::tempdir().unwrap();
    let input = path(&dir, "n.json");
    ok(qlct(&["fixture", "example1-numerator", "--grid", "0,2,0,2,33,33", "--out", &input]));
    let out = qlct(&["moments", &input, "--require-valid", "strict"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn charfn_of_uniform_is_one_at_origin() {
    let dir = tempfile::tempdir().unwrap();
    let (input, output, report) = (path(&dir, "u.json"), path(&dir, "cf.csv"), path(&dir, "r.json"));
    ok(qlct(&["fixture", "uniform", "--grid", "0,1,0,1,33,33", "--out", &input]));
    ok(qlct(&["charfn", &input, "--freq-grid", "-4,4,-4,4,9,9", "--report", &report, "--out", &output]));
    let doc = io::read(Path::new(&output)).unwrap();
    assert!((doc.field.get(4, 4) - Quaternion::ONE).norm() <= 1e-12);
    assert!(doc.mode.is_some());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["bounded"], Value::Bool(true));
}

#[test]
fn invert_recovers_density_from_charfn() {
    let dir = tempfile::tempdir().unwrap();
    let (input, cf, back) = (path(&dir, "g.json"), path(&dir, "cf.json"), path(&dir, "back.json"));
    ok(qlct(&["fixture", "gaussian-pdf", "--grid", "-7,7,-7,7,57,57", "--out", &input]));
    ok(qlct(&["charfn", &input, "--freq-grid", "-8,8,-8,8,65,65", "--out", &cf]));
    ok(qlct(&["invert", &cf, "--grid", "-3,3,-3,3,13,13", "--out", &back]));
    let got = io::read(Path::new(&back)).unwrap().field;
    let want = fixtures::gaussian_pdf(*got.spec(), 1.0, 1.0).unwrap();
    assert!(max_diff(&got, &want) <= 1e-6, "{}", max_diff(&got, &want));
}

#[test]
fn invert_spectrum_with_shear_params() {
    let dir = tempfile::tempdir().unwrap();
    let (input, params, s, back) = (path(&dir, "b.json"), path(&dir, "p.json"), path(&dir, "s.json"), path(&dir, "back.json"));
    std::fs::write(&params, r#"{"A1": {"a": 1, "b": 0.5, "c": 0, "d": 1}, "A2": {"a": 1, "b": 0.5, "c": 0, "d": 1}}"#)
        .unwrap();
    ok(qlct(&["fixture", "bump", "--grid", "-6,6,-6,6,65,65", "--out", &input]));
    ok(qlct(&["transform", &input, "--params", &params, "--freq-grid", "-8,8,-8,8,97,97", "--out", &s]));
    ok(qlct(&["invert", &s, "--grid", "-6,6,-6,6,65,65", "--out", &back]));
    let got = io::read(Path::new(&back)).unwrap().field;
    let want = io::read(Path::new(&input)).unwrap().field;
    assert!(max_diff(&got, &want) <= 1e-6, "{}", max_diff(&got, &want));
}

#[test]
fn invert_without_params_is_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = path(&dir, "g.json");
    ok(qlct(&["fixture", "gaussian", "--grid", "-2,2,-2,2,5,5", "--out", &input]));
    assert_eq!(qlct(&["invert", &input]).status.code(), Some(3));
}

#[test]
fn missing_file_is_input_error() {
    let out = qlct(&["transform", "/nonexistent/x.json", "--params", "fourier"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_independent_of_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let input = path(&dir, "b.json");
    ok(qlct(&["fixture", "bump", "--grid", "-4,4,-4,4,41,41", "--out", &input]));
    let run = |threads: &str| {
        ok(qlct_env(&["transform", &input, "--params", "fourier"], &[("QLCT_THREADS", threads)])).stdout
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn invalid_thread_count_is_config_error() {
    let out = qlct_env(&["verify"], &[("QLCT_THREADS", "zero")]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("QLCT_THREADS"));
}

#[test]
fn verify_is_deterministic_and_exit_code_tracks_failures() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (path(&dir, "a.json"), path(&dir, "b.json"));
    let first = qlct(&["verify", "--out", &a]);
    let second = qlct(&["verify", "--out", &b]);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let text = String::from_utf8(first.stdout).unwrap();
    assert!(text.contains("theorem1.parseval: reproduced-with-different-constant; measured constant 1.0"));
    assert!(text.contains("example1.E_X1_numerator: reproduced"));
    assert!(text.contains("example2.moment_integral: not-reproduced; measured oracle (e^{-iu}(1+iu)-1)/u²"));
    let failing = text.lines().last().unwrap().ends_with(" 0 required failing");
    assert_eq!(first.status.code(), Some(if failing { 0 } else { 4 }));
}

#[test]
fn empty_input_reports_no_rows() {
    let dir = tempfile::tempdir().unwrap();
    let p = path(&dir, "empty.csv");
    std::fs::write(&p, "").unwrap();
    let out = qlct(&["transform", &p, "--params", "fourier"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no rows"));
}

#[test]
fn non_unimodular_params_name_the_axis() {
    let dir = tempfile::tempdir().unwrap();
    let (input, params) = (path(&dir, "g.json"), path(&dir, "p.json"));
    std::fs::write(&params, r#"{"A1": {"a": 0.9, "b": 0, "c": 0, "d": 1}, "A2": {"a": 0, "b": 1, "c": -1, "d": 0}}"#).unwrap();
    ok(qlct(&["fixture", "gaussian", "--grid", "-2,2,-2,2,5,5", "--out", &input]));
    let out = qlct(&["transform", &input, "--params", &params]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("det(A1) != 1"));
}

#[test]
fn lct_charfn_without_params_is_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = path(&dir, "u.json");
    ok(qlct(&["fixture", "uniform", "--grid", "0,1,0,1,5,5", "--out", &input]));
    let out = qlct(&["charfn", &input, "--mode", "lct"]);
    assert_eq!(out.status.code(), Some(3));
}
