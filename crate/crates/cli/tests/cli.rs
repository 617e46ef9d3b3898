//! End-to-end tests of the `fint` binary: exit codes, JSON shapes, the
//! documented examples, and the reproducibility contract (equal seeds give
//! byte-equal payloads and checksums).

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

fn fint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fint"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fint_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fint"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

/// Parse stdout as one JSON object after asserting a zero exit.
fn json_ok(out: &Output) -> Value {
    assert_eq!(code(out), 0, "stderr: {}", stderr_str(out));
    serde_json::from_str(stdout_str(out).trim()).expect("stdout is JSON")
}

fn num(v: &Value, key: &str) -> f64 {
    v[key].as_f64().unwrap_or_else(|| panic!("missing {key} in {v}"))
}

fn write(path: &Path, text: &str) {
    fs::write(path, text).expect("fixture written");
}

fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[test]
fn poisson_tail_at_level_zero_prints_exactly_one() {
    let out = fint(&["poisson", "tail", "--n", "0", "--c", "3.7"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_str(&out).trim(), r#"{"value":1.0}"#);
}

#[test]
fn poisson_tail_rejects_negative_levels() {
    let out = fint(&["poisson", "tail", "--n", "-1", "--c", "2"]);
    assert_eq!(code(&out), 2);
    assert!(stderr_str(&out).contains("non-negative"));
}

#[test]
fn poisson_wait_replays_bitwise_for_a_fixed_seed() {
    let args = [
        "poisson", "wait", "--k", "2", "--c", "0.8", "--samples", "20000", "--seed", "9",
    ];
    let first = fint(&args);
    let second = fint(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(stdout_str(&first), stdout_str(&second));
    let v = json_ok(&first);
    assert!(num(&v, "error") > 0.0);
    assert_eq!(num(&v, "samples"), 20000.0);
    assert_eq!(num(&v, "seed"), 9.0);
}

#[test]
fn pfaffian_of_the_canonical_four_by_four_is_two() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("canonical4.json");
    write(&path, "[[0,1,0,0],[-1,0,0,0],[0,0,0,2],[0,0,-2,0]]");
    let out = fint(&["pfaffian", "--matrix", path.to_str().unwrap()]);
    let v = json_ok(&out);
    assert_eq!(num(&v, "value"), 2.0);
    assert!(num(&v, "det_residual") <= 1e-12);
}

#[test]
fn pfaffian_rejects_odd_dimensions() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("odd.json");
    write(&path, "[[0,1,0],[-1,0,0],[0,0,0]]");
    let out = fint(&["pfaffian", "--matrix", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr_str(&out).contains("even dimension"));
}

#[test]
fn unknown_subcommands_are_usage_errors() {
    let out = fint(&["frobnicate"]);
    assert_eq!(code(&out), 2);
    let help = fint(&["--help"]);
    assert_eq!(code(&help), 0);
}

#[test]
fn gaussian_norm_fiducial_is_sqrt_scale() {
    let out = fint(&["gaussian", "norm", "--scale", "4"]);
    let v = json_ok(&out);
    assert_eq!(num(&v, "value_re"), 2.0);
    assert_eq!(num(&v, "value_im"), 0.0);
}

#[test]
fn gaussian_char_agrees_with_its_closed_form() {
    let out = fint(&[
        "gaussian", "char", "--dim", "2", "--scale", "1.1,0.3", "--zprime", "0.4", "--zprime",
        "-0.2,0.1", "--order", "48",
    ]);
    let v = json_ok(&out);
    assert!(num(&v, "gap") <= 1e-10, "gap {}", num(&v, "gap"));
    assert_eq!(v["method"], "quadrature");
}

#[test]
fn gaussian_char_rejects_dim_matrix_conflicts() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("q.json");
    write(&path, "[[[1.5,0.0]]]");
    let out = fint(&[
        "gaussian", "char", "--dim", "3", "--matrix", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr_str(&out).contains("conflicts"));
}

#[test]
fn symplectic_char_matches_its_pfaffian_closed_form() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("rep.json");
    write(&path, "[[[1.3,0.0],[0.2,0.1]],[[0.2,-0.1],[0.9,0.0]]]");
    let out = fint(&[
        "symplectic", "char", "--matrix", path.to_str().unwrap(), "--scale", "1", "--order", "32",
    ]);
    let v = json_ok(&out);
    assert!(num(&v, "gap") <= 1e-10, "gap {}", num(&v, "gap"));
}

#[test]
fn propagator_free_matches_the_closed_kernel() {
    let out = fint(&[
        "propagator", "--kind", "free", "--slices", "16", "--t", "1.3", "--xa", "0.35", "--xb",
        "-0.6", "--scale", "0.8,0.6",
    ]);
    let v = json_ok(&out);
    assert!(num(&v, "error") <= 1e-12, "error {}", num(&v, "error"));
    assert_eq!(num(&v, "slices"), 16.0);
}

#[test]
fn propagator_harmonic_reports_a_refinement_estimate() {
    let out = fint(&[
        "propagator", "--kind", "harmonic", "--omega", "1.0", "--slices", "400", "--t", "1",
        "--xa", "0.2", "--xb", "0.4",
    ]);
    let v = json_ok(&out);
    assert!(num(&v, "error") <= 1e-3);
    assert!(num(&v, "value_re").is_finite());
}

#[test]
fn propagator_requires_omega_for_the_harmonic_kind() {
    let out = fint(&[
        "propagator", "--kind", "harmonic", "--slices", "8", "--t", "1", "--xa", "0", "--xb", "0",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn dyson_certifies_truncation_and_unitarity() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("h.json");
    write(&path, r#"{"kind":"sz_plus_t_sx"}"#);
    let out = fint(&[
        "dyson", "--hamiltonian", path.to_str().unwrap(), "--order", "12", "--t0", "0", "--t1",
        "1", "--panels", "400",
    ]);
    let v = json_ok(&out);
    assert_eq!(num(&v, "dim"), 2.0);
    assert_eq!(v["matrix"].as_array().expect("matrix").len(), 4);
    assert!(num(&v, "truncation_bound") <= 1e-8);
    assert!(num(&v, "unitarity_drift") <= 1e-6);
}

#[test]
fn dyson_constant_generator_matches_the_matrix_exponential() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("sx.json");
    write(
        &path,
        r#"{"kind":"constant","matrix":[[[0,0],[1,0]],[[1,0],[0,0]]]}"#,
    );
    let out = fint(&[
        "dyson", "--hamiltonian", path.to_str().unwrap(), "--order", "24", "--t0", "0", "--t1",
        "1.2", "--panels", "800",
    ]);
    let v = json_ok(&out);
    // exp(i·1.2·σx) = [[cos 1.2, i sin 1.2], [i sin 1.2, cos 1.2]].
    let m = v["matrix"].as_array().expect("matrix");
    let entry = |k: usize, part: usize| m[k].as_array().expect("pair")[part].as_f64().unwrap();
    let (cos, sin) = (0.3623577544766736, 0.9320390859672263);
    assert!((entry(0, 0) - cos).abs() <= 1e-10);
    assert!(entry(0, 1).abs() <= 1e-10);
    assert!(entry(1, 0).abs() <= 1e-10);
    assert!((entry(1, 1) - sin).abs() <= 1e-10);
}

#[test]
fn group_verify_passes_on_the_default_z6_fixtures() {
    let out = fint(&["group", "verify", "--group", "z6", "--seed", "3"]);
    let v = json_ok(&out);
    assert_eq!(v["all_passed"], true);
    assert_eq!(v["checks"].as_array().expect("checks").len(), 5);
}

#[test]
fn group_verify_accepts_a_finite_fixture_file() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("z6.json");
    let mut table = String::from("[");
    for i in 0..6 {
        if i > 0 {
            table.push(',');
        }
        let row: Vec<String> = (0..6).map(|j| ((i + j) % 6).to_string()).collect();
        table.push_str(&format!("[{}]", row.join(",")));
    }
    table.push(']');
    let file = format!(
        r#"{{"order":6,"product_table":{table},"functions":[
            {{"label":"f1","values":[[1,0],[0,1],[-0.5,0.25],[0.3,-0.7],[0,0],[0.9,0.1]]}},
            {{"label":"f2","values":[[0.2,0],[0.1,-0.4],[0,0.8],[-0.3,0],[0.5,0.5],[-0.1,0.2]]}},
            {{"label":"f3","values":[[0,0.3],[0.7,0],[0.2,0.2],[0,-0.6],[-0.4,0.1],[0.6,0]]}}
        ]}}"#
    );
    write(&path, &file);
    let out = fint(&[
        "group", "verify", "--group", "z6", "--fixtures", path.to_str().unwrap(),
    ]);
    let v = json_ok(&out);
    assert_eq!(v["all_passed"], true);
}

#[test]
fn group_verify_rejects_non_group_tables() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("bad.json");
    write(
        &path,
        r#"{"order":2,"product_table":[[0,0],[0,0]],"functions":[
            {"label":"a","values":[[1,0],[0,0]]},
            {"label":"b","values":[[0,0],[1,0]]},
            {"label":"c","values":[[1,0],[1,0]]}
        ]}"#,
    );
    let out = fint(&[
        "group", "verify", "--group", "z6", "--fixtures", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn group_verify_affine_uses_builtin_fixtures() {
    let out = fint(&["group", "verify", "--group", "affine"]);
    let v = json_ok(&out);
    assert_eq!(v["all_passed"], true);
    let rejected = fint(&["group", "verify", "--group", "affine", "--fixtures", "x.json"]);
    assert_eq!(code(&rejected), 2);
}

#[test]
fn gamma_norm_matches_the_closed_product() {
    let out = fint(&["gamma", "norm", "--alpha", "2.5", "--beta", "2.0"]);
    let v = json_ok(&out);
    assert!((num(&v, "closed_re") - 0.1767766952966369).abs() <= 1e-15);
    assert!(num(&v, "gap") <= 1e-8);
    let rejected = fint(&["gamma", "norm", "--alpha", "2.5", "--beta", "-1.0"]);
    assert_eq!(code(&rejected), 2);
}

#[test]
fn gamma_incomplete_parts_cross_check_and_sum_to_gamma() {
    let out = fint(&["gamma", "incomplete", "--alpha", "1.7", "--c", "6"]);
    let v = json_ok(&out);
    assert!(num(&v, "cf_gap") <= 1e-12);
    let total = num(&v, "lower_re") + num(&v, "upper_re");
    assert!((total - 0.9086387328532907).abs() <= 1e-10);
}

#[test]
fn delta_pairing_concentrates_on_the_origin_value() {
    let gaussian = json_ok(&fint(&["delta", "pairing"]));
    assert_eq!(num(&gaussian, "expected"), 1.0);
    assert!(num(&gaussian, "gap") <= 1e-2);
    let window = json_ok(&fint(&["delta", "pairing", "--test", "window"]));
    assert_eq!(num(&window, "expected"), 0.0);
    assert!(num(&window, "gap") <= 1e-2);
}

#[test]
fn delta_limits_small_scale_normalizations_are_bit_exact() {
    let v = json_ok(&fint(&["delta", "limits", "--family", "gaussian", "--regime", "small"]));
    for s in v["samples"].as_array().expect("samples") {
        assert_eq!(s["normalized_re"].as_f64().unwrap(), 1.0);
        assert_eq!(s["normalized_im"].as_f64().unwrap(), 0.0);
    }
    assert!(v["fitted_slope"].is_null());
}

#[test]
fn delta_limits_large_scale_slope_matches_the_prediction() {
    let v = json_ok(&fint(&["delta", "limits", "--family", "skew", "--regime", "large"]));
    let fitted = num(&v, "fitted_slope");
    let predicted = num(&v, "predicted_slope");
    assert!((fitted - predicted).abs() / predicted.abs() <= 5e-2);
}

#[test]
fn report_all_repeats_identical_checksums() {
    let first = fint(&["report-all", "--seed", "42"]);
    let second = fint(&["report-all", "--seed", "42"]);
    assert_eq!(code(&first), 0, "stderr: {}", stderr_str(&first));
    assert_eq!(code(&second), 0);
    let lines: Vec<String> = stdout_str(&first).lines().map(String::from).collect();
    assert_eq!(lines.len(), 15, "14 criteria plus the checksum line");
    for line in &lines[..14] {
        assert!(line.starts_with("ok"), "criterion failed: {line}");
    }
    let checksum_first = lines.last().expect("checksum line").clone();
    assert!(checksum_first.starts_with("checksum sha256:"));
    let checksum_second = stdout_str(&second).lines().last().expect("line").to_string();
    assert_eq!(checksum_first, checksum_second);
}

#[test]
fn report_all_runs_single_criteria_and_rejects_bad_ids() {
    let out = fint(&["report-all", "--seed", "42", "--criterion", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout_str(&out);
    assert!(text.contains("fiducial-normalization-sqrt-s"));
    assert_eq!(text.lines().count(), 2);
    let bad = fint(&["report-all", "--criterion", "15"]);
    assert_eq!(code(&bad), 2);
}

#[test]
fn report_all_artifact_matches_the_manifest_checksum() {
    let dir = tempfile::tempdir().expect("tempdir");
    let artifact = dir.path().join("report.json");
    let manifest = dir.path().join("manifest.json");
    let out = fint(&[
        "report-all", "--seed", "42", "--criterion", "5", "--out",
        artifact.to_str().unwrap(), "--manifest", manifest.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);

    let report: Value =
        serde_json::from_str(&fs::read_to_string(&artifact).expect("artifact")).expect("json");
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["seed"], 42);
    let criteria = report["criteria"].as_array().expect("criteria");
    assert_eq!(criteria.len(), 1);
    assert_eq!(criteria[0]["id"], 5);
    assert_eq!(criteria[0]["passed"], true);

    let m: Value =
        serde_json::from_str(&fs::read_to_string(&manifest).expect("manifest")).expect("json");
    assert_eq!(m["subcommand"], "report-all");
    assert_eq!(m["seed"], 42);
    // The checksum covers the canonical (compact, sorted-key) payload; the
    // pretty artifact round-trips to exactly that string.
    let canonical = serde_json::to_string(&report).expect("canonical");
    assert_eq!(
        m["checksum"].as_str().expect("checksum"),
        format!("sha256:{}", sha256_hex(&canonical))
    );
}

#[test]
fn manifest_records_a_replayable_run() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("manifest.json");
    let args = [
        "poisson", "tail", "--n", "3", "--c", "1.5", "--manifest", path.to_str().unwrap(),
    ];
    let out = fint(&args);
    assert_eq!(code(&out), 0);
    let m: Value =
        serde_json::from_str(&fs::read_to_string(&path).expect("manifest")).expect("json");
    assert_eq!(m["subcommand"], "poisson tail");
    assert!(m["seed"].is_null());
    assert_eq!(m["version"], env!("CARGO_PKG_VERSION"));
    let expected = format!("sha256:{}", sha256_hex(stdout_str(&out).trim()));
    assert_eq!(m["checksum"].as_str().expect("checksum"), expected);

    // Replaying the recorded argv reproduces the output byte for byte.
    let argv: Vec<String> = m["argv"]
        .as_array()
        .expect("argv")
        .iter()
        .map(|a| a.as_str().expect("string").to_string())
        .collect();
    let replay = Command::new(env!("CARGO_BIN_EXE_fint"))
        .args(&argv)
        .output()
        .expect("binary runs");
    assert_eq!(stdout_str(&out), stdout_str(&replay));
}

#[test]
fn fint_threads_cap_is_validated_and_preserves_results() {
    let bad = fint_env(&["poisson", "tail", "--n", "0", "--c", "1"], "FINT_THREADS", "abc");
    assert_eq!(code(&bad), 2);
    let zero = fint_env(&["poisson", "tail", "--n", "0", "--c", "1"], "FINT_THREADS", "0");
    assert_eq!(code(&zero), 2);

    let args = [
        "gaussian", "char", "--dim", "3", "--scale", "1.2,0.4", "--zprime", "0.3", "--zprime",
        "-0.1,0.2", "--zprime", "0.05", "--order", "32",
    ];
    let one = fint_env(&args, "FINT_THREADS", "1");
    let four = fint_env(&args, "FINT_THREADS", "4");
    assert_eq!(code(&one), 0);
    assert_eq!(stdout_str(&one), stdout_str(&four));
}
