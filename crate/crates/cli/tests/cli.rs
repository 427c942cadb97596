//! End-to-end tests of the `miniversal` binary: document shapes, exit
//! codes, determinism, and the rendered formats.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

use miniversal::exact::{Field, Scalar};
use miniversal_cli::docs::matrix_from_value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_miniversal"))
}

fn write_spec(dir: &Path, name: &str, value: Value) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(&value).unwrap()).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(output: &Output) -> Value {
    assert!(
        output.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("valid JSON on stdout")
}

fn j2_spec(dir: &Path) -> PathBuf {
    write_spec(
        dir,
        "j2.json",
        json!({
            "problem": "similarity",
            "field": "C",
            "structure": {"eigenblocks": [{"eig": "0", "partition": [2]}]}
        }),
    )
}

fn real_pair_spec(dir: &Path) -> PathBuf {
    write_spec(
        dir,
        "pair.json",
        json!({
            "problem": "similarity",
            "field": "R",
            "structure": {"eigenblocks": [{"eig": {"re": "1", "im": "2"}, "partition": [2]}]}
        }),
    )
}

fn pencil_spec(dir: &Path) -> PathBuf {
    write_spec(
        dir,
        "pencil.json",
        json!({
            "problem": "pencil",
            "field": "C",
            "structure": {"left_minimal": [2], "right_minimal": [2]}
        }),
    )
}

#[test]
fn build_emits_canonical_matrices_that_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let spec = j2_spec(dir.path());
    let doc = stdout_json(&run(&["build", spec.to_str().unwrap()]));
    assert_eq!(doc["problem"], "similarity");
    assert_eq!(doc["field"], "C");
    assert_eq!(doc["dims"], json!([2]));
    let arrows = doc["arrows"].as_array().unwrap();
    assert_eq!(arrows.len(), 1);
    let m = matrix_from_value(Field::Complex, &arrows[0]).unwrap();
    assert_eq!((m.rows(), m.cols()), (2, 2));
    assert!(m.get(0, 0).is_zero());
    assert!(m.get(0, 1).is_one());
    assert!(m.get(1, 0).is_zero());
    assert!(m.get(1, 1).is_zero());
}

#[test]
fn build_emits_both_pencil_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        dir.path(),
        "lone.json",
        json!({
            "problem": "pencil",
            "field": "R",
            "structure": {"left_minimal": [2]}
        }),
    );
    let doc = stdout_json(&run(&["build", spec.to_str().unwrap()]));
    assert_eq!(doc["dims"], json!([1, 2]));
    let arrows = doc["arrows"].as_array().unwrap();
    assert_eq!(arrows.len(), 2);
    assert_eq!(arrows[0]["name"], "A");
    assert_eq!(arrows[1]["name"], "B");
    let a = matrix_from_value(Field::Real, &arrows[0]).unwrap();
    let b = matrix_from_value(Field::Real, &arrows[1]).unwrap();
    assert_eq!((a.rows(), a.cols()), (2, 1));
    assert!(a.get(0, 0).is_one() && a.get(1, 0).is_zero());
    assert!(b.get(0, 0).is_zero() && b.get(1, 0).is_one());
}

#[test]
fn orthogonal_basis_of_rigid_pencil_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        dir.path(),
        "rigid.json",
        json!({
            "problem": "pencil",
            "field": "C",
            "structure": {"left_minimal": [2]}
        }),
    );
    let doc = stdout_json(&run(&["orthogonal", spec.to_str().unwrap()]));
    assert_eq!(doc["codimension"], 0);
    assert!(doc["basis"].as_array().unwrap().is_empty());
}

#[test]
fn pattern_on_real_pair_example() {
    let dir = tempfile::tempdir().unwrap();
    let spec = real_pair_spec(dir.path());
    let doc = stdout_json(&run(&["pattern", spec.to_str().unwrap(), "--verify"]));
    let stars: Vec<(u64, u64, u64)> = doc["stars"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| {
            (
                s["arrow"].as_u64().unwrap(),
                s["row"].as_u64().unwrap(),
                s["col"].as_u64().unwrap(),
            )
        })
        .collect();
    assert_eq!(stars, vec![(0, 0, 0), (0, 1, 0), (0, 2, 0), (0, 3, 0)]);
    assert_eq!(doc["star_count"], 4);
    assert_eq!(doc["codimension"], 4);
    assert_eq!(doc["verification"]["is_miniversal"], true);
}

#[test]
fn pattern_without_verify_omits_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let spec = j2_spec(dir.path());
    let doc = stdout_json(&run(&["pattern", spec.to_str().unwrap()]));
    assert!(doc.get("verification").is_none());
    assert_eq!(doc["codimension"], 2);
}

#[test]
fn pattern_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let spec = pencil_spec(dir.path());
    let first = run(&["pattern", spec.to_str().unwrap(), "--verify"]);
    let second = run(&["pattern", spec.to_str().unwrap(), "--verify"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn greedy_matches_pattern_cardinality_for_all_orders() {
    let dir = tempfile::tempdir().unwrap();
    let spec = pencil_spec(dir.path());
    let pattern_doc = stdout_json(&run(&["pattern", spec.to_str().unwrap()]));
    for order in ["row-major", "col-major", "reverse"] {
        let doc = stdout_json(&run(&["greedy", spec.to_str().unwrap(), "--order", order]));
        assert_eq!(doc["star_count"], pattern_doc["star_count"]);
        assert_eq!(doc["order"], order);
        assert_eq!(doc["verification"]["is_miniversal"], true);
    }
}

#[test]
fn unknown_order_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let spec = j2_spec(dir.path());
    let out = run(&["greedy", spec.to_str().unwrap(), "--order", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_json_exits_2_with_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{not json").unwrap();
    let out = run(&["build", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn invalid_structure_exits_3_naming_the_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        dir.path(),
        "unsorted.json",
        json!({
            "problem": "similarity",
            "field": "C",
            "structure": {"eigenblocks": [{"eig": "0", "partition": [1, 2]}]}
        }),
    );
    let out = run(&["build", spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("weakly decreasing"), "stderr: {stderr}");
}

#[test]
fn orthogonal_basis_size_is_codimension() {
    let dir = tempfile::tempdir().unwrap();
    let spec = j2_spec(dir.path());
    let doc = stdout_json(&run(&["orthogonal", spec.to_str().unwrap()]));
    assert_eq!(doc["codimension"], 2);
    assert_eq!(doc["basis"].as_array().unwrap().len(), 2);
}

#[test]
fn decompose_zero_direction_yields_zero_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let spec = j2_spec(dir.path());
    let zero = json!({"re": "0", "im": "0"});
    let direction = write_spec(
        dir.path(),
        "zero.json",
        json!({"matrices": [{"rows": 2, "cols": 2, "entries": [zero, zero, zero, zero]}]}),
    );
    let doc = stdout_json(&run(&[
        "decompose",
        spec.to_str().unwrap(),
        direction.to_str().unwrap(),
    ]));
    assert_eq!(doc["residual_is_zero"], true);
    for c in doc["coefficients"].as_array().unwrap() {
        let s = miniversal_cli::docs::scalar_from_value(Field::Complex, c).unwrap();
        assert!(s.is_zero());
    }
}

#[test]
fn decompose_unit_direction_recovers_unit_coefficient() {
    let dir = tempfile::tempdir().unwrap();
    let spec = j2_spec(dir.path());
    let zero = json!({"re": "0", "im": "0"});
    let one = json!({"re": "1", "im": "0"});
    // The theorem pattern for this structure has stars at (0,0) and (1,0).
    let direction = write_spec(
        dir.path(),
        "unit.json",
        json!({"matrices": [{"rows": 2, "cols": 2, "entries": [one, zero, zero, zero]}]}),
    );
    let doc = stdout_json(&run(&[
        "decompose",
        spec.to_str().unwrap(),
        direction.to_str().unwrap(),
    ]));
    let coeffs: Vec<Scalar> = doc["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| miniversal_cli::docs::scalar_from_value(Field::Complex, c).unwrap())
        .collect();
    assert!(coeffs[0].is_one());
    assert!(coeffs[1].is_zero());
    assert_eq!(doc["residual_is_zero"], true);
}

#[test]
fn decompose_shape_mismatch_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let spec = j2_spec(dir.path());
    let zero = json!({"re": "0", "im": "0"});
    let direction = write_spec(
        dir.path(),
        "bad_dir.json",
        json!({"matrices": [{"rows": 1, "cols": 2, "entries": [zero, zero]}]}),
    );
    let out = run(&[
        "decompose",
        spec.to_str().unwrap(),
        direction.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn check_passes_and_corrupt_tripwire_fails() {
    let ok = run(&["check", "--max-size", "3", "--seed", "11", "--trials", "18"]);
    assert_eq!(ok.status.code(), Some(0));
    let summary = String::from_utf8_lossy(&ok.stdout);
    assert!(summary.contains("similarity 6, pencil 6, contragredient 6"));

    let bad = run(&[
        "check",
        "--max-size",
        "3",
        "--seed",
        "11",
        "--trials",
        "18",
        "--corrupt",
    ]);
    assert_eq!(bad.status.code(), Some(5));
    let stderr = String::from_utf8_lossy(&bad.stderr);
    assert!(stderr.contains("replay structure"), "stderr: {stderr}");
}

#[test]
fn check_with_scalar_blocks_passes() {
    let out = run(&["check", "--max-size", "1", "--seed", "3", "--trials", "10"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn ascii_format_marks_stars_and_zeros() {
    let dir = tempfile::tempdir().unwrap();
    let spec = pencil_spec(dir.path());
    let out = run(&["pattern", spec.to_str().unwrap(), "--format", "ascii"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("A:"));
    assert!(text.contains("B:"));
    assert_eq!(text.matches('*').count(), 4);
    assert!(text.contains('.'));
}

#[test]
fn latex_format_names_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let spec = real_pair_spec(dir.path());
    let out = run(&["pattern", spec.to_str().unwrap(), "--format", "latex"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("\\begin{bmatrix}"));
    assert!(text.contains("1+\\lambda_{1}"));
    assert!(text.contains("\\lambda_{4}"));
}

#[test]
fn out_flag_writes_the_document_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = j2_spec(dir.path());
    let out_path = dir.path().join("doc.json");
    let out = run(&[
        "pattern",
        spec.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(out_path).unwrap()).unwrap();
    assert_eq!(doc["star_count"], 2);
}
