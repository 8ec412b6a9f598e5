use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn qweyl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qweyl")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    fs::write(&p, body).unwrap();
    p
}

#[test]
fn presentation_suite_passes() {
    let out = qweyl(&["verify", "--suite", "presentation", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["pass"], true);
}

#[test]
fn trivial_local_weyl_character() {
    let out = qweyl(&["local-weyl", "--n", "2", "--coeff", "C", "--lambda", "0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let ch = serde_json::to_string(&stdout_json(&out)["character"]).unwrap();
    assert_eq!(ch, r#"[{"weight":[0,0],"even":1,"odd":0}]"#);
}

#[test]
fn q2_dump() {
    let out = qweyl(&["build-algebra", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["labels"].as_array().unwrap().len(), 8);
    assert_eq!(serde_json::to_string(&v["dims"]).unwrap(), r#"{"even":4,"odd":4}"#);
    let out = qweyl(&["build-algebra", "--n", "2", "--coeff", "poly:2"]);
    assert_eq!(stdout_json(&out)["labels"].as_array().unwrap().len(), 16);
}

#[test]
fn output_is_reproducible() {
    let a = qweyl(&["verify", "--suite", "clifford", "--seed", "7"]);
    let b = qweyl(&["verify", "--suite", "clifford", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let a = qweyl(&["local-weyl", "--n", "2", "--coeff", "poly:2", "--lambda", "2,0", "--dump"]);
    let b = qweyl(&["local-weyl", "--n", "2", "--coeff", "poly:2", "--lambda", "2,0", "--dump"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn invalid_input_exits_2() {
    for args in [
        &["local-weyl", "--n", "2", "--lambda", "1,2"][..],
        &["local-weyl", "--n", "2", "--coeff", "poly:x", "--lambda", "1,0"],
        &["build-algebra", "--n", "1"],
        &["verify", "--suite", "nope"],
    ] {
        let out = qweyl(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
        assert!(err["error"].is_string());
    }
}

#[test]
fn garland_forms() {
    let plain = qweyl(&["verify", "--suite", "garland"]);
    assert_eq!(plain.status.code(), Some(1));
    let divided = qweyl(&["verify", "--suite", "garland", "--garland-form", "divided"]);
    assert_eq!(divided.status.code(), Some(0));
}

#[test]
fn irreducible_and_csv() {
    let out = qweyl(&["irreducible", "--n", "2", "--lambda", "2,0", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "weight,even,odd\n\"2,0\",1,1\n\"1,1\",2,2\n\"0,2\",1,1\n");
}

#[test]
fn tensor_check_from_files() {
    let p1 = scratch("psi1.json", r#"[["1","0"],["0","0"]]"#);
    let p2 = scratch("psi2.json", r#"[["0","1"],["0","0"]]"#);
    let dest = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("tensor.json");
    let out = qweyl(&[
        "tensor-check",
        "--n",
        "2",
        "--psi1",
        p1.to_str().unwrap(),
        "--psi2",
        p2.to_str().unwrap(),
        "--out",
        dest.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&dest).unwrap()).unwrap();
    assert_eq!(v["comaximal"], true);
    assert_ne!(v["branch"], "neither");

    let same = scratch("psi_aug.json", r#"[["1","0"],["0","0"]]"#);
    let out = qweyl(&[
        "tensor-check",
        "--n",
        "2",
        "--coeff",
        "poly:2",
        "--psi1",
        same.to_str().unwrap(),
        "--psi2",
        same.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn psi_file_shape_is_checked() {
    let p = scratch("psi_bad.json", r#"[["1"],["0"]]"#);
    let out = qweyl(&["local-weyl", "--n", "2", "--coeff", "poly:2", "--psi", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}
