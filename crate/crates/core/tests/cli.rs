use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn trispcl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trispcl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        Files {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn put(&self, name: &str, text: &str) -> String {
        write(self.dir.path(), name, text)
            .to_str()
            .unwrap()
            .to_owned()
    }
}

const CHAIN3: &str = r#"{"elements": ["a", "b", "c"], "less": [[0, 1], [1, 2]]}"#;
const TRIANGLE_FACES: &str = r#"{"elements": ["0", "1", "2", "01", "02", "12"],
    "less": [[0, 3], [1, 3], [0, 4], [2, 4], [1, 5], [2, 5]]}"#;
const ROTATION: &str = r#"{"generators": [[[1, 2, 0, 5, 3, 4]]]}"#;

#[test]
fn exit_codes() {
    let f = Files::new();
    let ok = f.put("ok.json", r#"{"elements": ["a", "b"], "less": [[0, 1]]}"#);
    let out = trispcl(&["validate", "--input", &ok]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["valid"], true);

    let cyclic = f.put(
        "cyclic.json",
        r#"{"objects": ["a", "b"], "morphisms": [
            {"label": "f", "source": 0, "target": 1},
            {"label": "g", "source": 1, "target": 0}]}"#,
    );
    let out = trispcl(&["validate", "--input", &cyclic]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!json(&out)["report"]["cycle"].is_null());

    let truncated = f.put("bad.json", r#"{"counts": [1"#);
    let out = trispcl(&["validate", "--input", &truncated]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["kind"], "input");
}

#[test]
fn nerve_of_a_chain() {
    let f = Files::new();
    let out = trispcl(&["nerve", "--input", &f.put("c.json", CHAIN3)]);
    assert!(out.status.success());
    assert_eq!(json(&out)["counts"], serde_json::json!([3, 3, 1]));
}

#[test]
fn output_flag_writes_a_file() {
    let f = Files::new();
    let target = f.dir.path().join("nerve.json");
    let out = trispcl(&[
        "nerve",
        "--input",
        &f.put("c.json", CHAIN3),
        "--output",
        target.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(target).unwrap()).unwrap();
    assert_eq!(v["counts"][0], 3);
}

#[test]
fn dot_output() {
    let f = Files::new();
    let out = trispcl(&[
        "nerve",
        "--input",
        &f.put("c.json", CHAIN3),
        "--format",
        "dot",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("graph"));
}

#[test]
fn partition_poset_nerve() {
    let f = Files::new();
    let out = trispcl(&["dgn", "build", "--n", "4", "--object", "partitions"]);
    assert!(out.status.success());
    let p = f.put("p4.json", std::str::from_utf8(&out.stdout).unwrap());
    let out = trispcl(&["nerve", "--input", &p]);
    assert_eq!(json(&out)["counts"][0], 13);
}

#[test]
fn rotation_quotient_has_parallel_morphisms() {
    let f = Files::new();
    let out = trispcl(&[
        "quotient",
        "--input",
        &f.put("tri.json", TRIANGLE_FACES),
        "--action",
        &f.put("rot.json", ROTATION),
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["quotient"]["objects"].as_array().unwrap().len(), 2);
    let morphisms = v["quotient"]["morphisms"].as_array().unwrap();
    assert_eq!(morphisms.len(), 2);
    assert_eq!(morphisms[0]["source"], morphisms[1]["source"]);
    assert_eq!(morphisms[0]["target"], morphisms[1]["target"]);
    assert_eq!(v["is_poset"], false);
    assert_eq!(v["lambda_surjective"], true);
}

#[test]
fn rotation_quotient_in_trisp_mode() {
    let f = Files::new();
    let out = trispcl(&[
        "quotient",
        "--input",
        &f.put("tri.json", TRIANGLE_FACES),
        "--action",
        &f.put("rot.json", ROTATION),
        "--mode",
        "trisp",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(json(&out)["condition_r"]["holds"], true);
}

#[test]
fn face_quotient_of_dg4() {
    let f = Files::new();
    let faces = trispcl(&["dgn", "build", "--n", "4", "--object", "faces"]);
    let action = trispcl(&["dgn", "build", "--n", "4", "--object", "face-action"]);
    assert!(faces.status.success() && action.status.success());
    let out = trispcl(&[
        "quotient",
        "--input",
        &f.put("faces.json", std::str::from_utf8(&faces.stdout).unwrap()),
        "--action",
        &f.put("action.json", std::str::from_utf8(&action.stdout).unwrap()),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(json(&out)["lambda_surjective"], true);
}

#[test]
fn verify_on_an_edge() {
    let f = Files::new();
    let out = trispcl(&[
        "closure",
        "verify",
        "--input",
        &f.put("edge.json", r#"{"counts": [2, 1], "faces": [[[1, 0]]]}"#),
        "--map",
        &f.put("map.json", r#"{"convention": "min", "image": [null, 0]}"#),
    ]);
    assert!(out.status.success());
    assert_eq!(json(&out)["holds"], true);
}

#[test]
fn lift_fails_on_the_double_filled_triangle() {
    let f = Files::new();
    let out = trispcl(&[
        "closure",
        "lift",
        "--input",
        &f.put(
            "t.json",
            r#"{"counts": [3, 3, 2],
                "faces": [[[1, 0], [2, 0], [2, 1]], [[2, 1, 0], [2, 1, 0]]]}"#,
        ),
        "--action",
        &f.put(
            "g.json",
            r#"{"generators": [[[0, 1, 2], [0, 1, 2], [1, 0]]]}"#,
        ),
        "--map",
        &f.put(
            "psi.json",
            r#"{"convention": "min", "image": [2, null, null]}"#,
        ),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["condition_c"]["holds"], true);
    assert_eq!(v["quotient_verify"]["holds"], true);
    let failure = &v["verify"]["failures"][0];
    assert_eq!(failure["vertices"], serde_json::json!([0, 1]));
    assert_eq!(failure["extensions"].as_array().unwrap().len(), 2);
}

#[test]
fn cone_collapse_of_the_partition_quotient() {
    let f = Files::new();
    let out = trispcl(&["dgn", "build", "--n", "4", "--object", "partition-quotient"]);
    let pq = f.put("pq.json", std::str::from_utf8(&out.stdout).unwrap());
    let out = trispcl(&["closure", "collapse", "--input", &pq, "--cone", "terminal"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["certificate"]["final_counts"], serde_json::json!([1]));

    let out = trispcl(&["dgn", "build", "--n", "4", "--object", "partitions"]);
    let p = f.put("p.json", std::str::from_utf8(&out.stdout).unwrap());
    let out = trispcl(&["closure", "collapse", "--input", &p, "--cone", "terminal"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn pipelines_succeed() {
    for pipeline in ["trisp", "category"] {
        let out = trispcl(&["dgn", "pipeline", "--n", "4", "--pipeline", pipeline]);
        assert!(out.status.success());
        let v = json(&out);
        assert_eq!(v["success"], true);
        assert_eq!(v["euler_characteristic"], 1);
    }
}

#[test]
fn pipeline_output_is_deterministic_without_timings() {
    let args = [
        "dgn",
        "pipeline",
        "--n",
        "4",
        "--pipeline",
        "category",
        "--no-timings",
    ];
    let a = trispcl(&args);
    let b = trispcl(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn random_lambda_suite() {
    let out = trispcl(&["random", "--seed", "5", "--cases", "30"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["cases"], 30);
}

#[test]
fn out_of_range_n_is_rejected() {
    let out = trispcl(&["dgn", "pipeline", "--n", "9", "--pipeline", "trisp"]);
    assert_ne!(out.status.code(), Some(0));
}
