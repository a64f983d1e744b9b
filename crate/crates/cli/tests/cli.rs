use std::path::PathBuf;
use std::process::{Command, Output};

use nahm_cli::{run_args, Style};
use serde_json::Value;

fn nahm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nahm-p1"))
        .args(args)
        .env("NAHM_P1_COLOR", "0")
        .output()
        .expect("the binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn example_json(name: &str) -> Value {
    serde_json::from_str(&stdout(&nahm(&["gallery", name]))).unwrap()
}

#[test]
fn transform_json_has_the_nilpotent_matrix() {
    let o = nahm(&["transform", "--example", "nilpotent", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schemaVersion"], 1);
    let m = &v["result"]["matrix"];
    assert_eq!(m[0][0], "-ξ/(ξ^2 + 1)");
    assert_eq!(m[0][1], "-1/(ξ^2 + 1)");
    assert_eq!(m[1][0], "-1/(ξ^2 + 1)");
    assert_eq!(m[1][1], "ξ/(ξ^2 + 1)");
    assert_eq!(v["result"]["rank"], 2);
    assert_eq!(v["result"]["degreeCheck"]["agree"], true);
    for field in ["standard", "naive", "charPoly", "charPolyAffine", "ledger", "sourceSide", "side", "dualPolar"] {
        assert!(!v["result"][field].is_null(), "missing {}", field);
    }
}

#[test]
fn involution_check_passes_for_the_higher_pole_example() {
    let o = nahm(&["involution-check", "--example", "higher-pole-r2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().last(), Some("PASS"));
}

#[test]
fn moduli_dimension_of_the_nilpotent_profile() {
    let o = nahm(&["moduli-dim", "--r", "2", "--res-ranks", "2", "--dual-res-ranks", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0");
    let from_model = nahm(&["moduli-dim", "--example", "nilpotent"]);
    assert_eq!(stdout(&from_model).trim(), "0");
}

#[test]
fn json_output_is_byte_stable() {
    for cmd in ["transform", "spectral", "stability-probe", "involution-check"] {
        let a = nahm(&[cmd, "--example", "nilpotent", "--json"]);
        let b = nahm(&[cmd, "--example", "nilpotent", "--json"]);
        assert_eq!(a.stdout, b.stdout, "{}", cmd);
    }
}

#[test]
fn exit_codes() {
    let dir = scratch("exit_codes");
    let mut doc = example_json("nilpotent");
    doc["parabolic"][0]["weights"] = serde_json::json!(["0", "1/3"]);
    let failing = dir.join("failing.json");
    std::fs::write(&failing, doc.to_string()).unwrap();
    let o = nahm(&["transform", failing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("polar weight condition fails at z = 0"));
    assert_eq!(nahm(&["validate", failing.to_str().unwrap()]).status.code(), Some(1));

    doc["parabolic"][0]["weights"] = serde_json::json!(["1//2", "1/3"]);
    let malformed = dir.join("malformed.json");
    std::fs::write(&malformed, doc.to_string()).unwrap();
    let o = nahm(&["validate", malformed.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["error"]["message"].as_str().unwrap().contains("parabolic[0].weights[0]"));

    assert_eq!(nahm(&["transform", dir.join("missing.json").to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(nahm(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(nahm(&["moduli-dim", "--r", "2", "--res-ranks", "2", "--dual-res-ranks", "1"]).status.code(), Some(1));
    assert_eq!(nahm(&["--help"]).status.code(), Some(0));
}

#[test]
fn batch_runs_every_file_in_order() {
    let dir = scratch("batch");
    for name in ["split-unstable", "nilpotent", "higher-pole-r3"] {
        std::fs::write(dir.join(format!("{}.json", name)), stdout(&nahm(&["gallery", name]))).unwrap();
    }
    std::fs::write(dir.join("broken.json"), "{\"rank\": 1}").unwrap();
    let o = nahm(&["involution-check", "--batch", dir.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let files: Vec<&str> = v["results"].as_array().unwrap().iter().map(|r| r["file"].as_str().unwrap()).collect();
    assert_eq!(files, ["broken.json", "higher-pole-r3.json", "nilpotent.json", "split-unstable.json"]);
    for r in &v["results"].as_array().unwrap()[1..] {
        assert_eq!(r["result"]["holds"], true, "{}", r["file"]);
    }
    assert_eq!(v["results"][0]["exitCode"], 1);
}

#[test]
fn weight_names_are_substituted_in_reports() {
    let o = nahm(&["transform", "--example", "nilpotent", "--weights", "a=1/4", "--weights", "b=1/7"]);
    let text = stdout(&o);
    assert!(text.contains("ξ=inf: a (= 1/4)"), "{}", text);
    assert!(text.contains("ξ=i: b/2 (= 1/14) (x2)"), "{}", text);
    let o = nahm(&["transform", "--example", "nilpotent", "--json", "--weights", "a=1/4"]);
    assert!(stdout(&o).contains("\"symbol\": \"a\""));
    assert_eq!(nahm(&["transform", "--example", "nilpotent", "--weights", "a=x"]).status.code(), Some(1));
}

#[test]
fn stability_probe_reports_the_destabilizing_line() {
    let text = stdout(&nahm(&["stability-probe", "--example", "split-unstable"]));
    assert!(text.contains("unstable"));
    assert!(text.contains("spanned by (1, 0) of degree -1 and slope 1/2"), "{}", text);
    assert!(stdout(&nahm(&["stability-probe", "--example", "nilpotent"])).contains("stable"));
}

#[test]
fn color_only_when_asked() {
    let plain = nahm(&["involution-check", "--example", "higher-pole-r2"]);
    assert!(!stdout(&plain).contains('\x1b'));
    let colored = run_args(["nahm-p1", "involution-check", "--example", "higher-pole-r2"], Style { color: true });
    assert!(colored.stdout.contains("\x1b[32mPASS\x1b[0m"));
}

#[test]
fn reads_models_from_standard_input() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_nahm-p1"))
        .args(["spectral", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    let model = stdout(&nahm(&["gallery", "higher-pole-r2"]));
    child.stdin.take().unwrap().write_all(model.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("standard curve: x^2 - u*v*y^2"));
}
