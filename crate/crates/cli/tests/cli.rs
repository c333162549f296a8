use std::path::PathBuf;
use std::process::{Command, Output};

fn eqmack(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eqmack")).args(args).env_remove("EQMACK_DEPTH").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("eqmack-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn sign_sphere_with_constant_integers() {
    let o = eqmack(&[
        "homology", "--group", "C2", "--space", "sphere:sign", "--coeff", "constant-Z", "--orbit", "C2/C2", "--degrees", "0,1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "H~0 = Z/2, H~1 = 0");
}

#[test]
fn burnside_axioms_over_s3() {
    let o = eqmack(&["mackey-check", "--group", "S3", "--coeff", "burnside"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "axioms: PASS");
}

#[test]
fn point_recovers_the_burnside_ring() {
    let o = eqmack(&["homology", "--group", "C2", "--space", "point", "--coeff", "burnside", "--orbit", "C2/C2", "--degrees", "0"]);
    assert_eq!(stdout(&o), "H0 = Z^2");
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(eqmack(&["homology", "--group", "C7x", "--space", "S0", "--coeff", "burnside"]).status.code(), Some(2));
    assert_eq!(eqmack(&["homology", "--nonsense"]).status.code(), Some(2));
    assert_eq!(eqmack(&["frobnicate"]).status.code(), Some(2));
    let bad = scratch("bad.json", r#"{"group": "C2", "task": {"kind": "homology", "degrees": "zero"}}"#);
    let o = eqmack(&["homology", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("task.degrees"));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["homology", "--group", "C2", "--space", "sphere:sign", "--coeff", "burnside", "--degrees", "0,1", "--format", "json"];
    let a = eqmack(&args);
    let b = eqmack(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["result"]["rows"][1]["orbit"], "C2/C2");
    assert_eq!(v["result"]["rows"][1]["values"]["0"], "Z");
}

#[test]
fn dump_input_round_trips() {
    let o = eqmack(&["omega-check", "--group", "C2", "--space", "S0", "--coeff", "constant-Zmod:2", "--dump-input"]);
    let dumped = stdout(&o);
    let file = scratch("omega.json", &dumped);
    let again = eqmack(&["omega-check", "--input", file.to_str().unwrap(), "--dump-input"]);
    assert_eq!(stdout(&again), dumped);
    let wrong = eqmack(&["pi", "--input", file.to_str().unwrap()]);
    assert_eq!(wrong.status.code(), Some(2));
}

#[test]
fn depth_from_environment() {
    let args = ["homology", "--group", "C2", "--space", "S0", "--coeff", "constant-Z", "--degrees", "1"];
    let shallow = Command::new(env!("CARGO_BIN_EXE_eqmack")).args(args).env("EQMACK_DEPTH", "1").output().unwrap();
    assert_eq!(shallow.status.code(), Some(2));
    let deep = Command::new(env!("CARGO_BIN_EXE_eqmack")).args(args).env("EQMACK_DEPTH", "3").output().unwrap();
    assert_eq!(deep.status.code(), Some(0));
}

#[test]
fn fixed_point_coefficients_from_a_module_file() {
    let module = scratch("regular.json", r#"{"value": {"gens": 2}, "action": [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]}"#);
    let coeff = format!("fixed-point:e:{}", module.display());
    let o = eqmack(&["mackey-check", "--group", "C2", "--coeff", &coeff]);
    assert_eq!(stdout(&o), "axioms: PASS");
    let h = eqmack(&["homology", "--group", "C2", "--space", "point", "--coeff", &coeff, "--degrees", "0"]);
    assert_eq!(stdout(&h), "C2/e: H0 = Z^2\nC2/C2: H0 = Z");
}

#[test]
fn checks_report_pass() {
    let o = eqmack(&["omega-check", "--group", "C2", "--space", "S0", "--coeff", "burnside", "--w", "sign", "--n-max", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("omega: PASS"));
    let b = eqmack(&["bar-check", "--group", "C2", "--space", "S0", "--depth", "3"]);
    assert!(stdout(&b).ends_with("bar: PASS"));
    let t = eqmack(&["ro-table", "--group", "C2", "--space", "S0", "--coeff", "constant-Z", "--row", "0:sign", "--row", "1:sign+trivial:1"]);
    assert!(stdout(&t).contains("0\tsign\t0\tZ/2"));
    assert!(stdout(&t).ends_with("suspension: PASS"));
    let p = eqmack(&["pi", "--group", "C2", "--space", "sphere:sign", "--coeff", "constant-Z", "--v", "sign"]);
    assert_eq!(stdout(&p), "pi_sign = Z");
}

#[test]
fn corrupted_table_fails_with_exit_one() {
    let dump = eqmack(&["mackey-check", "--group", "C2", "--coeff", "burnside", "--dump-input"]);
    let mut spec: serde_json::Value = serde_json::from_slice(&dump.stdout).unwrap();
    // replace the builtin by an explicit table whose restriction of [C2/e] is wrong
    spec["coeff"] = serde_json::json!({
        "name": "bad",
        "values": [{"gens": 1}, {"gens": 2}],
        "maps": [
            {"from": 0, "to": 0, "coset": 0, "tr": [[1]], "res": [[1]]},
            {"from": 0, "to": 0, "coset": 1, "tr": [[1]], "res": [[1]]},
            {"from": 0, "to": 1, "coset": 0, "tr": [[0], [1]], "res": [[1, 3]]},
            {"from": 1, "to": 1, "coset": 0, "tr": [[1, 0], [0, 1]], "res": [[1, 0], [0, 1]]}
        ]
    });
    let file = scratch("corrupt.json", &spec.to_string());
    let o = eqmack(&["mackey-check", "--input", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("axioms: FAIL"));
}
