use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freefield")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn ope_of_the_generators() {
    let v = json(&["ope", "beta[1]", "gamma[1]"]);
    assert_eq!(v["poles"][0][0], 1);
    assert_eq!(v["poles"][0][1]["terms"][0][1], "1");
    let v = json(&["--algebra", "bc", "ope", "bb[1]", "cc[1]"]);
    assert_eq!(v["poles"][0][1]["terms"][0][1], "1");
}

#[test]
fn eval_expressions() {
    let v = json(&["eval", "CP(J[0],1,J[0])"]);
    assert_eq!(v["state"]["terms"], serde_json::json!([[[], "-1"]]));
    let a = json(&["eval", "NO(gamma[1], D(beta[1]))"]);
    let b = json(&["eval", "J[1]"]);
    assert_eq!(a["state"], b["state"]);
}

#[test]
fn decoupling_exit_codes() {
    let out = run(&["--format", "text", "decouple", "--n", "1", "--l", "3", "--g", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("J^3 = "));
    assert_eq!(code(&["decouple", "--n", "1", "--l", "2", "--g", "1"]), 3);
}

#[test]
fn usage_and_parse_errors_exit_with_two() {
    let out = run(&["eval", "NO(gamma[1], D(beta[1])"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte 23"));
    assert_eq!(code(&["eval", "cc[1]"]), 2);
    assert_eq!(code(&["no-such-command"]), 2);
    assert_eq!(code(&["basis", "--weight", "40", "--degree", "1"]), 2);
}

#[test]
fn invariant_dimensions_as_csv() {
    let out = run(&["--format", "csv", "inv-dims", "--action", "torus:1", "--max-weight", "2", "--max-degree", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("weight,degree,dim_state_side,dim_gr_side,equal"));
    assert!(text.contains("2,2,2,2,true"));
    assert!(!text.contains("false"));
}

#[test]
fn span_check_reports_deficiency() {
    let dir = std::env::temp_dir().join(format!("freefield-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let one = dir.join("one.txt");
    let three = dir.join("three.txt");
    std::fs::write(&one, "# just the Heisenberg field\nJ[0]\n").unwrap();
    std::fs::write(&three, "J[0]\nJ[1]\nJ[2]\n").unwrap();

    let out = run(&["span-check", "--action", "torus:1", "--gens", one.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "deficient");
    assert_eq!(v["first_deficiency"], serde_json::json!([2, 2, 1, 2]));

    let v = json(&["span-check", "--action", "torus:1", "--gens", three.to_str().unwrap()]);
    assert_eq!(v["status"], "success");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn matrices_and_express_map() {
    let v = json(&["express-map", "--w", "1", "--m", "0", "--c", "-1", "--d", "-1"]);
    assert_eq!(v["coefficients"], serde_json::json!(["1", "0"]));
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("freefield-out-{}.json", std::process::id()));
    assert_eq!(code(&["--out", path.to_str().unwrap(), "ideal-kernel", "--n", "1", "--weight", "4"]), 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let _ = std::fs::remove_file(&path);
    assert_eq!(v["n"], 1);
    let vectors = v["vectors"].as_array().unwrap();
    assert_eq!(vectors.len(), 1);
    assert_eq!(vectors[0].as_array().unwrap().len(), 8);
}
