use std::process::{Command, Output};

fn lbz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lbz")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = lbz(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn reduce_examples() {
    assert_eq!(stdout(&["reduce", "x1(x2x3)"]), "x1x2x3 - x1x3x2\n");
    assert_eq!(stdout(&["reduce", "x1x2"]), "x1x2\n");
    assert_eq!(lbz(&["reduce", "x1x2)"]).status.code(), Some(2));
}

#[test]
fn dim_examples_and_exit_codes() {
    assert_eq!(stdout(&["dim", "--variety", "free", "--n", "3"]), "6\n");
    assert_eq!(stdout(&["dim", "--variety", "v3tilde", "--n", "3"]), "6\n");
    assert_eq!(stdout(&["dim", "--variety", "v3tilde", "--n", "1"]), "1\n");
    assert_eq!(lbz(&["dim", "--variety", "nope", "--n", "3"]).status.code(), Some(3));
    assert_eq!(lbz(&["dim", "--variety", "free", "--n", "7"]).status.code(), Some(4));
    assert_eq!(lbz(&["--max-n", "9", "dim", "--variety", "free", "--n", "3"]).status.code(), Some(4));
    assert_eq!(stdout(&["--max-n", "7", "dim", "--variety", "NsA(1)", "--n", "7"]), "42\n");
}

#[test]
fn json_carries_schema() {
    let out = stdout(&["--format", "json", "dim", "--variety", "V3tilde", "--n", "4"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["dimension"], 16);
}

#[test]
fn basis_and_theta_reduce() {
    let out = stdout(&["basis", "--n", "3"]);
    assert!(out.ends_with("6 elements\n"));
    assert_eq!(
        stdout(&["theta-reduce", "x1x3x2"]),
        "1 * theta(1; ; 2,3)\n-1 * theta(1; (2,3); )\n"
    );
    let out = stdout(&["--format", "json", "theta-reduce", "x1(x2x5)(x3x4)"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["coordinates"].as_array().unwrap().len(), 2);
    assert_eq!(lbz(&["theta-reduce", "x1x1"]).status.code(), Some(2));
}

#[test]
fn character_of_free_degree_two() {
    let out = stdout(&["character", "--variety", "free", "--n", "2"]);
    assert!(out.contains("m_(2) = 1"));
    assert!(out.contains("m_(1,1) = 1"));
    assert!(out.contains("l_2 = 2"));
    let csv = stdout(&["--format", "csv", "character", "--variety", "free", "--n", "2"]);
    assert_eq!(csv, "n,lambda,m_lambda,l_n\n2,(2),1,2\n2,\"(1,1)\",1,2\n");
}

#[test]
fn verify_theorem2_report() {
    let out = stdout(&["verify-theorem2", "--n", "4"]);
    assert!(out.starts_with("PASS"));
    assert!(out.contains("16 theta elements, dim P_n(V3tilde) = 16"));
    assert!(out.contains("rank 16/16"));
}

#[test]
fn condition3_both_readings() {
    assert_eq!(stdout(&["condition3", "--variety", "abelian", "--k", "1", "--m", "2"]), "alphas = 0\n");
    assert_eq!(stdout(&["condition3", "--variety", "free", "--k", "1", "--m", "2"]), "no solution\n");
    assert_eq!(
        stdout(&["condition3", "--variety", "free", "--k", "1", "--m", "1", "--alphas", "1"]),
        "false\n"
    );
    assert_eq!(
        lbz(&["condition3", "--variety", "free", "--k", "1", "--m", "1", "--alphas", "1,2"]).status.code(),
        Some(2)
    );
}

#[test]
fn files() {
    let dir = std::env::temp_dir().join(format!("lbz-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let assignment = dir.join("a.json");
    std::fs::write(&assignment, r#"{"x1": "[t^2]", "x2": "a", "x3": "b"}"#).unwrap();
    assert_eq!(
        stdout(&["eval", "x1x2x3", "--assignment", assignment.to_str().unwrap()]),
        "0*a + 0*b + 0*c + [2*t^2]\n"
    );
    let ids = dir.join("ids.json");
    std::fs::write(
        &ids,
        r#"{"name": "checks", "identities": [
            {"name": "right nilpotence", "terms": [{"coefficient": "1", "term": "x1(x2(x3x4))"}]},
            {"name": "left-normed cube", "terms": [{"coefficient": "1/2", "term": "x1x2x3"}]}
        ]}"#,
    )
    .unwrap();
    let out = stdout(&["check", "--identity-file", ids.to_str().unwrap(), "--variety", "V3tilde"]);
    assert_eq!(out, "right nilpotence: true\nleft-normed cube: false\nall hold: false\n");
    let out = stdout(&["dim", "--variety-file", ids.to_str().unwrap(), "--n", "4"]);
    assert_eq!(out, "0\n");
    let _ = std::fs::remove_dir_all(&dir);
}
