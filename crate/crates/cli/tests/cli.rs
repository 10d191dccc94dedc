use std::process::{Command, Output};

fn hopfop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfop")).args(args).output().expect("run the hopfop binary")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn coproduct_examples() {
    let o = hopfop(&["coproduct", "as", "[1,2]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "([1,2]|1_0|[]) + (1_1|1_1|[]) + (1_1|1_1|[2,1]) + (1_0|[1,2]|[])");
    let o = hopfop(&["coproduct", "pois", "{[1,2]}", "--reduced"]);
    assert_eq!(stdout(&o).trim(), "0");
    let o = hopfop(&["coproduct", "as", "[1]"]);
    assert_eq!(stdout(&o).trim(), "(1_1|1_0|[]) + (1_0|1_1|[])");
}

#[test]
fn primitive_examples() {
    let o = hopfop(&["primitives", "as", "4", "--dims-only"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1,1,2,6");
    let o = hopfop(&["primitives", "pois", "3", "--dims-only"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("1,1,2"));
    let identity: Vec<&str> = lines.collect();
    assert_eq!(identity.len(), 3);
    assert!(identity.iter().all(|l| l.ends_with(" ok")), "{identity:?}");
    assert!(identity[2].contains("= 6"));
    let o = hopfop(&["primitives", "as", "2"]);
    assert_eq!(stdout(&o).trim(), "[1,2] - [2,1]");
    let o = hopfop(&["primitives", "mag2", "2"]);
    assert_eq!(stdout(&o).trim(), "(v2 1 2) - (v2 2 1)");
}

#[test]
fn axioms_examples() {
    let o = hopfop(&["axioms", "as", "--max-n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS as ")));
    let o = hopfop(&["axioms", "pois", "--max-n", "4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["laws"].as_array().unwrap().len(), 7);
    let o = hopfop(&["axioms", "lie", "--max-n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(hopfop(&["axioms", "nosuch"]).status.code(), Some(2));
    assert_eq!(hopfop(&["axioms", "mag1"]).status.code(), Some(2));
    assert_eq!(hopfop(&["coproduct", "lie", "{[1,2]}"]).status.code(), Some(2));
    assert_eq!(hopfop(&["coproduct", "as", "[1,1]"]).status.code(), Some(2));
    assert_eq!(hopfop(&["verify", "--profile", "medium"]).status.code(), Some(2));
    assert_eq!(hopfop(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn quick_verify_passes_and_tampering_fails() {
    let o = hopfop(&["verify", "--profile", "quick", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["profile"], "quick");
    assert_eq!(v["seed"], 0);

    let o = hopfop(&["verify", "--profile", "quick", "--tampered"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("FAIL as ")));
    assert!(text.contains("counterexample:"));
}
