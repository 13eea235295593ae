use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blobcell")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn wb_count() {
    let o = run(&["wb", "enumerate", "2", "--count"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "6\n");
}

#[test]
fn domino_insert_shapes_match() {
    let o = run(&["domino", "insert", "--", "2", "3", "-1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["P"]["shape"], v["Q"]["shape"]);
}

#[test]
fn domino_reverse_round_trip() {
    let o = run(&["domino", "insert", "--", "-3", "1", "2"]);
    let path = std::env::temp_dir().join(format!("blobcell-pair-{}.json", std::process::id()));
    std::fs::write(&path, &o.stdout).unwrap();
    let back = run(&["--format", "pretty", "domino", "reverse", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(stdout(&back), "-3 1 2\n");
}

#[test]
fn kleshchev_first_table_is_golden() {
    let o = run(&["kleshchev", "10", "3", "2", "--format", "pretty"]);
    assert_eq!(o.status.code(), Some(0));
    let expected = blobcell::fock::golden_tables()[0].render();
    assert_eq!(stdout(&o), expected);
}

#[test]
fn tables_paper_passes() {
    let o = run(&["tables", "--paper", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["mismatches"], 0);
}

#[test]
fn output_is_deterministic() {
    let a = run(&["klbasis", "2"]);
    let b = run(&["klbasis", "2"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_two() {
    let o = run(&["wb", "enumerate"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["decomp", "4", "3", "2", "--format", "yaml"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--format"));
    let o = run(&["wb", "test", "--", "1", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bound_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_blobcell")).args(["wb", "enumerate", "3", "--count"]).env("BLOBCELL_MAX_N", "2").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bound"));
}

#[test]
fn crystal_anchor() {
    let o = run(&["fock", "crystal", "--e", "3", "--s1", "11", "2", "0", "0", "1", "1", "2", "2", "0", "1", "0", "--format", "pretty"]);
    assert_eq!(stdout(&o), "((6,3), (1))\n");
    let o = run(&["fock", "crystal", "--e", "3", "--s1", "-1", "--path-of", "6|4", "--format", "pretty"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn decomposition_csv() {
    let o = run(&["decomp", "4", "3", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "lambda\\mu,2,0,-4\n2,1:1,0:0,0:0\n0,1:v,1:1,1:v\n-4,0:0,0:0,1:1\n");
}

#[test]
fn verification_commands_succeed() {
    for args in [
        &["blob", "verify", "3"][..],
        &["cellcompare", "2"],
        &["tensor", "check", "3"],
        &["ideal", "check", "2"],
        &["wb", "test", "--", "-2", "1"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn invalid_specialization_is_reported() {
    let o = run(&["cellcompare", "2", "--l", "8"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn blob_standard_matrices() {
    let o = run(&["blob", "standard", "3", "1", "--matrices"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 3);
    assert_eq!(v["matrices"].as_array().unwrap().len(), 3);
}
