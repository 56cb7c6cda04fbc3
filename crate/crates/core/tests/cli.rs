use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bundletri"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_with_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bundletri-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn miss_piped_into_analyze() {
    let built = run(&["build", "miss", "--n", "4"]);
    assert!(built.status.success());
    let report = run_with_stdin(&["analyze"], &built.stdout);
    assert!(report.status.success());
    assert!(stdout(&report).contains("f-vector: (9,36,54,27)"));

    let json = run_with_stdin(&["analyze", "--in", "-", "--json"], &built.stdout);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["schema"], "bundletri.analysis/1");
    assert_eq!(v["f_vector"], serde_json::json!([1, 9, 36, 54, 27]));
    assert_eq!(v["orientability"], "nonorientable");
    assert_eq!(v["g2"], 10);
}

#[test]
fn region_answers() {
    let o = run(&["region", "--k", "3", "--vertices", "11", "--bundle", "nonorientable"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "infeasible");
    let o = run(&["region", "--k", "3", "--vertices", "13", "--bundle", "orientable"]);
    assert_eq!(stdout(&o).trim(), "65 78");
}

#[test]
fn iso_exit_codes() {
    let a = scratch("miss5.fl");
    let b = scratch("stacked.fl");
    assert!(run(&["build", "miss", "--n", "5", "-o", a.to_str().unwrap()]).status.success());
    assert!(run(&["build", "stacked", "--n", "5", "--steps", "7", "-o", b.to_str().unwrap()]).status.success());
    let same = run(&["iso", a.to_str().unwrap(), a.to_str().unwrap()]);
    assert_eq!(same.status.code(), Some(0));
    assert_eq!(stdout(&same).lines().count(), 11);
    let different = run(&["iso", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(different.status.code(), Some(1));
    assert_eq!(stdout(&different).trim(), "non-isomorphic");
}

#[test]
fn fill_edges_and_schedule() {
    let iss = scratch("iss.fl");
    let sched = scratch("schedule.txt");
    let o = run(&["build", "iss", "--n", "5", "--vertices", "12", "--bundle", "nonorientable", "-o", iss.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("pairing: swapped"));
    let o = run(&[
        "fill-edges", "--in", iss.to_str().unwrap(), "--n", "5", "--vertices", "12", "--variant", "swapped",
        "--target-f1", "66", "--schedule-out", sched.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&sched).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert_eq!(text.lines().last(), Some("A: 4 11 | B: 1 3 5 12"));
    let report = run_with_stdin(&["analyze", "--json"], &o.stdout);
    let v: serde_json::Value = serde_json::from_slice(&report.stdout).unwrap();
    assert_eq!(v["g_vector"], serde_json::json!([1, 6, 21]));
}

#[test]
fn double_cover_command() {
    let m4 = scratch("m4.fl");
    assert!(run(&["build", "miss", "--n", "4", "-o", m4.to_str().unwrap()]).status.success());
    let o = run(&["double-cover", "--in", m4.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 54);
}

#[test]
fn error_exit_codes() {
    let o = run(&["region", "--k", "3", "--vertices", "11", "--bundle", "sideways"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["build", "miss"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["build", "iss", "--n", "5", "--vertices", "11", "--bundle", "nonorientable"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("InfeasibleVertexCount"));
    let o = run_with_stdin(&["analyze"], b"1 2 3\n1 2 x\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("ParseError"));
    let o = run(&["analyze", "--in", "/nonexistent/file.fl"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn outputs_are_deterministic() {
    let a = run(&["build", "iss", "--n", "6", "--vertices", "15", "--bundle", "orientable"]);
    let b = run(&["build", "iss", "--n", "6", "--vertices", "15", "--bundle", "orientable"]);
    assert_eq!(a.stdout, b.stdout);
    let ra = run_with_stdin(&["analyze", "--json"], &a.stdout);
    let rb = run_with_stdin(&["analyze", "--json"], &b.stdout);
    assert_eq!(ra.stdout, rb.stdout);
}
