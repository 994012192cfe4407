use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordertype")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

#[test]
fn spectrum_of_corpus_label() {
    let o = run(&["spectrum", "A5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "{1,2,3,5}");
}

#[test]
fn group_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d8.grp");
    fs::write(&path, "degree 4\ngen (1 2 3 4)\ngen (1 3)\n").unwrap();
    let o = run(&["order-equation", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "8 = 1 + 5*phi(2) + 1*phi(4)");
}

#[test]
fn order_equation_json() {
    let o = run(&["order-equation", "S4", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["group_order"], 24);
    assert_eq!(v["rows"]["2"]["cyclic_degree"], 9);
    assert_eq!(v["rows"]["4"]["count"], 6);
}

#[test]
fn same_type_detects_equal_equations() {
    let o = run(&["same-type", "S4", "S4 (degree 8)"]);
    assert!(stdout(&o).ends_with("same order type: yes\n"));
    let o = run(&["same-type", "S4", "SL2(3)"]);
    assert!(stdout(&o).ends_with("same order type: no\n"));
}

#[test]
fn gk_text_and_dot() {
    let o = run(&["gk", "A5"]);
    let text = stdout(&o);
    assert!(text.starts_with("s = 3\n"));
    assert!(text.contains("pi_1 = {2}"));
    let o = run(&["gk", "Z6", "--dot"]);
    let dot = stdout(&o);
    assert!(dot.contains("graph") && dot.contains("2 -- 3"), "{dot}");
}

#[test]
fn classify_branches() {
    assert!(stdout(&run(&["classify", "S4"])).starts_with("two_frobenius |A| = 4, |B| = 3, |C| = 2"));
    assert!(stdout(&run(&["classify", "F20"])).starts_with("frobenius |K| = 5, |H| = 4"));
    let connected = run(&["classify", "Z6"]);
    assert!(connected.status.success());
    assert!(stdout(&connected).contains("connected"));
}

#[test]
fn zsigmondy_exception_and_value() {
    assert!(stdout(&run(&["zsigmondy", "2", "6"])).starts_with("none\n"));
    assert!(stdout(&run(&["zsigmondy", "2", "12"])).starts_with("13\n"));
    assert_eq!(run(&["zsigmondy", "1", "3"]).status.code(), Some(2));
}

#[test]
fn unknown_group_exits_two() {
    let o = run(&["spectrum", "no-such-group"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("neither a file nor a corpus group"));
}

#[test]
fn empty_grid_lists_rows_and_exits_zero() {
    let o = run(&["verify", "tables", "--table", "2", "--qmax", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("not exercised: T2 "));
    assert!(text.contains("checks: 0"));
}

#[test]
fn contradiction_sets_exit_code() {
    let o = run(&["verify", "tables", "--table", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("contradiction"));
    let o = run(&["verify", "tables", "--table", "3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn cases_confirm_without_contradiction() {
    let o = run(&["verify", "cases"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("exceptional_count:L3(3)"));
    assert!(text.contains("discrepancy"));
}

#[test]
fn text_report_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let o = run(&["report", "--out", path.to_str().unwrap(), "--qmax", "4", "--pmax", "5", "--nmax", "5"]);
    assert!(o.status.code() == Some(0) || o.status.code() == Some(1));
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.contains("corpus:"));
    assert!(text.contains("not exercised:"));
    assert!(stdout(&o).contains("lie_tables:"));
}
