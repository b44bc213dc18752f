use std::process::{Command, Output};

fn rdpd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rdpd"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn blocked_germ_exits_one() {
    let out = rdpd(&["analyze", "--char", "2", "--poly", "z^2+x^3+y^5+y^3*z"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("E_8^3"));
    assert!(text.contains("BLOCKED"));
    assert!(text.contains("LENGTH_FORMULA"));
}

#[test]
fn descending_germ_exits_zero() {
    let out = rdpd(&["analyze", "--char", "2", "--poly", "z^2+x^3+y^5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("DESCENDS"));
}

#[test]
fn json_output_is_deterministic() {
    let args = [
        "analyze",
        "--char",
        "3",
        "--poly",
        "z^2+x^3+x^2*y^2+y^5",
        "--json",
    ];
    let a = rdpd(&args);
    let b = rdpd(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["input"]["catalog"], "E_8^2");
    assert_eq!(v["verdict"]["outcome"], "BLOCKED");
    assert_eq!(v["criteria"].as_array().unwrap().len(), 8);
    assert!(v["timings_ms"].as_object().unwrap().is_empty());
}

#[test]
fn parse_errors_report_a_position() {
    let out = rdpd(&["analyze", "--char", "2", "--poly", "z^2+*x", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "usage");
    assert_eq!(v["error"]["position"], 4);
}

#[test]
fn bad_characteristic_is_a_usage_error() {
    let out = rdpd(&["analyze", "--char", "4", "--poly", "z^2+x^3+y^5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = rdpd(&["tables", "--char", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn engine_limits_exit_three() {
    let out = rdpd(&[
        "analyze",
        "--char",
        "2",
        "--poly",
        "z^2+x^3+y^5+y^3*z",
        "--step-cap",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("UNDECIDED"));
}

#[test]
fn tables_match_in_every_table_characteristic() {
    for p in ["2", "3", "5"] {
        let out = rdpd(&["tables", "--char", p]);
        assert_eq!(out.status.code(), Some(0), "char {p}");
        assert!(stdout(&out).contains("all rows match"));
    }
}

#[test]
fn classify_flags_the_e6_note_in_char_two() {
    let out = rdpd(&["classify", "--char", "2", "--sequential"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("descending: A_1, A_3, A_7, D_4^0"));
    assert!(text.contains("flagged: E_6^0"));
}

#[test]
fn parallel_and_sequential_classify_agree() {
    let a = rdpd(&["classify", "--char", "3", "--json"]);
    let b = rdpd(&["classify", "--char", "3", "--json", "--sequential"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn oracle_command_agrees_on_bracket_ideal() {
    let out = rdpd(&[
        "oracle",
        "--char",
        "2",
        "--jacobian-of",
        "z^2+x^3+y^5+y^3*z",
        "--bracket",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["engine"], 44);
    assert_eq!(v["oracle"]["length"], 44);
    assert_eq!(v["agree"], true);
}
