use std::process::{Command, Output};

use serde_json::Value;

use quartic_pell::cli::{check_with_rule, render, Format, EXIT_CHECK_FAILED};
use quartic_pell::pell_core::Recurrence;
use quartic_pell::BigInt;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quartic-pell"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let v: Value = serde_json::from_str(&text).unwrap();
    let mut again = serde_json::to_string_pretty(&v).unwrap();
    again.push('\n');
    assert_eq!(again, text, "{args:?} is not byte-stable");
    v
}

fn xy(v: &Value) -> Vec<(String, String)> {
    v["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            let p = &r["payload"];
            (p["x"].as_str().unwrap().to_string(), p["y"].as_str().unwrap().to_string())
        })
        .collect()
}

fn pair(x: &str, y: &str) -> (String, String) {
    (x.to_string(), y.to_string())
}

#[test]
fn json_round_trips_for_every_command() {
    let g = json(&["generate", "--max-index", "5", "--format", "json"]);
    assert_eq!(g["meta"]["command"], "generate");
    assert_eq!(g["records"].as_array().unwrap().len(), 12);
    let s = json(&["solve", "x^2 = 2y^4 - 1", "--max-index", "200", "--format", "json"]);
    assert_eq!(xy(&s), vec![pair("1", "1"), pair("239", "13")]);
    assert_eq!(s["meta"]["bounds"]["max-index"], "200");
    let c = json(&["check", "--max-index", "20", "--format", "json"]);
    assert_eq!(c["meta"]["exit_code"], "0");
    let b = json(&["bench", "--max-index", "50", "--repetitions", "1", "--format", "json"]);
    assert_eq!(b["records"].as_array().unwrap().len(), 6);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["check", "--max-index", "10"]).status.code(), Some(0));
    let bad = run(&["solve", "x^3 = 2y^4 - 1"]);
    assert_eq!(bad.status.code(), Some(2));
    let err = String::from_utf8(bad.stderr.clone()).unwrap();
    assert!(err.contains("odd exponent at position 2"), "{err}");
    assert!(err.contains("odd_exponent"));
    assert!(stdout(&bad).is_empty());
    assert_eq!(run(&["generate", "--format", "yaml"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["generate", "--eps", "2"]).status.code(), Some(2));
}

#[test]
fn injected_fault_yields_check_failure() {
    let mut bad = Recurrence::<BigInt>::standard();
    bad.xt = BigInt::from(5);
    let report = check_with_rule(10, &bad);
    assert_eq!(report.exit_code, EXIT_CHECK_FAILED);
    let csv = render(&report, Format::Csv);
    // The detail column holds commas, so it must come back quoted.
    let mut rd = csv::Reader::from_reader(csv.as_bytes());
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    let last = rows.last().unwrap();
    assert_eq!(&last[2], "fail");
    assert!(last[3].starts_with("first failing index n=1 eps=1"), "{}", &last[3]);
}

#[test]
fn csv_output() {
    let o = run(&["generate", "--max-index", "3", "--eps", "+1", "--format", "csv"]);
    assert_eq!(
        stdout(&o),
        "kind,n,eps,x,t\npell_pair,0,1,1,1\npell_pair,1,1,7,5\npell_pair,2,1,41,29\npell_pair,3,1,239,169\n"
    );
    let c = stdout(&run(&["check", "--max-index", "5", "--format", "csv"]));
    assert!(c.starts_with("kind,name,status,detail\n"));
    let mut rd = csv::Reader::from_reader(c.as_bytes());
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(|r| r.len() == 4 && &r[2] == "pass"));
    assert!(c.contains("\"12 (n, eps) pairs agree"), "{c}");
}

#[test]
fn minus_branch_flag() {
    let o = run(&["generate", "--max-index", "2", "--eps", "-1", "--format", "csv"]);
    assert_eq!(stdout(&o), "kind,n,eps,x,t\npell_pair,0,-1,1,-1\npell_pair,1,-1,-1,-1\npell_pair,2,-1,-7,-5\n");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["generate", "--max-index", "40", "--verify"][..],
        &["solve", "x^2 = 2y^4 - 1", "--max-index", "300"][..],
        &["solve", "3x^2 = 5y^2 + 7", "--v-bound", "5000", "--format", "json"][..],
        &["check", "--max-index", "30", "--format", "csv"][..],
    ] {
        assert_eq!(stdout(&run(args)), stdout(&run(args)), "{args:?}");
    }
}

#[test]
fn allow_zero_and_prefilter_flags() {
    let base = ["solve", "x^2 = 5y^4 + 1", "--v-bound", "10000", "--format", "json"];
    assert_eq!(xy(&json(&base)), vec![pair("9", "2")]);
    let mut with_zero = base.to_vec();
    with_zero.push("--allow-zero");
    assert_eq!(xy(&json(&with_zero)), vec![pair("1", "0"), pair("9", "2")]);

    let on = json(&["solve", "x^2 = 2y^4 - 1", "--max-index", "300", "--prefilter", "on", "--format", "json"]);
    let off = json(&["solve", "x^2 = 2y^4 - 1", "--max-index", "300", "--prefilter", "off", "--format", "json"]);
    assert_eq!(on["records"], off["records"]);
    assert_eq!(on["meta"]["bounds"]["prefilter"], "on");
}

#[test]
fn table_output() {
    let t = stdout(&run(&["generate", "--max-index", "3", "--eps", "+1"]));
    let lines: Vec<&str> = t.lines().collect();
    assert_eq!(lines[0], "# generate (max-index=3)");
    assert_eq!(lines[1], "n  eps    x    t");
    assert_eq!(lines[5], "3    1  239  169");
    let wide = stdout(&run(&["generate", "--max-index", "200", "--eps", "+1"]));
    assert!(wide.contains("digits)…"));
    assert!(wide.lines().all(|l| l.chars().count() <= 120), "row too wide");
}
