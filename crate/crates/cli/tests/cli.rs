use std::process::{Command, Output};

fn simcores(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_simcores")).args(args).env_remove("SIMCORES_NETWORK").output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn count_positive_ends_with_fibonacci() {
    let out = simcores(&["count", "--set", "positive", "--n-max", "10"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().last().unwrap().split_whitespace().collect::<Vec<_>>(), ["10", "89"]);
}

#[test]
fn count_json_schema() {
    let out = simcores(&["count", "--set", "mult+:2", "--n-max", "11", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let values: Vec<&str> = v["values"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(values, ["1", "1", "1", "2", "2", "3", "4", "5", "7", "9", "12", "16"]);
    assert_eq!(v["n_range"], serde_json::json!([0, 11]));
    assert_eq!(v["variant"], "Q");
}

#[test]
fn all_methods_agree_for_multiples() {
    let run = |method: &str| {
        stdout(&simcores(&["count", "--set", "mult:3", "--n-max", "9", "--method", method, "--format", "json"]))
    };
    let values = |s: String| serde_json::from_str::<serde_json::Value>(&s).unwrap()["values"].clone();
    let reference = values(run("recurrence"));
    for method in ["series", "brute", "closed"] {
        assert_eq!(values(run(method)), reference, "{method}");
    }
}

#[test]
fn verify_suites_exit_zero() {
    let out = simcores(&["verify", "--suite", "oddeven-identities", "--n-max", "12"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    for suite in ["oracle-vs-recurrence", "gf-vs-recurrence", "bijections"] {
        let out = simcores(&["verify", "--suite", suite, "--n-max", "8", "--format", "json"]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(v["suite"], suite);
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["count", "--set", "atleast:2", "--n-max", "5", "--method", "closed"][..],
        &["count", "--set", "mult:0", "--n-max", "5"],
        &["count", "--n-max", "5"],
        &["count", "--set", "all", "--n-max", "5", "--bogus"],
        &["verify", "--suite", "nope", "--n-max", "3"],
        &["render", "--partition", "3,1"],
    ] {
        let out = simcores(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = simcores(&["count", "--set", "atleast:2", "--n-max", "5", "--method", "closed"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("recurrence"));
}

#[test]
fn computation_errors_exit_one() {
    let out = simcores(&["count", "--set", "all", "--n-max", "20", "--method", "brute"]);
    assert_eq!(out.status.code(), Some(1));
    let out = simcores(&["render", "--partition", "3", "--n", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = simcores(&["oeis", "--prefix", "1,1,2,3,5,8", "--remote"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn render_formats() {
    let out = simcores(&["render", "--abacus", "3:0,1,2"]);
    assert_eq!(stdout(&out), "1 ● ● ●\n2 ○ ● ●\n3 ○ ○ ●\n");
    let by_partition = simcores(&["render", "--partition", "3,1,1", "--n", "3"]);
    assert_eq!(stdout(&by_partition), stdout(&out));
    let svg = stdout(&simcores(&["render", "--abacus", "8:0,1,2,0,0,0,1,1", "--format", "svg"]));
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
}

#[test]
fn list_and_totals() {
    let out = stdout(&simcores(&["list", "--n", "4", "--set", "positive", "--format", "json"]));
    let parts: Vec<Vec<usize>> = serde_json::from_str(&out).unwrap();
    assert_eq!(parts, vec![vec![], vec![1], vec![2], vec![3], vec![2, 1]]);
    let totals = stdout(&simcores(&["totals", "--set", "positive", "--n-max", "4", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&totals).unwrap();
    assert_eq!(v["tl"][4], "8");
    assert_eq!(v["tp"][4], "5");
    assert_eq!(v["ts"][4], "9");
}

#[test]
fn oddeven_and_oeis() {
    let out = stdout(&simcores(&["oddeven", "--n-max", "8", "--format", "json"]));
    let rows: Vec<serde_json::Value> = serde_json::from_str(&out).unwrap();
    let odd: Vec<&str> = rows.iter().take(6).map(|r| r["o"].as_str().unwrap()).collect();
    assert_eq!(odd, ["1", "1", "2", "4", "7", "17"]);
    let out = stdout(&simcores(&["oeis", "--prefix", "1,2,5,14,42"]));
    assert!(out.contains("A000108"), "{out}");
    let out = stdout(&simcores(&["oeis", "--prefix", "9,9,9,9,9"]));
    assert_eq!(out, "no local matches\n");
}
