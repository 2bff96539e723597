use std::process::{Command, Output};

use serde_json::Value;

fn toriclg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toriclg"))
        .args(args)
        .env_remove("TORICLG_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn model_text_has_eleven_terms() {
    let o = toriclg(&["model", "--degrees", "3", "--ambient", "4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim().split(" + ").count(), 11);
}

#[test]
fn model_json_has_five_terms() {
    let o = toriclg(&["model", "--degrees", "2", "--ambient", "4", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["polynomial"]["terms"].as_array().unwrap().len(), 5);
    assert_eq!(v["spec"]["index"], 3);
}

#[test]
fn invalid_model_exits_with_two() {
    let o = toriclg(&["model", "--degrees", "5", "--ambient", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("index must be positive"));
    let o = toriclg(&["model", "--ambient"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn checks_pass() {
    let o = toriclg(&["check", "period", "--degrees", "3", "--ambient", "4", "--order", "6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["matches"], true);
    assert_eq!(v["series"][4], "540");
    assert_eq!(v["maxOrder"], 6);

    let o = toriclg(&["check", "reflexive", "--degrees", "2", "2", "--ambient", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("true"));

    let o = toriclg(&["check", "duality", "--degrees", "2", "--ambient", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["pass"], true);
}

#[test]
fn projective_space_needs_no_degrees() {
    let o = toriclg(&["check", "period", "--ambient", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["series"][3], "6");
}

#[test]
fn compactify_reports() {
    for (d, n, k, dim) in [("3", "3", 3, 2usize), ("3", "4", 14, 3), ("2", "3", 8, 2)] {
        let o = toriclg(&["compactify", "--degrees", d, "--ambient", n, "--format", "json"]);
        assert_eq!(o.status.code(), Some(0), "{d} {n}");
        let v = json(&o);
        assert_eq!(v["k"], k);
        assert_eq!(v["sphere"], true);
        assert_eq!(v["certified"], true);
        assert_eq!(v["fVector"].as_array().unwrap().len(), dim);
        assert_eq!(v["fVector"][0], k);
    }
    let o = toriclg(&["compactify", "--degrees", "3", "--ambient", "4"]);
    assert!(stdout(&o).contains("k = 14"));
}

#[test]
fn compactify_edge_list() {
    let o = toriclg(&["compactify", "--degrees", "2", "--ambient", "3", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("source,target"));
    // a triangulated circle on 8 vertices has 8 edges
    assert_eq!(lines.count(), 8);
}

#[test]
fn sweep_small_range() {
    let o = toriclg(&["sweep", "--max-ambient", "3", "--min-torus-dim", "1", "--max-torus-dim", "2", "--max-degree", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("degrees,N,iota,n,k,reflexive,period_checked\n"));
    for row in [",1,2,1,2,true,false", ",2,3,2,9,true,false", "3,3,1,2,3,true,false", "2,3,2,2,8,true,false"] {
        assert!(text.lines().any(|l| l == row), "missing {row}");
    }
}

#[test]
fn sweep_empty_range_is_header_only() {
    let o = toriclg(&["sweep", "--min-torus-dim", "3", "--max-torus-dim", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "degrees,N,iota,n,k,reflexive,period_checked\n");
}

#[test]
fn sweep_with_periods_writes_file_under_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_toriclg"))
        .args(["sweep", "--max-ambient", "5", "--min-torus-dim", "3", "--max-torus-dim", "3", "--periods", "--out", "k.csv"])
        .env("TORICLG_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("k.csv")).unwrap();
    assert!(text.lines().any(|l| l == "3,4,2,3,14,true,true"));
    assert!(text.lines().any(|l| l == "2;2,5,2,3,18,true,true"));
}

#[test]
fn fit_from_table_and_points() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("k.csv");
    let o = toriclg(&["sweep", "--max-ambient", "4", "--max-torus-dim", "4", "--out", table.to_str().unwrap()]);
    assert!(o.status.success());

    // projective spaces: the quadratic through n = 1, 2, 3 is refuted by n = 4
    let o = toriclg(&["fit", "--table", table.to_str().unwrap(), "--vary", "n", "--fit-degree", "2", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["label"], "CONJECTURAL");
    assert_eq!(v["status"], "refuted");
    assert_eq!(v["checks"][0]["actual"], "125");

    let o = toriclg(&["fit", "--points", "1:5", "2:5", "3:5"]);
    assert!(stdout(&o).contains("k = 5"));
    assert!(stdout(&o).contains("confirmed"));

    let o = toriclg(&["fit", "--points", "1:2", "2:9", "--fit-degree", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("insufficient points"));
}
