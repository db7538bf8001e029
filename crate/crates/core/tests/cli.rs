use std::process::{Command, Output};

use serde_json::Value;

fn serrewt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_serrewt"))
        .args(args)
        .env_remove("SERREWT_JOBS")
        .env_remove("SERREWT_MAX_P")
        .env_remove("SERREWT_ORACLE_MAX_P")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

const TRES_P5: &str = r#"{"p":5,"type":"reducible","twist":0,"ratio":1,"shape":"tres","lambda_equal":true}"#;
const EXAMPLE_SPLIT: &str = r#"{"p":5,"type":"reducible","twist":0,"ratio":1,"shape":"split","lambda_equal":false}"#;
const IRR_P5: &str = r#"{"p":5,"type":"irreducible","a":0,"b":3}"#;

#[test]
fn decompose_formats() {
    let o = serrewt(&["decompose", "-p", "5", "-N", "5", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0,2,1\n1,4,1\n");

    let o = serrewt(&["decompose", "-p", "7", "-N", "0"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("V(0,1)"));
    assert!(text.contains("N+1 = 1 (ok)"));

    let o = serrewt(&["decompose", "-p", "3", "-N", "4", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert_eq!(v[0], serde_json::json!({"a": 0, "b": 1, "mult": 1}));
}

#[test]
fn kmin_values() {
    assert_eq!(stdout(&serrewt(&["kmin", "-p", "5", "-a", "1", "-b", "2"])), "9\n");
    assert_eq!(stdout(&serrewt(&["kmin", "-p", "5", "-a", "0", "-b", "4"])), "5\n");
    assert_eq!(stdout(&serrewt(&["kmin", "-p", "3", "-a", "1", "-b", "3", "--search"])), "8 8 match\n");
    let v = json(&serrewt(&["--format", "json", "kmin", "-p", "3", "-a", "1", "-b", "3", "--search"]));
    assert_eq!(v, serde_json::json!({"p": 3, "a": 1, "b": 3, "k_min": 8, "search": 8, "match": true}));
    assert_eq!(serrewt(&["kmin", "-p", "5", "-a", "0", "-b", "6"]).status.code(), Some(2));
    assert_eq!(serrewt(&["kmin", "-p", "5", "-a", "-1", "-b", "2"]).status.code(), Some(2));
}

#[test]
fn weights_shows_all_three_k() {
    for (param, k) in [(TRES_P5, 6), (EXAMPLE_SPLIT, 2), (IRR_P5, 4)] {
        let o = serrewt(&["weights", param, "--format", "json"]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let v = json(&o);
        for key in ["k_serre", "k_min", "k_cris"] {
            assert_eq!(v[key], k, "{param} {key}");
        }
        assert_eq!(v["W"], v["B"]);
        let sent: Value = serde_json::from_str(param).unwrap();
        assert_eq!(v["param"], sent);
    }
    let text = stdout(&serrewt(&["weights", TRES_P5]));
    for key in ["k_serre  6", "k_min    6", "k_cris   6", "W        {V(0,5)}"] {
        assert!(text.contains(key), "{text}");
    }
}

#[test]
fn weights_schema_errors_exit_two() {
    let bad = r#"{"p":5,"type":"reducible","twist":0,"ratio":2,"shape":"tres","lambda_equal":true}"#;
    assert_eq!(serrewt(&["weights", bad]).status.code(), Some(2));
    assert_eq!(serrewt(&["weights", "not json"]).status.code(), Some(2));
    assert_eq!(serrewt(&["weights", "@/nonexistent/param.json"]).status.code(), Some(2));
}

#[test]
fn weights_reads_a_file() {
    let dir = tempdir();
    let path = dir.join("param.json");
    std::fs::write(&path, IRR_P5).unwrap();
    let arg = format!("@{}", path.display());
    let v = json(&serrewt(&["--format", "json", "weights", &arg]));
    assert_eq!(v["k_cris"], 4);
}

#[test]
fn verify_exit_codes() {
    let o = serrewt(&["verify", "-p", "3..13", "--checks", "all", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("PASS"));
    assert_eq!(serrewt(&["verify", "-p", "2"]).status.code(), Some(2));
    assert_eq!(serrewt(&["verify", "-p", "2..7"]).status.code(), Some(2));
    assert_eq!(serrewt(&["verify", "-p", "3..x"]).status.code(), Some(2));
    assert_eq!(serrewt(&["verify", "-p", "5", "--checks", "bogus"]).status.code(), Some(2));
    assert_eq!(serrewt(&["verify", "-p", "37", "--checks", "brauer"]).status.code(), Some(2));
}

#[test]
fn verify_is_deterministic_across_jobs() {
    let base = ["verify", "-p", "5", "--checks", "main", "--format", "json", "--no-timing"];
    let one = serrewt(&[&base[..], &["--jobs", "1"]].concat());
    let four = serrewt(&[&base[..], &["--jobs", "4"]].concat());
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout);
    let v = json(&one);
    assert_eq!(v["pass"], true);
    assert_eq!(v["runs"][0]["params_checked"], 78);
    assert_eq!(v["runs"][0]["check"], "main");
}

#[test]
fn verify_respects_env_defaults() {
    let o = Command::new(env!("CARGO_BIN_EXE_serrewt"))
        .args(["verify", "--checks", "main", "--format", "csv"])
        .env("SERREWT_MAX_P", "7")
        .env("SERREWT_JOBS", "2")
        .output()
        .unwrap();
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "p,check,params_checked,failures,ms");
    assert_eq!(rows.len(), 4);
    assert!(rows[3].starts_with("7,main,"));
}

#[test]
fn table_for_p3() {
    let o = serrewt(&["table", "-p", "3", "--format", "json"]);
    assert!(o.status.success());
    let rows = json(&o);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 21);
    for r in rows {
        assert_eq!(r["k_equal"], true);
        assert_eq!(r["sets_equal"], true);
        if r["param"]["shape"] == "tres" {
            assert_eq!(r["W_size"], 1);
        }
    }
}

#[test]
fn table_csv_to_file() {
    let dir = tempdir();
    let path = dir.join("p5.csv");
    let o = serrewt(&["table", "-p", "5", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 79);
    assert!(lines[0].starts_with("type,a,b,twist,ratio,shape,lambda_equal,k_serre,k_min,k_cris,W_size,W,B"));
    assert!(lines[1..].iter().all(|l| l.ends_with("true,true")));
}

#[test]
fn unwritable_out_path_fails() {
    let o = serrewt(&["table", "-p", "3", "--out", "/nonexistent/dir/t.csv"]);
    assert_ne!(o.status.code(), Some(0));
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("serrewt-cli-{}-{:?}", std::process::id(), std::thread::current().id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
