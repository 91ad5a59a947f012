use std::process::{Command, Output};

fn modgamma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modgamma")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn gamma_json_carries_the_fingerprint() {
    let out = modgamma(&["gamma", "--ell", "3", "--q", "7", "--i", "2", "--j", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "gamma");
    assert_eq!(v["fingerprint"]["ell"], 3);
    assert_eq!(v["data"]["value"][0], 2);
}

#[test]
fn table_csv_columns() {
    let out = modgamma(&["table", "--ell", "2", "--q", "5", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("ell,q,i,j,regular,cuspidal,value"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn search_reports_the_known_duplicate() {
    let out = modgamma(&["search", "--ell", "3", "--q", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let d = &v["data"]["duplicates"][0];
    assert_eq!((d["i"].as_u64(), d["i2"].as_u64()), (Some(2), Some(6)));
}

#[test]
fn scan_agrees_with_the_prediction() {
    let out = modgamma(&["scan", "--ell-max", "5", "--q-max", "19", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("2,17,true,10,")));
}

#[test]
fn usage_errors_exit_with_2() {
    assert_eq!(modgamma(&["gamma", "--ell", "3", "--q", "9", "--i", "0", "--j", "0"]).status.code(), Some(2));
    assert_eq!(modgamma(&["gamma", "--ell", "3", "--q", "7", "--i", "16", "--j", "0"]).status.code(), Some(2));
    assert_eq!(modgamma(&["gamma", "--ell", "3", "--q", "6", "--i", "0", "--j", "0"]).status.code(), Some(2));
    assert_eq!(modgamma(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(modgamma(&["search", "--ell", "3", "--q", "7", "--format", "csv"]).status.code(), Some(2));
}

#[test]
fn verification_failure_exits_with_1_and_diagnostics() {
    let out = modgamma(&["verify", "fe", "--ell", "3", "--q", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["command"], "verify fe");
}

#[test]
fn converse_new_passes_at_3_7() {
    let out = modgamma(&["verify", "converse-new", "--ell", "3", "--q", "7"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn newgamma_runs_in_both_conventions() {
    let a = modgamma(&["newgamma", "--ell", "2", "--q", "5", "--i", "1", "--format", "pretty"]);
    let b = modgamma(&["newgamma", "--ell", "2", "--q", "5", "--i", "1", "--convention", "model", "--format", "pretty"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
}

#[test]
fn out_flag_writes_the_artifact() {
    let dir = std::env::temp_dir().join(format!("modgamma-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.json");
    let out = modgamma(&["table", "--ell", "2", "--q", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "table");
    std::fs::remove_dir_all(&dir).unwrap();
}
