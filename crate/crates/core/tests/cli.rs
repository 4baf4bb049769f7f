use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name).display().to_string()
}

fn shiftlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shiftlab")).args(args).env_remove("SHIFTLAB_PRECISION").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn scan_writes_two_rows() {
    let o = shiftlab(&["scan", "--lo", "1/3", "--hi", "1/2", "--steps", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "a_sq,h_sq,s_sq,h_dec,s_dec,gap_dec\n\
         1/3,16/21,1/3,0.761904761905,0.333333333333,0.428571428571\n\
         1/2,8/9,2/5,0.888888888889,0.400000000000,0.488888888889\n"
    );
}

#[test]
fn scan_to_file() {
    let path = std::env::temp_dir().join(format!("shiftlab-scan-{}.csv", std::process::id()));
    let o = shiftlab(&["scan", "--lo", "1/6+1/100", "--hi", "1/2", "--steps", "50", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(text.lines().count(), 51);
}

#[test]
fn exit_codes() {
    let ok = shiftlab(&["check-khypo", "--k", "2", "--window", "50", &data("bergman2.json")]);
    assert_eq!(ok.status.code(), Some(0));
    let fail = shiftlab(&["check-khypo", "--k", "2", &data("flat_start.json")]);
    assert_eq!(fail.status.code(), Some(1));
    assert!(stdout(&fail).contains("det_H(2;0) = -9/4096"));
    assert_eq!(shiftlab(&["joint", &data("figure5_fail.json"), "--window", "30", "10"]).status.code(), Some(1));
    assert_eq!(shiftlab(&["joint", &data("figure5.json"), "--window", "30", "10"]).status.code(), Some(0));
    assert_eq!(shiftlab(&["check-khypo", "--k", "9", &data("bergman2.json")]).status.code(), Some(2));
    assert_eq!(shiftlab(&["moments", "/no/such/file.json"]).status.code(), Some(2));
    assert_eq!(shiftlab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(shiftlab(&["--help"]).status.code(), Some(0));
}

#[test]
fn malformed_json_reports_position() {
    let path = std::env::temp_dir().join(format!("shiftlab-bad-{}.json", std::process::id()));
    std::fs::write(&path, "{\"model\": \"figure9\",\n \"y_sq\": \"1/x\"}").unwrap();
    let o = shiftlab(&["joint", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn precision_env() {
    let o = Command::new(env!("CARGO_BIN_EXE_shiftlab"))
        .args(["classify-sfc", &data("sfc.json")])
        .env("SHIFTLAB_PRECISION", "4")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("h_sq = 8/9 ≈ 0.8889"));
    let o = Command::new(env!("CARGO_BIN_EXE_shiftlab"))
        .args(["classify-sfc", &data("sfc.json")])
        .env("SHIFTLAB_PRECISION", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

fn without_timing(text: &str) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(text).unwrap();
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

#[test]
fn json_reports_are_deterministic_and_match_text() {
    let args = ["joint", &data("figure5_fail.json"), "--window", "30", "10", "--json"];
    let a = stdout(&shiftlab(&args));
    let b = stdout(&shiftlab(&args));
    assert_eq!(without_timing(&a), without_timing(&b));
    let v = without_timing(&a);
    assert_eq!(v["verdict"], "fails");
    assert_eq!(v["witnesses"][0]["k"], serde_json::json!([1, 0]));
    let text = stdout(&shiftlab(&args[..5]));
    for c in v["constants"].as_array().unwrap() {
        let line = format!("{} = {} ≈ {}", c["name"].as_str().unwrap(), c["value"].as_str().unwrap(), c["decimal"].as_str().unwrap());
        assert!(text.contains(&line), "{line}");
    }
}

#[test]
fn classify_sfc_verdict() {
    let o = shiftlab(&["classify-sfc", &data("sfc.json"), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "HyponormalNotSubnormal");
    assert_eq!(v["details"]["in_class"], true);
}

#[test]
fn verify_paper_table() {
    let o = shiftlab(&["verify-paper"]);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| l.contains(" PASS ") || l.contains(" FAIL ")).collect();
    assert!(rows.len() >= 20, "{text}");
    let failed: Vec<&str> = rows.iter().filter(|l| l.contains(" FAIL ")).copied().collect();
    // the only red row is the 1/400 witness, which lies below the true threshold
    assert_eq!(failed.len(), 1, "{text}");
    assert!(failed[0].contains("figure5_fails_1_400"));
    assert_eq!(o.status.code(), Some(1));
}
