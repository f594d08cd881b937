use std::process::Command;

fn ysyslab() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ysyslab"));
    c.env_remove("YSYSLAB_BUDGET_RR");
    c
}

#[test]
fn dilog_report_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("dilog.json");
    let status = ysyslab()
        .args(["dilog", "--pair", "A2xA1", "--samples", "5", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["report"]["identities"][0]["domain"], "S+");
    assert_eq!(v["report"]["identities"][0]["expected_value"], 6.0);
    assert_eq!(v["seed"], 0);
    assert!(v["tolerances"]["abs"].is_number());
    assert!(v["version"].is_string());
}

#[test]
fn identical_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2).map(|k| dir.path().join(format!("r{k}.json"))).collect();
    for p in &paths {
        let s = ysyslab()
            .args(["all", "--pair", "A2xA2,D4xA1", "--seed", "7", "--out"])
            .arg(p)
            .status()
            .unwrap();
        assert_eq!(s.code(), Some(0));
    }
    assert_eq!(std::fs::read(&paths[0]).unwrap(), std::fs::read(&paths[1]).unwrap());
}

#[test]
fn budget_exceedance_exits_2() {
    let o = ysyslab().args(["wedge", "--pair", "A4xA2"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--budget-rr"));
    let o = ysyslab()
        .args(["wedge", "--pair", "A3xA2"])
        .env("YSYSLAB_BUDGET_RR", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn constant_level_two() {
    let o = ysyslab().args(["constant", "--type", "A1", "--level", "2"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let id = &v["report"]["identity"];
    assert!((id["identity_lhs"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!((id["identity_rhs"].as_f64().unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn csv_format() {
    let o = ysyslab().args(["tropical", "--pair", "A3xA2", "--format", "csv"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(
        text,
        "command,pair,check,passed,value\ntropical,A3xA2,N_plus,true,18\ntropical,A3xA2,N_minus,true,24\n"
    );
}

#[test]
fn default_suite_passes() {
    let o = ysyslab().args(["all", "--format", "csv"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
}
