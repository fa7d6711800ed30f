use std::process::{Command, Output};

fn lsmodel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lsmodel")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn v_table_markdown() {
    let o = lsmodel(&["tables", "--which", "v", "--max", "7", "--format", "markdown"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("| n | v_{n,0} | v_{n,1} | v_{n,2} | v_{n,3} |\n|---|---|---|---|---|\n"));
    assert!(text.contains("| 6 | 1/2 | -3 | 9/2 | -1 |"));
    assert!(text.contains("| 7 | 1/2 | -7/2 | 7 | -7/2 |"));
}

#[test]
fn bernoulli_csv() {
    let o = lsmodel(&["tables", "--which", "bernoulli", "--max", "4", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "n,value\n0,1/1\n1,-1/2\n2,1/6\n3,0/1\n4,-1/30\n");
}

#[test]
fn build_model_dump() {
    let o = lsmodel(&["build-model", "--max", "6", "--cross-check"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["alphabet"], "xb");
    assert_eq!(v["truncation"], 8);
    assert_eq!(v["coefficients"][6]["value"], "1/42");
}

#[test]
fn geometric_passes() {
    let o = lsmodel(&["geometric", "--max", "8", "--truncate", "10"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["alphabet"], "abx");
}

#[test]
fn verify_exit_codes() {
    let o = lsmodel(&["verify", "--check", "euler", "--format", "json", "--no-timings"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).trim(),
        r#"{"checks":[{"name":"euler","params":{"max_n":30},"status":"pass","witness":null,"runtime_ms":0}],"summary":{"total":1,"passed":1,"failed":0}}"#
    );
    // an impossible truncation makes the check fail, not the configuration
    let o = lsmodel(&["verify", "--check", "main_theorem", "--max-lambda", "6", "--truncate", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(lsmodel(&["verify", "--check", "nope"]).status.code(), Some(2));
    assert_eq!(lsmodel(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(lsmodel(&["verify", "--check", "euler", "--param", "euler.max_n=-2"]).status.code(), Some(2));
    assert_eq!(lsmodel(&["tables", "--which", "nope"]).status.code(), Some(2));
}

#[test]
fn report_is_reproducible() {
    let dir = std::env::temp_dir().join(format!("lsmodel-report-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (a, b) = (dir.join("a.json"), dir.join("b.json"));
    for p in [&a, &b] {
        let o = lsmodel(&["report", "--suite", "sequences", "--no-timings", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}
