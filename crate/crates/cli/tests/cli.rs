use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn configs(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "configs", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heckeklr")).args(args).output().unwrap()
}

fn lines(o: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&o.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn relations_pass_and_mutation_fails() {
    let cfg = configs("type_o_q.json");
    let ok = run(&["verify", "relations", "--config", &cfg, "--family", "KLR", "--n", "2"]);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));
    let recs = lines(&ok);
    assert!(recs.len() > 1);
    assert_eq!(recs.last().unwrap()["status"], "PASS");

    let bad = run(&["verify", "relations", "--config", &cfg, "--family", "KLR", "--n", "2", "--mutate", "3"]);
    assert_eq!(bad.status.code(), Some(1));
    let fails = lines(&bad).into_iter().filter(|r| r["status"] == "FAIL" && r.get("summary").is_none()).count();
    assert_eq!(fails, 1);
}

#[test]
fn basis_rank_is_full() {
    let o = run(&["verify", "basis", "--config", &configs("type_w.json"), "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let first = &lines(&o)[0];
    assert_eq!(first["rank"], 18);
    assert_eq!(first["count"], 18);
}

#[test]
fn iso_type_o_passes() {
    let o = run(&["verify", "iso", "--config", &configs("type_o_q.json"), "--family", "O", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn apply_examples() {
    let cfg = configs("type_o_q.json");
    let crossing = configs("crossing_o_minus.json");
    let zero = run(&["apply", "--config", &cfg, "--diagram", &crossing]);
    assert_eq!(zero.status.code(), Some(0));
    assert_eq!(lines(&zero)[0][0]["value"]["terms"], serde_json::json!([]));

    let x1 = r#"{"terms":[[[1,0],{"terms":[[[0,0,0],"1"]]}]]}"#;
    let o = run(&["apply", "--config", &cfg, "--diagram", &crossing, "--probe", x1]);
    let terms = &lines(&o)[0][0]["value"]["terms"];
    assert_eq!(terms[0][0], serde_json::json!([0, 1]));
    assert_eq!(terms[0][1]["terms"][0][1], "-2");
    assert_eq!(terms[1][0], serde_json::json!([1, 0]));

    let dot = run(&["apply", "--config", &cfg, "--diagram", &configs("dot_klr.json")]);
    assert_eq!(lines(&dot)[0][0]["value"]["terms"], serde_json::json!([[[1, 0, 0], "1"]]));
}

#[test]
fn configuration_errors_exit_2() {
    let o = run(&["verify", "relations", "--config", &configs("type_o_f7.json"), "--order", "2", "--family", "KLR"]);
    assert_eq!(o.status.code(), Some(2));
    let dir = std::env::temp_dir().join(format!("heckeklr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let exp_f7 = dir.join("exp_f7.json");
    std::fs::write(&exp_f7, r#"{"field":"F7","q":2,"U":[1,2,4],"n":2,"order":3,"b":"exp"}"#).unwrap();
    let malformed = dir.join("bad.json");
    std::fs::write(&malformed, "{ not json").unwrap();
    for p in [&exp_f7, &malformed] {
        let o = run(&["verify", "relations", "--config", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2));
    }
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let _ = std::fs::remove_dir_all(dir);
}
