use std::process::Command;

fn ealie(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ealie")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn list_constructions() {
    let (code, out, _) = ealie(&["list-constructions"]);
    assert_eq!(code, 0);
    for name in ["quantum-torus", "affinized", "sp-classical", "sqrt-extension", "cocycle-extension"] {
        assert!(out.contains(name));
    }
}

#[test]
fn check_passes_and_is_deterministic() {
    let args = ["check", "--construction", "affinized", "--nu", "1", "--window", "1", "--suites", "T,EARS,TAME", "--seed", "3"];
    let (code, a, _) = ealie(&args);
    assert_eq!(code, 0, "{a}");
    let (_, b, _) = ealie(&args);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["instance"]["nullity"], 1);
    assert_eq!(v["suite_results"]["T"]["passed"], true);
    assert!(v["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn failing_suite_exits_one_with_witness() {
    let (code, out, _) = ealie(&["check", "--construction", "cocycle-extension", "--suites", "TAME"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["witnesses"][0]["suite"], "TAME");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["check", "--construction", "quantum-torus", "--nu", "2", "--q", "5"],
        vec!["check", "--construction", "nope"],
        vec!["check", "--suites", "X"],
        vec!["check", "--construction", "affinized", "--ell", "1"],
        vec!["check", "--construction", "sqrt-extension", "--primes", "4"],
        vec!["export", "--construction", "sp-classical", "--type", "E", "--rank", "6"],
        vec!["serre", "--window", "-1"],
    ] {
        let (code, _, err) = ealie(&args);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
}

#[test]
fn export_counts_and_footer() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("roots.jsonl");
    let (code, _, _) = ealie(&[
        "export", "--construction", "affinized", "--nu", "2", "--q", "-1", "--window", "1", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 82);
    let footer: serde_json::Value = serde_json::from_str(lines[81]).unwrap();
    assert_eq!(footer, serde_json::json!({"nullity": 2, "type": "C", "rank": 2, "window": 1}));
    let first: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    for key in ["finite", "lattice", "dim", "norm", "isotropic"] {
        assert!(first.get(key).is_some(), "missing {key}");
    }
    let (_, stdout, _) = ealie(&["export", "--construction", "affinized", "--nu", "2", "--q", "-1", "--window", "1"]);
    assert_eq!(stdout, text);
}

#[test]
fn serre_and_ears_subcommands() {
    let (code, out, _) = ealie(&["serre", "--construction", "quantum-torus", "--ell", "3", "--window", "0"]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = ealie(&["ears", "--construction", "sqrt-extension", "--primes", "2,3"]);
    assert_eq!(code, 0, "{out}");
}
