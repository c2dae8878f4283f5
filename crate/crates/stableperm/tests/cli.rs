//! End-to-end tests of the `stableperm` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stableperm"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

/// Writes `text` to a file unique to this test process.
fn input(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("stableperm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn help_matches_golden() {
    let golden = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/help.txt");
    let got = stableperm::cli::full_help();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&golden, &got).unwrap();
    }
    let want = std::fs::read_to_string(&golden).expect("golden file; rerun with UPDATE_GOLDEN=1");
    assert_eq!(got, want);
}

#[test]
fn permanent_of_all_ones() {
    let path = input("j3.json", r#"{"entries": [[1,1,1],[1,1,1],[1,1,1]]}"#);
    let o = run(&["perm", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "6");
}

#[test]
fn permanent_engines_agree_on_csv() {
    let path = input("m.csv", "1,2,0\n1/2,-1,3\n0,1,1\n");
    let outs: Vec<String> = ["auto", "enumerate", "subset-dp", "ryser"]
        .iter()
        .map(|e| stdout(&run(&["perm", "--input", path.to_str().unwrap(), "--engine", e])))
        .collect();
    assert!(outs.iter().all(|o| *o == outs[0]), "{outs:?}");
}

#[test]
fn ferrers_k_permanent() {
    // Heights (1, 2) give rows (1 1), (0 1): per_1 is the entry sum, per_2 is 1.
    let path = input("f.json", r#"{"heights": [1, 2]}"#);
    let per = |k: &str| stdout(&run(&["perm", "--input", path.to_str().unwrap(), "--k", k])).trim().to_string();
    assert_eq!(per("1"), "3");
    assert_eq!(per("2"), "1");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["perm"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "no-such-suite"]).status.code(), Some(1));
    let o = run(&["perm", "--input", "/nonexistent/m.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
}

#[test]
fn malformed_input_names_the_field() {
    let path = input("bad.json", r#"{"entries": [[1, "q"]]}"#);
    let o = run(&["perm", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("entries[0][1]"));
}

#[test]
fn stability_refutation_exits_two() {
    let stable = input("stable.txt", "x1*x2 + x1 + x2 + 1\n");
    let o = run(&["check-stability", "--input", stable.to_str().unwrap(), "--trials", "16"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let unstable = input("unstable.txt", "x1^2 + x2^2 + 1\n");
    let o = run(&["check-stability", "--input", unstable.to_str().unwrap(), "--trials", "16"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).expect("verdict JSON");
    assert!(v.to_string().contains("efuted"), "{v}");
}

#[test]
fn verify_suite_emits_report_json() {
    let o = run(&["verify", "eulerian", "--n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).expect("report JSON");
    assert_eq!(v["suite"], "eulerian");
    assert!(String::from_utf8_lossy(&o.stderr).contains("wall time"));
}

#[test]
fn reports_do_not_depend_on_jobs() {
    let a = run(&["--jobs", "1", "verify", "engines", "--seed", "3", "--count", "20"]);
    let b = run(&["--jobs", "4", "verify", "engines", "--seed", "3", "--count", "20"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn apolar_form_from_roots() {
    let path = input("pair.json", r#"{"f": {"roots": ["1"], "lead": "1"}, "g": {"coeffs": ["1", "1"]}}"#);
    let o = run(&["apolar", "form", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "form: 2\napolar: false\n");
}
