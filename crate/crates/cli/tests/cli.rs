use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_triplesys")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn build_to(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_string_lossy().into_owned();
    let mut all = vec!["build"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", &path]);
    let o = run(&all);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn build_verify_analyze_a_triple_system() {
    let dir = tempfile::tempdir().unwrap();
    let file = build_to(dir.path(), "t.json", &["sts:dim2:ii:eps=1"]);
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(json["dim"], 2);
    assert_eq!(json["kind"], "STS");
    let o = run(&["verify", &file, "--axioms"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("0 violations"));
    let o = run(&["analyze", &file, "--simple"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("simple: true"));
    assert_eq!(code(&run(&["verify", &file, "--jacobi"])), 2);
}

#[test]
fn build_and_check_an_algebra() {
    let dir = tempfile::tempdir().unwrap();
    let file = build_to(dir.path(), "g.json", &["sts:sts8", "--functor", "gtilde_sts"]);
    let o = run(&["verify", &file, "--jacobi"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = run(&["analyze", &file]);
    let out = stdout(&o);
    assert!(out.contains("dim 18 = 10 + 8"), "{out}");
    assert!(out.contains("center dim 0"));
    assert!(out.contains("verdict: simple"));
}

#[test]
fn repeated_builds_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = build_to(dir.path(), "a.json", &["ots:ftype", "--functor", "gtilde_ots"]);
    let b = build_to(dir.path(), "b.json", &["ots:ftype", "--functor", "gtilde_ots"]);
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    let stdout_a = run(&["build", "sts:jordan:h3_k", "--p", "5"]).stdout;
    let stdout_b = run(&["build", "sts:jordan:h3_k", "--p", "5"]).stdout;
    assert_eq!(stdout_a, stdout_b);
}

#[test]
fn import_failures_have_their_own_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let file = build_to(dir.path(), "t.json", &["sts:sts8"]);
    let text = std::fs::read_to_string(&file).unwrap();

    let truncated = dir.path().join("truncated.json");
    std::fs::write(&truncated, &text[..text.len() / 2]).unwrap();
    let o = run(&["verify", truncated.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("malformed"));

    let mut json: serde_json::Value = serde_json::from_str(&text).unwrap();
    json["p"] = 2.into();
    let invalid = dir.path().join("invalid.json");
    std::fs::write(&invalid, json.to_string()).unwrap();
    assert_eq!(code(&run(&["verify", invalid.to_str().unwrap()])), 4);

    json["format"] = "tsc-99".into();
    let unsupported = dir.path().join("unsupported.json");
    std::fs::write(&unsupported, json.to_string()).unwrap();
    assert_eq!(code(&run(&["verify", unsupported.to_str().unwrap()])), 5);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&["build", "sts:nonsense"])), 2);
    assert_eq!(code(&run(&["build", "sts:sts8", "--p", "4"])), 2);
    assert_eq!(code(&run(&["build", "sts:sts8", "--functor", "h"])), 2);
    assert_eq!(code(&run(&["verify", "/nonexistent/file.json"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn report_lists_the_small_prime_table() {
    let o = run(&["report", "--p", "3"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    for needle in ["gtilde_sts", " 189 ", " 105 ", " 77 ", "0 failed"] {
        assert!(out.contains(needle), "missing {needle:?}");
    }
    let summary: serde_json::Value = serde_json::from_str(out.lines().last().unwrap()).unwrap();
    assert_eq!(summary["passed"], true);
    assert_eq!(summary["p"], 3);
    assert_eq!(run(&["report", "--p", "3", "--seed", "4"]).stdout, run(&["report", "--p", "3", "--seed", "4"]).stdout);
}

#[test]
fn search_finds_two_dimensional_simple_systems() {
    let o = run(&["search-null-sts", "--dim", "2", "--p", "3", "--trials", "500", "--seed", "2"]);
    assert_eq!(code(&o), 0);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(!report["simple"].as_array().unwrap().is_empty());
    assert_eq!(report["trials"], 500);
    assert_eq!(code(&run(&["search-null-sts", "--dim", "0"])), 2);
}
