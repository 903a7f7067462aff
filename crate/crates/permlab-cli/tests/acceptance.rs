//! CLI acceptance: every command produces byte-identical output across
//! repeated runs with the same configuration, exit codes follow the
//! documented contract, and machine formats have the documented shape.

use std::process::{Command, Output};

fn permlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permlab"))
        .args(args)
        .env_remove("PERMLAB_BUDGET")
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str]) -> String {
    let out = permlab(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

#[test]
fn criterion_15_byte_identical_reruns() {
    let commands: Vec<Vec<&str>> = vec![
        vec!["factor", "--perm", "wordperm:tm", "--start", "0", "--len", "4"],
        vec!["factor", "--perm", "sturmian:w=fib,x=1,y=sqrt2", "--len", "5", "--format", "json"],
        vec!["gamma", "--perm", "wordperm:tm", "--i", "0", "--j", "3"],
        vec!["gamma", "--perm", "tmmorphic", "--sample", "100", "--seed", "11", "--bound", "256"],
        vec!["complexity", "--perm", "periodic:n=2", "--kind", "factor", "--n", "3", "--n-to", "6", "--m", "300", "--format", "csv"],
        vec!["complexity", "--perm", "sturmian:", "--kind", "maxpattern", "--n", "3", "--T", "12", "--M", "400", "--format", "json"],
        vec!["complexity", "--word", "fib", "--kind", "maxpattern", "--n", "2", "--t", "12", "--m", "2000", "--format", "csv"],
        vec!["period", "--perm", "periodic:n=4", "--m", "200", "--t-max", "16"],
        vec!["finewilf", "words", "--p", "2", "--q", "3"],
        vec!["finewilf", "perms", "--p", "2", "--q", "3"],
        vec!["finewilf", "perms", "--p", "2", "--q", "4", "--n", "8", "--format", "json"],
        vec!["finewilf", "witness", "--p", "4", "--q", "6", "--n", "14"],
        vec!["makarov", "table", "--max-n", "8", "--format", "csv"],
        vec!["makarov", "table", "--max-n", "6", "--format", "json"],
        vec!["squares", "count", "--max-n", "6", "--format", "csv"],
        vec!["squares", "check", "--pattern", "1324"],
        vec!["automaton", "check", "--perm", "wordperm:tm", "--n", "128"],
        vec!["automaton", "show"],
        vec!["plot", "--witness", "4,6,16", "--out", "-"],
        vec!["plot", "--pattern", "2431", "--out", "-"],
    ];
    for args in commands {
        let first = run_ok(&args);
        let second = run_ok(&args);
        assert_eq!(first, second, "output differs across runs for {args:?}");
        assert!(!first.is_empty(), "no output for {args:?}");
    }
    println!("criterion 15 PASS: all commands byte-identical across reruns");
}

#[test]
fn plot_files_are_deterministic() {
    let dir = std::env::temp_dir();
    let p1 = dir.join("permlab_plot_a.svg");
    let p2 = dir.join("permlab_plot_b.svg");
    run_ok(&["plot", "--perm", "periodic:n=2", "--n", "40", "--out", p1.to_str().unwrap()]);
    run_ok(&["plot", "--perm", "periodic:n=2", "--n", "40", "--out", p2.to_str().unwrap()]);
    let a = std::fs::read(&p1).unwrap();
    let b = std::fs::read(&p2).unwrap();
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("<svg"));
    assert_eq!(text.matches("<circle").count(), 40);
    assert!(text.contains("position") && text.contains("rank"));
    let _ = std::fs::remove_file(p1);
    let _ = std::fs::remove_file(p2);

    // the identity order plots on the diagonal: x and y both increase
    let diag = run_ok(&["plot", "--perm", "monotone", "--n", "10", "--out", "-"]);
    let mut coords = Vec::new();
    for line in diag.lines().filter(|l| l.contains("<circle")) {
        let cx: f64 = field(line, "cx").parse().unwrap();
        let cy: f64 = field(line, "cy").parse().unwrap();
        coords.push((cx, cy));
    }
    assert_eq!(coords.len(), 10);
    for w in coords.windows(2) {
        assert!(w[1].0 > w[0].0 && w[1].1 < w[0].1, "not diagonal: {coords:?}");
    }
}

fn field<'a>(line: &'a str, name: &str) -> &'a str {
    let start = line.find(&format!("{name}=\"")).unwrap() + name.len() + 2;
    let end = line[start..].find('"').unwrap();
    &line[start..start + end]
}

#[test]
fn exit_codes_follow_the_contract() {
    // usage errors -> 2
    let bad_spec = permlab(&["factor", "--perm", "nonsense:1", "--len", "4"]);
    assert_eq!(bad_spec.status.code(), Some(2));
    let bad_flag = permlab(&["factor", "--frobnicate"]);
    assert_eq!(bad_flag.status.code(), Some(2));
    // verification failures -> 1: periodic word has no suffix order
    let unresolved = permlab(&["factor", "--perm", "wordperm:ultper:u=,v=01", "--len", "4"]);
    assert_eq!(unresolved.status.code(), Some(1));
    // an automaton that answers < everywhere disagrees with Thue-Morse
    let dir = std::env::temp_dir().join("permlab_bad_automaton.txt");
    std::fs::write(
        &dir,
        "k=2\nstate s out < initial\nedge s (0,0) s\nedge s (0,1) s\nedge s (1,0) s\nedge s (1,1) s\n",
    )
    .unwrap();
    let mismatch = permlab(&[
        "automaton",
        "check",
        "--file",
        dir.to_str().unwrap(),
        "--perm",
        "wordperm:tm",
        "--n",
        "8",
    ]);
    assert_eq!(mismatch.status.code(), Some(1));
    let _ = std::fs::remove_file(dir);
    // success -> 0
    assert_eq!(permlab(&["factor", "--perm", "monotone", "--len", "3"]).status.code(), Some(0));
}

#[test]
fn automaton_table_round_trips_through_check() {
    let table = run_ok(&["automaton", "show"]);
    let path = std::env::temp_dir().join("permlab_tm_table.txt");
    std::fs::write(&path, &table).unwrap();
    run_ok(&[
        "automaton",
        "check",
        "--file",
        path.to_str().unwrap(),
        "--perm",
        "wordperm:tm",
        "--n",
        "256",
    ]);
    let _ = std::fs::remove_file(path);
    // the shipped table documents the provenance of every edge
    assert!(table.contains("# oracle-resolved"));
    assert!(table.contains("# figure-read"));
}

/// Machine output keeps the envelope `{command, params, result}` and the
/// column orders documented in the schema file.
#[test]
fn machine_formats_have_documented_shape() {
    let json_cases: Vec<Vec<&str>> = vec![
        vec!["factor", "--perm", "wordperm:tm", "--len", "4", "--format", "json"],
        vec!["gamma", "--perm", "wordperm:tm", "--i", "1", "--j", "2", "--format", "json"],
        vec!["complexity", "--perm", "periodic:n=2", "--kind", "factor", "--n", "3", "--m", "300", "--format", "json"],
        vec!["period", "--perm", "periodic:n=2", "--m", "200", "--t-max", "8", "--format", "json"],
        vec!["finewilf", "words", "--p", "3", "--q", "4", "--format", "json"],
        vec!["finewilf", "witness", "--p", "4", "--q", "6", "--n", "12", "--format", "json"],
        vec!["makarov", "table", "--max-n", "5", "--format", "json"],
        vec!["squares", "check", "--pattern", "1243", "--format", "json"],
        vec!["automaton", "check", "--perm", "wordperm:tm", "--n", "64", "--format", "json"],
    ];
    for args in json_cases {
        let text = run_ok(&args);
        let doc: serde_json::Value = serde_json::from_str(&text)
            .unwrap_or_else(|e| panic!("invalid JSON from {args:?}: {e}"));
        let obj = doc.as_object().unwrap_or_else(|| panic!("not an object from {args:?}"));
        assert!(obj["command"].is_string(), "command field from {args:?}");
        assert!(obj["params"].is_object(), "params field from {args:?}");
        assert!(obj.contains_key("result"), "result field from {args:?}");
    }
    // pattern values serialize as rank arrays
    let factor = run_ok(&["factor", "--perm", "wordperm:tm", "--len", "4", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&factor).unwrap();
    assert_eq!(doc["result"]["pattern"], serde_json::json!([2, 4, 3, 1]));
    // fixed CSV headers; the table for max-n 4 ends at p(5) = 48
    let table = run_ok(&["makarov", "table", "--max-n", "4", "--format", "csv"]);
    assert!(table.starts_with("t,psi,oracle,p\n"));
    assert_eq!(table.lines().last().unwrap(), "4,12,12,48");
    let complexity = run_ok(&[
        "complexity", "--perm", "periodic:n=2", "--kind", "factor", "--n", "3", "--m", "300",
        "--format", "csv",
    ]);
    assert!(complexity.starts_with("n,value,bound,M,T\n"));
}

#[test]
fn budget_env_var_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_permlab"))
        .args(["finewilf", "witness", "--p", "4", "--q", "6", "--n", "16"])
        .env("PERMLAB_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "tiny budget must fail loudly");
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("budget"), "stderr was: {err}");
}
