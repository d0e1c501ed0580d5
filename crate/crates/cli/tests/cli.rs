//! Exit codes and stream discipline.

fn run(args: &[&str]) -> (i32, String, String) {
    let mut full = vec!["logrank"];
    full.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = logrank_cli::run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn parse_errors_exit_2() {
    for args in [
        &["analyze", "tt:2:zz"][..],
        &["analyze", "anf:2:x1*x3"],
        &["analyze", "family:bent_ip(3)"],
        &["analyze", "tt:25:0"],
        &["rank", "anf:3:1"],
        &["cert", "anf:2:0"],
        &["comm", "rank", "family:and(11)"],
        &["comm", "sim", "family:and(2)", "--x", "101", "--y", "00"],
        &["pdt", "build", "family:and(2)", "--strategy", "nope"],
        &["pdt", "check", "family:and(2)", "/nonexistent/tree.json"],
        &["sweep", "--family", "bent_ip", "--n", "3"],
        &["bogus"],
    ] {
        let (code, out, err) = run(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty(), "{args:?} wrote {out}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn error_reports_position() {
    let (_, _, err) = run(&["analyze", "anf:2:x1*x3"]);
    assert!(err.contains("position 9"), "{err}");
}

#[test]
fn check_failures_exit_1() {
    let (code, out, err) = run(&["rank", "family:bent_ip(6)", "--max-codim", "2"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("codimension <= 2"), "{err}");

    let dir = tempfile::tempdir().unwrap();
    let tree = dir.path().join("tree.json");
    let (code, out, _) = run(&["pdt", "build", "family:and(3)", "--strategy", "span-query"]);
    assert_eq!(code, 0);
    std::fs::write(&tree, out).unwrap();
    let (code, out, err) = run(&["pdt", "check", "family:or(3)", tree.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("\"correct\": false"));
    assert!(err.contains("disagrees"));
}

#[test]
fn help_goes_to_output() {
    let (code, out, err) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("sweep"));
    assert!(err.is_empty());
}

#[test]
fn out_dir_redirects_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, out, _) = run(&["--out-dir", d, "pdt", "build", "family:and(2)", "--strategy", "greedy-l1", "--dot", "sub/t.dot"]);
    assert_eq!(code, 0);
    assert!(out.starts_with('{'));
    let dot = std::fs::read_to_string(dir.path().join("sub/t.dot")).unwrap();
    assert!(dot.starts_with("digraph pdt {"));

    let (code, out, _) = run(&["--out-dir", d, "sweep", "--family", "and", "--n", "2..3", "--out", "s.csv"]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let csv = std::fs::read_to_string(dir.path().join("s.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "family,n,deg2,l0,l1_num,l1_den,strategy,depth,cert_codim,rank_exact,matrix_rank,log2_rank,bound_B");
    assert_eq!(csv.lines().count(), 1 + 2 * 4);
}

#[test]
fn sweep_skips_invalid_instances() {
    let (code, out, err) = run(&["sweep", "--family", "bent_ip", "--n", "2..4", "--strategies", "greedy-l1"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 3);
    assert!(err.contains("skipping bent_ip(3)"));
}
