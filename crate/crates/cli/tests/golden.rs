//! Byte-exact outputs of the pinned invocations in `tests/golden/`.
//!
//! `cargo test -p logrank-cli --test golden -- --ignored` rewrites them.

mod common;

use std::fs;

use common::*;

fn tempdir() -> tempfile::TempDir {
    tempfile::tempdir().expect("temporary directory")
}

#[test]
fn outputs_match_golden_files() {
    for case in CASES {
        let dir = tempdir();
        let r = run_case(case, dir.path());
        assert_eq!(r.code, case.code, "{}: {}", case.name, String::from_utf8_lossy(&r.err));
        match stream_name(case) {
            Some(name) => {
                let want = fs::read(golden_dir().join(&name)).unwrap_or_else(|_| panic!("missing golden file {name}"));
                assert!(r.out == want, "{} differs from {name}:\n{}", case.name, String::from_utf8_lossy(&r.out));
            }
            None => assert!(r.out.is_empty(), "{} wrote to the output stream", case.name),
        }
        if let (Some(file), Some(got)) = (case.file, &r.file) {
            let want = fs::read(golden_dir().join(file)).unwrap_or_else(|_| panic!("missing golden file {file}"));
            assert!(*got == want, "{} differs from {file}", case.name);
        }
    }
}

#[test]
fn two_runs_are_identical() {
    for case in CASES {
        let (a, b) = (tempdir(), tempdir());
        let (ra, rb) = (run_case(case, a.path()), run_case(case, b.path()));
        assert_eq!(ra.out, rb.out, "{}", case.name);
        assert_eq!(ra.file, rb.file, "{}", case.name);
    }
}

#[test]
#[ignore]
fn regenerate() {
    fs::create_dir_all(golden_dir()).unwrap();
    for case in CASES {
        let dir = tempdir();
        let r = run_case(case, dir.path());
        assert_eq!(r.code, case.code, "{}: {}", case.name, String::from_utf8_lossy(&r.err));
        if let Some(name) = stream_name(case) {
            fs::write(golden_dir().join(name), &r.out).unwrap();
        }
        if let (Some(file), Some(got)) = (case.file, &r.file) {
            fs::write(golden_dir().join(file), got).unwrap();
        }
    }
}
