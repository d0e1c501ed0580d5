#![allow(dead_code)]

use std::path::{Path, PathBuf};

/// One pinned invocation. `file` names an extra output the command writes
/// under `--out-dir`, compared alongside the output stream.
pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub schema: Option<&'static str>,
    pub file: Option<&'static str>,
    pub code: i32,
}

pub const CASES: &[Case] = &[
    Case { name: "analyze_and2", args: &["analyze", "anf:2:x1*x2"], schema: Some("analyze"), file: None, code: 0 },
    Case { name: "analyze_x1", args: &["analyze", "tt:1:2"], schema: Some("analyze"), file: None, code: 0 },
    Case { name: "analyze_majority5", args: &["analyze", "family:majority(5)"], schema: Some("analyze"), file: None, code: 0 },
    Case { name: "rank_ip4", args: &["rank", "anf:4:x1*x2+x3*x4"], schema: Some("rank"), file: None, code: 0 },
    Case { name: "rank_and2", args: &["rank", "anf:2:x1*x2"], schema: Some("rank"), file: None, code: 0 },
    Case {
        name: "pdt_build_ip4",
        args: &["pdt", "build", "family:bent_ip(4)", "--strategy", "degree-reduce", "--dot", "pdt_build_ip4.dot"],
        schema: Some("pdt"),
        file: Some("pdt_build_ip4.dot"),
        code: 0,
    },
    Case {
        name: "pdt_build_and3",
        args: &["pdt", "build", "family:and(3)", "--strategy", "greedy-l1", "--dot", "pdt_build_and3.dot"],
        schema: Some("pdt"),
        file: Some("pdt_build_and3.dot"),
        code: 0,
    },
    Case {
        name: "pdt_build_poly",
        args: &["pdt", "build", "family:random_poly(6,3,1)", "--strategy", "heavy-hitter"],
        schema: Some("pdt"),
        file: None,
        code: 0,
    },
    Case {
        name: "pdt_build_span",
        args: &["pdt", "build", "family:symmetric(0110)", "--strategy", "span-query"],
        schema: Some("pdt"),
        file: None,
        code: 0,
    },
    Case { name: "cert_greedy_and2", args: &["cert", "anf:2:x1*x2", "--method", "greedy"], schema: Some("cert"), file: None, code: 0 },
    Case {
        name: "cert_halving_poly",
        args: &["cert", "family:random_poly(6,3,1)", "--method", "norm-halving"],
        schema: Some("cert"),
        file: None,
        code: 0,
    },
    Case { name: "comm_rank_maj5", args: &["comm", "rank", "family:majority(5)"], schema: Some("comm_rank"), file: None, code: 0 },
    Case {
        name: "comm_sim_ip4",
        args: &["comm", "sim", "family:bent_ip(4)", "--x", "1100", "--y", "0110", "--strategy", "degree-reduce"],
        schema: Some("comm_sim"),
        file: None,
        code: 0,
    },
    Case { name: "verify_ip4", args: &["verify", "family:bent_ip(4)"], schema: Some("verify"), file: None, code: 0 },
    Case { name: "verify_and2", args: &["verify", "anf:2:x1*x2"], schema: Some("verify"), file: None, code: 0 },
    Case {
        name: "sweep_poly",
        args: &["sweep", "--family", "random_poly(n,3,seed)", "--n", "3..6", "--seeds", "0..2", "--out", "sweep_poly_out.csv"],
        schema: None,
        file: Some("sweep_poly_out.csv"),
        code: 0,
    },
    Case {
        name: "sweep_bent",
        args: &["sweep", "--family", "bent_ip", "--n", "2..6", "--strategies", "greedy-l1,degree-reduce"],
        schema: None,
        file: None,
        code: 0,
    },
];

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn golden_dir() -> PathBuf {
    crate_dir().join("tests").join("golden")
}

pub fn schema_dir() -> PathBuf {
    crate_dir().join("schemas")
}

/// Output stream, error stream, extra file contents and exit code.
pub struct Run {
    pub out: Vec<u8>,
    pub err: Vec<u8>,
    pub file: Option<Vec<u8>>,
    pub code: i32,
}

pub fn run_case(case: &Case, dir: &Path) -> Run {
    let mut args: Vec<String> = vec!["logrank".into(), "--out-dir".into(), dir.display().to_string()];
    args.extend(case.args.iter().map(|s| s.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = logrank_cli::run(args, &mut out, &mut err);
    let file = case.file.map(|f| std::fs::read(dir.join(f)).expect("command wrote its file"));
    Run { out, err, file, code }
}

/// Golden file for the output stream; `None` when the case writes nothing
/// there.
pub fn stream_name(case: &Case) -> Option<String> {
    match (case.schema, case.file) {
        (Some(_), _) => Some(format!("{}.json", case.name)),
        (None, None) => Some(format!("{}.csv", case.name)),
        (None, Some(_)) => None,
    }
}
