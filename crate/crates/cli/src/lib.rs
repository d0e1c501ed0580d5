//! The `logrank` command-line tool.
//!
//! Machine output (JSON, CSV, DOT) goes to the output stream or to files;
//! diagnostics go to the error stream. Exit codes: 0 success, 1 a check
//! failed, 2 the input did not parse or validate.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use logrank::pdt::{self, Pdt, PdtJson, Strategy};
use logrank::{BooleanFunction, Error};

pub mod report;
pub mod spec;
pub mod sweep;

use report::*;

#[derive(Parser, Debug)]
#[command(name = "logrank", version, about = "Exact Fourier analysis, parity decision trees and XOR protocols")]
pub struct Cli {
    /// Resolve relative output paths (--dot, --out) under this directory.
    #[arg(long, global = true, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Degree, sparsity, spectral norm, granularity and density of f.
    Analyze { function: String },
    /// Build or check parity decision trees.
    #[command(subcommand)]
    Pdt(PdtCommand),
    /// Find a parity certificate.
    Cert {
        function: String,
        #[arg(long, default_value = "greedy", value_parser = ["greedy", "norm-halving"])]
        method: String,
    },
    /// Exact polynomial rank and a degree-reducing subspace.
    Rank {
        function: String,
        /// Largest codimension searched; defaults to n.
        #[arg(long)]
        max_codim: Option<u32>,
    },
    /// Communication matrix of the XOR function f(x ⊕ y).
    #[command(subcommand)]
    Comm(CommCommand),
    /// Every checkable inequality for f.
    Verify { function: String },
    /// Tabulate measures over a family as CSV.
    Sweep(sweep::SweepArgs),
}

#[derive(Subcommand, Debug)]
pub enum PdtCommand {
    Build {
        function: String,
        #[arg(long, value_parser = strategy_names())]
        strategy: String,
        /// Also write the tree in DOT format.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    Check { function: String, tree: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum CommCommand {
    /// rank over the rationals, compared with ‖f̂‖₀.
    Rank { function: String },
    /// Run the protocol given by a tree on one input pair.
    Sim(SimArgs),
}

#[derive(Args, Debug)]
pub struct SimArgs {
    function: String,
    #[arg(long)]
    x: String,
    #[arg(long)]
    y: String,
    #[arg(long, value_parser = strategy_names(), default_value = "greedy-l1")]
    strategy: String,
}

fn strategy_names() -> [&'static str; 4] {
    Strategy::ALL.map(Strategy::name)
}

/// A command outcome other than plain success.
#[derive(Debug)]
pub enum Failure {
    /// Exit 2: bad input.
    Invalid(String),
    /// Exit 1: the computation ran but a check did not hold.
    Check(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Invalid(_) => 2,
            Failure::Check(_) => 1,
        }
    }
}

impl From<spec::SpecError> for Failure {
    fn from(e: spec::SpecError) -> Self {
        Failure::Invalid(format!("invalid function: {e}"))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotFound { .. } => Failure::Check(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Invalid(format!("{}: {e}", path.display()))
}

pub(crate) struct Ctx<'a> {
    out: &'a mut dyn Write,
    pub(crate) err: &'a mut dyn Write,
    out_dir: Option<PathBuf>,
}

impl Ctx<'_> {
    fn resolve(&self, p: &Path) -> PathBuf {
        match &self.out_dir {
            Some(dir) if p.is_relative() => dir.join(p),
            _ => p.to_path_buf(),
        }
    }

    pub(crate) fn write_file(&self, p: &Path, contents: &str) -> Result<(), Failure> {
        let path = self.resolve(p);
        if let Some(parent) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(parent).map_err(|e| io_failure(parent, e))?;
        }
        fs::write(&path, contents).map_err(|e| io_failure(&path, e))
    }

    fn json<T: Serialize>(&mut self, value: &T) -> Result<(), Failure> {
        let mut s = serde_json::to_string_pretty(value).expect("serializable");
        s.push('\n');
        self.out.write_all(s.as_bytes()).map_err(|e| Failure::Invalid(format!("writing output: {e}")))
    }

    pub(crate) fn raw(&mut self, s: &str) -> Result<(), Failure> {
        self.out.write_all(s.as_bytes()).map_err(|e| Failure::Invalid(format!("writing output: {e}")))
    }
}

fn function(s: &str) -> Result<BooleanFunction, Failure> {
    Ok(spec::parse_function(s)?)
}

fn strategy(s: &str) -> Strategy {
    Strategy::parse(s).expect("validated by clap")
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let mut ctx = Ctx { out, err, out_dir: cli.out_dir };
    match dispatch(cli.command, &mut ctx) {
        Ok(()) => 0,
        Err(f) => {
            let msg = match &f {
                Failure::Invalid(m) => format!("error: {m}"),
                Failure::Check(m) => format!("check failed: {m}"),
            };
            let _ = writeln!(ctx.err, "{msg}");
            f.code()
        }
    }
}

fn dispatch(cmd: Command, ctx: &mut Ctx) -> Result<(), Failure> {
    match cmd {
        Command::Analyze { function: f } => ctx.json(&analyze(&function(&f)?)),
        Command::Pdt(PdtCommand::Build { function: f, strategy: s, dot }) => {
            let f = function(&f)?;
            let (tree, _) = pdt::build(&f, strategy(&s));
            if let Some(p) = dot {
                ctx.write_file(&p, &tree.to_dot())?;
            }
            ctx.json(&tree.to_json())
        }
        Command::Pdt(PdtCommand::Check { function: f, tree }) => {
            let f = function(&f)?;
            let text = fs::read_to_string(&tree).map_err(|e| io_failure(&tree, e))?;
            let json: PdtJson = serde_json::from_str(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", tree.display())))?;
            let t = Pdt::from_json(&json)?;
            if t.n() != f.n() {
                return Err(Error::DimensionMismatch { left: t.n(), right: f.n() }.into());
            }
            let r = check_output(&t, &f);
            ctx.json(&r)?;
            match r.correct {
                true => Ok(()),
                false => Err(Failure::Check(format!("tree disagrees with f at {}", r.first_mismatch.unwrap_or_default()))),
            }
        }
        Command::Cert { function: f, method } => {
            let r = cert_output(&function(&f)?, &method)?;
            ctx.json(&r)?;
            // the ℓ1 bound is a guarantee of the greedy method only
            match (r.verified, r.within_bound || method != "greedy") {
                (true, true) => Ok(()),
                (false, _) => Err(Failure::Check("certificate does not make f constant".into())),
                (true, false) => Err(Failure::Check("certificate codimension exceeds 4·‖f̂±‖₁ + 2".into())),
            }
        }
        Command::Rank { function: f, max_codim } => {
            let f = function(&f)?;
            let r = pdt::rank_exact(&f, max_codim.unwrap_or(f.n()))?;
            ctx.json(&RankOutput { rank: r.rank, witness: r.witness.iter().map(|c| c.display(f.n())).collect() })
        }
        Command::Comm(CommCommand::Rank { function: f }) => {
            let r = comm_rank_output(&function(&f)?)?;
            ctx.json(&r)?;
            match r.equal {
                true => Ok(()),
                false => Err(Failure::Check(format!("matrix rank {} differs from sparsity {}", r.matrix_rank, r.l0))),
            }
        }
        Command::Comm(CommCommand::Sim(a)) => {
            let f = function(&a.function)?;
            let x = spec::parse_bits(&a.x, f.n()).map_err(|e| Failure::Invalid(format!("--x {e}")))?;
            let y = spec::parse_bits(&a.y, f.n()).map_err(|e| Failure::Invalid(format!("--y {e}")))?;
            let r = sim_output(&f, x, y, strategy(&a.strategy));
            ctx.json(&r)?;
            match r.correct {
                true => Ok(()),
                false => Err(Failure::Check("protocol output differs from f(x ⊕ y)".into())),
            }
        }
        Command::Verify { function: f } => {
            let r = logrank::verify::invariant_report(&function(&f)?);
            ctx.json(&r)?;
            match r.overall {
                true => Ok(()),
                false => {
                    let names: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
                    Err(Failure::Check(format!("failed: {}", names.join(", "))))
                }
            }
        }
        Command::Sweep(args) => sweep::run(&args, ctx),
    }
}
