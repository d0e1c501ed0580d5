//! `sweep`: one CSV row per (family instance, strategy).

use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

use logrank::comm::{matrix_rank_exact, xor_matrix, XOR_MATRIX_MAX_N};
use logrank::families::FamilySpec;
use logrank::pdt::{self, RankOptions, Strategy, DEGREE_REDUCE_MAX_N, DEGREE_REDUCE_NODE_BUDGET};
use logrank::scalar::reduce_dyadic;
use logrank::verify::{bound_b, pm_l1};
use logrank::{anf_of, wht, BooleanFunction, ExactSpectrum};

use crate::{Ctx, Failure};

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Family template. Parameters spelled `n` or `seed` are substituted;
    /// a bare kind such as `and` means `and(n)`.
    #[arg(long)]
    pub family: String,
    /// Inclusive range A..B of n, or a single value.
    #[arg(long, value_parser = parse_range)]
    pub n: (u64, u64),
    /// Inclusive seed range substituted for `seed`.
    #[arg(long, value_parser = parse_range, default_value = "0")]
    pub seeds: (u64, u64),
    /// Comma-separated strategies; all four by default.
    #[arg(long, value_delimiter = ',', value_parser = crate::strategy_names())]
    pub strategies: Vec<String>,
    /// CSV destination; the output stream when absent.
    #[arg(long, value_name = "CSV")]
    pub out: Option<PathBuf>,
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once("..").unwrap_or((s, s));
    let a: u64 = a.parse().map_err(|_| format!("expected A..B, found {s:?}"))?;
    let b: u64 = b.parse().map_err(|_| format!("expected A..B, found {s:?}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok((a, b))
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct Row {
    pub family: String,
    pub n: u32,
    pub deg2: u32,
    pub l0: usize,
    pub l1_num: String,
    pub l1_den: String,
    pub strategy: String,
    pub depth: u32,
    pub cert_codim: Option<usize>,
    pub rank_exact: Option<u32>,
    pub matrix_rank: Option<usize>,
    pub log2_rank: Option<String>,
    #[serde(rename = "bound_B")]
    pub bound_b: Option<String>,
}

/// Instantiates the template at one (n, seed).
pub fn instantiate(template: &str, n: u64, seed: u64) -> String {
    let template = if template.contains('(') { template.to_string() } else { format!("{template}(n)") };
    let Some(open) = template.find('(') else { return template };
    let inner = template[open + 1..].trim_end_matches(')');
    let params: Vec<String> = inner
        .split(',')
        .map(|p| match p.trim() {
            "n" => n.to_string(),
            "seed" => seed.to_string(),
            other => other.to_string(),
        })
        .collect();
    format!("{}({})", &template[..open], params.join(","))
}

/// The per-strategy rows of one function.
pub fn rows(family: &str, f: &BooleanFunction, strategies: &[Strategy]) -> Vec<Row> {
    let n = f.n();
    let s: ExactSpectrum = wht(f);
    let st = s.stats();
    let (num, exp) = reduce_dyadic(&st.l1_num, st.denom_exp);
    let deg2 = anf_of(f).degree();
    let constant = f.is_constant();
    let cert_codim = (!constant).then(|| pdt::cert_greedy_l1(f).expect("non-constant").codim());
    let rank_exact = (!constant && n <= DEGREE_REDUCE_MAX_N)
        .then(|| pdt::rank_exact_with(f, RankOptions { max_codim: n, node_budget: Some(DEGREE_REDUCE_NODE_BUDGET) }).ok())
        .flatten()
        .map(|r| r.rank);
    let matrix_rank = (n <= XOR_MATRIX_MAX_N).then(|| matrix_rank_exact(&xor_matrix::<i64>(f).expect("n checked")));
    let log2_rank = matrix_rank.filter(|&r| r > 0).map(|r| format!("{:.6}", (r as f64).log2()));
    let bound = (deg2 >= 3).then(|| format!("{:.6}", bound_b(deg2, pm_l1(f).max(1.0)).expect("d >= 3, m >= 1")));
    strategies
        .iter()
        .map(|&strategy| Row {
            family: family.to_string(),
            n,
            deg2,
            l0: st.l0,
            l1_num: num.to_string(),
            l1_den: (1u128 << exp).to_string(),
            strategy: strategy.name().to_string(),
            depth: pdt::build(f, strategy).0.depth(),
            cert_codim,
            rank_exact,
            matrix_rank,
            log2_rank: log2_rank.clone(),
            bound_b: bound.clone(),
        })
        .collect()
}

pub fn to_csv(rows: &[Row]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

pub(crate) fn run(args: &SweepArgs, ctx: &mut Ctx) -> Result<(), Failure> {
    let strategies: Vec<Strategy> = if args.strategies.is_empty() {
        Strategy::ALL.to_vec()
    } else {
        args.strategies.iter().map(|s| Strategy::parse(s).expect("validated by clap")).collect()
    };
    let uses_seed = args.family.split(['(', ',', ')']).any(|p| p.trim() == "seed");
    let seeds = if uses_seed { args.seeds.0..=args.seeds.1 } else { 0..=0 };
    let mut keyed = Vec::new();
    for n in args.n.0..=args.n.1 {
        for seed in seeds.clone() {
            let name = instantiate(&args.family, n, seed);
            let spec: FamilySpec = match name.parse() {
                Ok(s) => s,
                Err(e) if args.n.0 == args.n.1 && !uses_seed => return Err(Failure::Invalid(format!("{name}: {e}"))),
                Err(e) => {
                    let _ = writeln!(ctx.err, "skipping {name}: {e}");
                    continue;
                }
            };
            let f = spec.generate().map_err(Failure::from)?;
            for row in rows(&name, &f, &strategies) {
                keyed.push(((spec.kind(), n, seed, row.strategy.clone()), row));
            }
        }
    }
    if keyed.is_empty() {
        return Err(Failure::Invalid(format!("no valid instances of {}", args.family)));
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let rows: Vec<Row> = keyed.into_iter().map(|(_, r)| r).collect();
    let csv = to_csv(&rows);
    match &args.out {
        Some(p) => ctx.write_file(p, &csv),
        None => ctx.raw(&csv),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn templates() {
        assert_eq!(instantiate("and", 3, 0), "and(3)");
        assert_eq!(instantiate("bent_ip(n)", 4, 0), "bent_ip(4)");
        assert_eq!(instantiate("random_poly(n,3,seed)", 6, 2), "random_poly(6,3,2)");
        assert_eq!(instantiate("bent_ip(2,n)", 5, 0), "bent_ip(2,5)");
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..5"), Ok((2, 5)));
        assert_eq!(parse_range("3"), Ok((3, 3)));
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("a..2").is_err());
    }

    #[test]
    fn row_values() {
        let f = logrank::families::bent_ip(4, 4).unwrap();
        let r = rows("bent_ip(4)", &f, &[Strategy::GreedyL1]);
        assert_eq!(r.len(), 1);
        let r = &r[0];
        assert_eq!((r.deg2, r.l0, r.l1_num.as_str(), r.l1_den.as_str()), (2, 16, "9", "4"));
        assert_eq!((r.rank_exact, r.matrix_rank), (Some(2), Some(16)));
        assert_eq!(r.log2_rank.as_deref(), Some("4.000000"));
        assert_eq!(r.bound_b, None);
    }
}
