//! Serializable command outputs. Rationals are "num/den" strings.

use serde::Serialize;

use logrank::comm::{matrix_rank_exact, simulate_protocol, xor_matrix, XOR_MATRIX_MAX_N};
use logrank::pdt::{self, pdt_check, Certificate, Pdt, Strategy};
use logrank::scalar::dyadic_string;
use logrank::{anf_of, pm_spectrum, wht, AffineConstraint, BooleanFunction, Error, ExactSpectrum, Mask};

use crate::Failure;

#[derive(Serialize, Debug)]
pub struct AnalyzeOutput {
    pub n: u32,
    pub deg2: u32,
    pub l0: usize,
    pub l1: String,
    pub granularity: u32,
    pub density: String,
}

/// Measures of f in its {0,1} range.
pub fn analyze(f: &BooleanFunction) -> AnalyzeOutput {
    let s: ExactSpectrum = wht(f);
    let st = s.stats();
    AnalyzeOutput {
        n: f.n(),
        deg2: anf_of(f).degree(),
        l0: st.l0,
        l1: st.l1_string(),
        granularity: st.granularity,
        density: f.density_string(),
    }
}

#[derive(Serialize, Debug)]
pub struct CheckOutput {
    pub correct: bool,
    pub depth: u32,
    pub size: usize,
    pub first_mismatch: Option<String>,
    pub sparsity_bound: bool,
    pub independent: bool,
}

pub fn check_output(t: &Pdt, f: &BooleanFunction) -> CheckOutput {
    let c = pdt_check(t, f);
    CheckOutput {
        correct: c.correct,
        depth: c.depth,
        size: c.size,
        first_mismatch: c.first_mismatch.map(|m| m.to_bitstring(f.n())),
        sparsity_bound: c.sparsity_bound,
        independent: c.independent,
    }
}

#[derive(Serialize, Debug)]
pub struct StepOutput {
    pub t: String,
    pub b: u8,
    pub l1_before: String,
    pub l1_half: String,
    pub l1_after: String,
    pub halved: bool,
    pub constraints: Vec<String>,
}

#[derive(Serialize, Debug)]
pub struct CertOutput {
    pub method: String,
    pub value: u8,
    pub codim: usize,
    pub constraints: Vec<String>,
    pub verified: bool,
    /// ‖f̂±‖₁.
    pub l1_pm: String,
    /// codim ≤ 4‖f̂±‖₁ + 2.
    pub within_bound: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<Vec<StepOutput>>,
}

fn show(cs: &[AffineConstraint], n: u32) -> Vec<String> {
    cs.iter().map(|c| c.display(n)).collect()
}

pub fn cert_output(f: &BooleanFunction, method: &str) -> Result<CertOutput, Failure> {
    let n = f.n();
    let (cert, steps): (Certificate, _) = match method {
        "greedy" => (pdt::cert_greedy_l1(f)?, None),
        "norm-halving" => {
            let (c, steps) = pdt::cert_norm_halving_traced(f)?;
            let steps = steps
                .iter()
                .map(|s| StepOutput {
                    t: s.t.to_bitstring(n),
                    b: s.b as u8,
                    l1_before: dyadic_string(&s.l1_before, n),
                    l1_half: dyadic_string(&s.l1_half, n),
                    l1_after: dyadic_string(&s.l1_after, n),
                    halved: s.halved(),
                    constraints: show(&s.constraints, n),
                })
                .collect();
            (c, Some(steps))
        }
        other => return Err(Failure::Invalid(format!("unknown method {other:?}"))),
    };
    let s = pm_spectrum::<i64>(f);
    Ok(CertOutput {
        method: method.to_string(),
        value: cert.value as u8,
        codim: cert.codim(),
        constraints: show(&cert.constraints, n),
        verified: cert.verify(f),
        l1_pm: dyadic_string(&s.l1_num(), s.denom_exp()),
        within_bound: cert.within_l1_bound(s.l1_num(), s.denom_exp()),
        steps,
    })
}

#[derive(Serialize, Debug)]
pub struct RankOutput {
    pub rank: u32,
    pub witness: Vec<String>,
}

#[derive(Serialize, Debug)]
pub struct CommRankOutput {
    pub n: u32,
    pub matrix_rank: usize,
    /// ‖f̂‖₀ of the {0,1} view.
    pub l0: usize,
    pub equal: bool,
}

pub fn comm_rank_output(f: &BooleanFunction) -> Result<CommRankOutput, Failure> {
    if f.n() > XOR_MATRIX_MAX_N {
        return Err(Error::TooLarge(format!("communication matrix needs n <= {XOR_MATRIX_MAX_N}, got {}", f.n())).into());
    }
    let rank = matrix_rank_exact(&xor_matrix::<i64>(f)?);
    let l0 = wht::<i64>(f).l0();
    Ok(CommRankOutput { n: f.n(), matrix_rank: rank, l0, equal: rank == l0 })
}

#[derive(Serialize, Debug)]
pub struct RoundOutput {
    pub query: String,
    pub alice: u8,
    pub bob: u8,
}

#[derive(Serialize, Debug)]
pub struct SimOutput {
    pub x: String,
    pub y: String,
    pub strategy: String,
    pub rounds: Vec<RoundOutput>,
    pub output: u8,
    pub expected: u8,
    pub correct: bool,
    pub cost_bits: usize,
}

pub fn sim_output(f: &BooleanFunction, x: Mask, y: Mask, strategy: Strategy) -> SimOutput {
    let n = f.n();
    let (tree, _) = pdt::build(f, strategy);
    let tr = simulate_protocol(&tree, x, y);
    let expected = f.eval((x ^ y).0);
    SimOutput {
        x: x.to_bitstring(n),
        y: y.to_bitstring(n),
        strategy: strategy.name().to_string(),
        rounds: tr
            .rounds
            .iter()
            .map(|r| RoundOutput { query: r.mask.to_bitstring(n), alice: r.alice_bit as u8, bob: r.bob_bit as u8 })
            .collect(),
        output: tr.output as u8,
        expected: expected as u8,
        correct: tr.output == expected,
        cost_bits: tr.cost_bits,
    }
}
