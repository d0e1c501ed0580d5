//! Parity certificates: affine subspaces on which f is constant.

use crate::anf::{anf_of, deg2};
use crate::error::{Error, Result};
use crate::function::BooleanFunction;
use crate::gf2::Mask;
use crate::restrict::{derivative, restrict_affine, spectrum_split, AffineConstraint};

use super::build::{build_greedy_l1, greedy_pair, State};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub n: u32,
    pub constraints: Vec<AffineConstraint>,
    pub value: bool,
}

impl Certificate {
    pub fn codim(&self) -> usize {
        self.constraints.len()
    }

    /// Exhaustively checks that f is `value` on the subspace.
    pub fn verify(&self, f: &BooleanFunction) -> bool {
        f.n() == self.n && restrict_affine(f, &self.constraints).is_ok_and(|g| g.constant_value() == Some(self.value))
    }

    /// Checks codim ≤ 4‖f̂±‖₁ + 2 exactly, given ‖f̂±‖₁ = l1_num / 2^denom_exp.
    pub fn within_l1_bound(&self, l1_num: i64, denom_exp: u32) -> bool {
        let k = 1i128 << denom_exp;
        (self.codim() as i128) * k <= 4 * l1_num as i128 + 2 * k
    }
}

/// One outer iteration of the norm-halving procedure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalvingStep {
    /// Direction of the derivative, in original coordinates.
    pub t: Mask,
    pub b: bool,
    /// ‖f̂±‖₁ numerators (denominator 2^n) before the step, of the chosen
    /// half ĝ_b, and after restricting.
    pub l1_before: i64,
    pub l1_half: i64,
    pub l1_after: i64,
    pub constraints: Vec<AffineConstraint>,
}

impl HalvingStep {
    pub fn halved(&self) -> bool {
        2 * self.l1_after <= self.l1_before
    }
}

/// Lifts local constraints through the chart of `state`.
fn lift_all(state: &State, cs: &[AffineConstraint]) -> Vec<AffineConstraint> {
    cs.iter().map(|c| AffineConstraint { mask: state.chart.lift(c.mask), bit: c.bit }).collect()
}

/// Sign-aligned greedy folding from `state` until the restriction is
/// constant; constraints are returned in original coordinates.
fn greedy_walk(mut state: State) -> (Vec<AffineConstraint>, bool) {
    let mut out = Vec::new();
    loop {
        if let Some(v) = state.g.constant_value() {
            return (out, v);
        }
        let (beta, pair) = greedy_pair(&state.s);
        let b = matches!(pair, Some((a1, a2)) if (a1 < 0) != (a2 < 0));
        let c = AffineConstraint { mask: beta, bit: b };
        out.push(AffineConstraint { mask: state.chart.lift(beta), bit: b });
        state = state.child(c);
    }
}

/// Follows the sign-aligned branch of the greedy ℓ1 folding.
pub fn cert_greedy_l1(f: &BooleanFunction) -> Result<Certificate> {
    if f.is_constant() {
        return Err(Error::ConstantInput);
    }
    let (constraints, value) = greedy_walk(State::root(f));
    Ok(Certificate { n: f.n(), constraints, value })
}

pub fn cert_norm_halving(f: &BooleanFunction) -> Result<Certificate> {
    cert_norm_halving_traced(f).map(|(c, _)| c)
}

/// A certificate for Δ_t g = b, in g's coordinates: the smaller of the
/// recursive certificate (when its value is b) and the shallowest b-leaf of
/// the greedy tree.
fn derivative_certificate(dg: &BooleanFunction, recursive: &Certificate, b: bool) -> Vec<AffineConstraint> {
    let (tree, _) = build_greedy_l1(dg);
    let leaf = tree
        .leaves()
        .into_iter()
        .filter(|l| l.value == b)
        .min_by_key(|l| l.constraints.len())
        .expect("a non-constant function has leaves of both values");
    if recursive.value == b && recursive.codim() <= leaf.constraints.len() {
        recursive.constraints.clone()
    } else {
        leaf.constraints
    }
}

/// Norm-halving certificate with its per-iteration trace.
pub fn cert_norm_halving_traced(f: &BooleanFunction) -> Result<(Certificate, Vec<HalvingStep>)> {
    if f.is_constant() {
        return Err(Error::ConstantInput);
    }
    let mut state = State::root(f);
    let mut constraints = Vec::new();
    let mut steps = Vec::new();
    let value = loop {
        if let Some(v) = state.g.constant_value() {
            break v;
        }
        match deg2(&state.g) {
            1 => {
                let anf = anf_of(&state.g);
                let s = anf.monomials().iter().fold(Mask::ZERO, |acc, m| if m.weight() == 1 { acc ^ *m } else { acc });
                let c = AffineConstraint { mask: s, bit: false };
                constraints.extend(lift_all(&state, &[c]));
                break anf.monomials().contains(&Mask::ZERO);
            }
            2 => {
                let (cs, v) = greedy_walk(state);
                constraints.extend(cs);
                break v;
            }
            _ => {}
        }
        let m = state.g.n();
        let (t, dg) = (1u64..1 << m)
            .map(|k| Mask(k.reverse_bits() >> (64 - m)))
            .find_map(|t| {
                let dg = derivative(&state.g, t).expect("non-zero direction");
                (!dg.is_constant()).then_some((t, dg))
            })
            .expect("a function of degree >= 2 has a non-constant derivative");
        let recursive = cert_norm_halving(&dg)?;
        let (g0, g1) = spectrum_split(&state.s, t)?;
        let l1 = state.s.l1_num();
        let b = if 2 * g0.l1_num() <= l1 {
            false
        } else if 2 * g1.l1_num() <= l1 {
            true
        } else {
            unreachable!("the two halves sum to the whole norm")
        };
        let h = derivative_certificate(&dg, &recursive, b);
        let lifted = lift_all(&state, &h);
        let next = state.restrict_all(&h);
        steps.push(HalvingStep {
            t: state.chart.lift(t),
            b,
            l1_before: l1,
            l1_half: if b { g1.l1_num() } else { g0.l1_num() },
            l1_after: next.s.l1_num(),
            constraints: lifted.clone(),
        });
        constraints.extend(lifted);
        state = next;
    };
    Ok((Certificate { n: f.n(), constraints, value }, steps))
}
