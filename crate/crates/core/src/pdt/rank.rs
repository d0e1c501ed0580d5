//! Exact polynomial rank by subspace search.
//!
//! For f of degree d the d-th derivative D(v₁,…,v_d) = Δ_{v₁}⋯Δ_{v_d} f is a
//! constant, alternating and multilinear in the directions. On a coset a + V
//! the degree drops below d exactly when D vanishes on V, whatever the shift
//! a. So the minimum codimension of a degree-dropping affine subspace is
//! n minus the largest dimension of a subspace on which D vanishes, and the
//! search runs over linear subspaces only.
//!
//! Subspaces are visited once each through their reduced echelon bases
//! (pivot = lowest set bit, rows added in decreasing pivot order). Fixing
//! d−1 basis vectors turns D into a linear form in the last argument, so the
//! admissible next vectors always form a linear space.

use crate::anf::deg2;
use crate::error::{Error, Result};
use crate::function::BooleanFunction;
use crate::gf2::{orthogonal_complement, Echelon, Mask};
use crate::restrict::AffineConstraint;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankOptions {
    pub max_codim: u32,
    /// Cap on visited search nodes; `None` searches exhaustively.
    pub node_budget: Option<u64>,
}

impl Default for RankOptions {
    fn default() -> Self {
        Self { max_codim: 4, node_budget: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankResult {
    pub rank: u32,
    /// Independent constraints, all with bit 0, cutting out a subspace on
    /// which the degree drops; it drops on every other coset too.
    pub witness: Vec<AffineConstraint>,
    pub degree: u32,
    pub nodes: u64,
}

/// D(v₁,…,v_d) = ⊕_{T ⊆ [d]} f(Σ_{i∈T} vᵢ).
pub fn top_form(f: &BooleanFunction, vs: &[Mask]) -> bool {
    let mut acc = false;
    let mut sum = Mask::ZERO;
    // Gray-code walk over subsets
    for i in 0u64..(1 << vs.len()) {
        if i > 0 {
            sum ^= vs[i.trailing_zeros() as usize];
        }
        acc ^= f.eval(sum.0);
    }
    acc
}

/// The linear form w ↦ D(S, w) for |S| = d − 1.
fn partial_form(f: &BooleanFunction, s: &[Mask]) -> Mask {
    let sums: Vec<u64> = (0u64..(1 << s.len()))
        .map(|t| (0..s.len()).filter(|i| t >> i & 1 == 1).fold(0, |acc, i| acc ^ s[i].0))
        .collect();
    let mut out = 0u64;
    for j in 0..f.n() {
        let e = 1u64 << j;
        let v = sums.iter().fold(false, |acc, &x| acc ^ f.eval(x) ^ f.eval(x ^ e));
        if v {
            out |= e;
        }
    }
    Mask(out)
}

fn subsets(items: &[Mask], k: usize, f: &mut dyn FnMut(&[Mask])) {
    fn go(items: &[Mask], k: usize, start: usize, cur: &mut Vec<Mask>, f: &mut dyn FnMut(&[Mask])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, k, i + 1, cur, f);
            cur.pop();
        }
    }
    go(items, k, 0, &mut Vec::with_capacity(k), f);
}

struct Search<'a> {
    f: &'a BooleanFunction,
    n: u32,
    d: usize,
    target: usize,
    nodes: u64,
    budget: Option<u64>,
}

enum Outcome {
    Found(Vec<Mask>),
    Exhausted,
    OverBudget,
}

impl Search<'_> {
    fn run(&mut self, basis: &mut Vec<Mask>, forms: &Echelon, below: u32) -> Outcome {
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            return Outcome::OverBudget;
        }
        if basis.len() == self.target {
            return Outcome::Found(basis.clone());
        }
        // admissible vectors: in every form's kernel and zero at earlier pivots
        let mut blockers: Vec<Mask> = forms.reduced_rows();
        blockers.extend(basis.iter().map(|v| Mask::unit(v.0.trailing_zeros())));
        let mut free = Echelon::new();
        for w in orthogonal_complement(&blockers, self.n) {
            free.insert(w);
        }
        let rows = free.reduced_rows();
        let room = rows.iter().filter(|r| r.0.trailing_zeros() < below).count();
        if basis.len() + room < self.target {
            return Outcome::Exhausted;
        }
        let mut order: Vec<Mask> = rows.clone();
        order.sort_by_key(|r| std::cmp::Reverse(r.0.trailing_zeros()));
        for head in order.iter().filter(|r| r.0.trailing_zeros() < below) {
            let q = head.0.trailing_zeros();
            let higher: Vec<Mask> = rows.iter().copied().filter(|r| r.0.trailing_zeros() > q).collect();
            for combo in 0u64..(1 << higher.len()) {
                let w = (0..higher.len()).filter(|i| combo >> i & 1 == 1).fold(*head, |acc, i| acc ^ higher[i]);
                let mut child_forms = forms.clone();
                if self.d >= 2 && basis.len() + 1 >= self.d - 1 {
                    let mut with_w = Vec::with_capacity(self.d - 1);
                    subsets(basis, self.d - 2, &mut |s| {
                        with_w.clear();
                        with_w.extend_from_slice(s);
                        with_w.push(w);
                        child_forms.insert(partial_form(self.f, &with_w));
                    });
                }
                basis.push(w);
                let out = self.run(basis, &child_forms, q);
                basis.pop();
                match out {
                    Outcome::Exhausted => {}
                    other => return other,
                }
            }
        }
        Outcome::Exhausted
    }
}

fn witness_from(v: &[Mask], n: u32) -> Vec<AffineConstraint> {
    orthogonal_complement(v, n).into_iter().map(|mask| AffineConstraint { mask, bit: false }).collect()
}

/// Minimum codimension of an affine subspace on which deg₂ drops.
pub fn rank_exact(f: &BooleanFunction, max_codim: u32) -> Result<RankResult> {
    rank_exact_with(f, RankOptions { max_codim, node_budget: None })
}

pub fn rank_exact_with(f: &BooleanFunction, opts: RankOptions) -> Result<RankResult> {
    if f.is_constant() {
        return Err(Error::ConstantInput);
    }
    let n = f.n();
    let d = deg2(f) as usize;
    let mut nodes = 0;
    for k in 1..=opts.max_codim.min(n) {
        let m = (n - k) as usize;
        if m < d {
            // any m-dimensional subspace is too small to carry a degree-d form
            let v: Vec<Mask> = (k..n).map(Mask::unit).collect();
            return Ok(RankResult { rank: k, witness: witness_from(&v, n), degree: d as u32, nodes });
        }
        let mut forms = Echelon::new();
        if d == 1 {
            forms.insert(partial_form(f, &[]));
        }
        let mut search = Search { f, n, d, target: m, nodes: 0, budget: opts.node_budget.map(|b| b.saturating_sub(nodes)) };
        let out = search.run(&mut Vec::new(), &forms, n);
        nodes += search.nodes;
        match out {
            Outcome::Found(v) => return Ok(RankResult { rank: k, witness: witness_from(&v, n), degree: d as u32, nodes }),
            Outcome::OverBudget => return Err(Error::NotFound { max_codim: k }),
            Outcome::Exhausted => {}
        }
    }
    Err(Error::NotFound { max_codim: opts.max_codim })
}

/// Linear forms ℓ₁,…,ℓ_r, r = rank, such that deg₂ drops on all 2^r
/// cosets {⟨ℓᵢ, x⟩ = aᵢ}.
pub fn degree_reducing_subspace(f: &BooleanFunction, max_codim: u32) -> Result<Vec<Mask>> {
    Ok(rank_exact(f, max_codim)?.witness.into_iter().map(|c| c.mask).collect())
}
