//! The four tree builders.
//!
//! Every node carries the restriction of f to the node's affine subspace in
//! local coordinates, its ±1 spectrum folded down from the root (so all
//! numerators share the denominator 2^n), and a [`Chart`] that lifts local
//! masks back to the original coordinates.

use crate::anf::deg2;
use crate::function::BooleanFunction;
use crate::gf2::{independent_subset, Mask};
use crate::restrict::{fold, restrict_affine, AffineConstraint, Chart};
use crate::spectrum::{butterfly, pm_spectrum, Spectrum};

use super::rank::{rank_exact_with, RankOptions};
use super::{Node, Pdt};

/// Largest local dimension the degree-reduce builder searches at.
pub const DEGREE_REDUCE_MAX_N: u32 = 12;
/// Codimension cap for the degree-reduce subspace search.
pub const DEGREE_REDUCE_MAX_CODIM: u32 = 4;
/// Node cap for one degree-reduce subspace search.
pub const DEGREE_REDUCE_NODE_BUDGET: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Strategy {
    GreedyL1,
    HeavyHitter,
    SpanQuery,
    DegreeReduce,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [Strategy::GreedyL1, Strategy::HeavyHitter, Strategy::SpanQuery, Strategy::DegreeReduce];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::GreedyL1 => "greedy-l1",
            Strategy::HeavyHitter => "heavy-hitter",
            Strategy::SpanQuery => "span-query",
            Strategy::DegreeReduce => "degree-reduce",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|x| x.name() == s)
    }
}

/// One internal node: the query, and ℓ0 / ℓ1 numerators of the ±1
/// spectrum before and in each child.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeRecord {
    /// Answers leading here, e.g. `"01"`; empty at the root.
    pub path: String,
    pub mask: Mask,
    pub l0_before: usize,
    pub l1_before: i64,
    pub l0_after: [usize; 2],
    pub l1_after: [i64; 2],
    /// p(t) for heavy-hitter nodes.
    pub pairs: Option<usize>,
}

/// One round of the degree-reduce builder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundRecord {
    pub path: String,
    pub degree: u32,
    /// Rank of the round's function; `None` when the search gave up.
    pub rank: Option<u32>,
    pub queries: Vec<Mask>,
    /// The subtree was built by span queries instead.
    pub fallback: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BuildTrace {
    /// ℓ1 values are `l1 / 2^denom_exp`.
    pub denom_exp: u32,
    pub nodes: Vec<NodeRecord>,
    pub rounds: Vec<RoundRecord>,
}

impl BuildTrace {
    /// ℓ0 and ℓ1 never increase from a node to its children.
    pub fn monotone(&self) -> bool {
        self.nodes.iter().all(|r| (0..2).all(|b| r.l0_after[b] <= r.l0_before && r.l1_after[b] <= r.l1_before))
    }
}

#[derive(Clone)]
pub(crate) struct State {
    pub chart: Chart,
    pub g: BooleanFunction,
    pub s: Spectrum<i64>,
}

impl State {
    pub fn root(f: &BooleanFunction) -> Self {
        Self { chart: Chart::identity(f.n()), g: f.clone(), s: pm_spectrum(f) }
    }

    pub fn child(&self, c: AffineConstraint) -> Self {
        let mut chart = self.chart.clone();
        chart.restrict(c);
        Self {
            chart,
            g: restrict_affine(&self.g, &[c]).expect("independent constraint"),
            s: fold(&self.s, c.mask, c.bit).expect("non-zero direction"),
        }
    }

    /// Applies local constraints one after another.
    pub fn restrict_all(&self, cs: &[AffineConstraint]) -> Self {
        let mut state = self.clone();
        let mut pending = cs.to_vec();
        while !pending.is_empty() {
            let c = pending.remove(0);
            state = state.child(c);
            for later in pending.iter_mut() {
                *later = crate::restrict::translate(c, *later);
            }
        }
        state
    }
}

/// β = α₁ ⊕ α₂ for the two largest-magnitude coefficients, ties broken by
/// lexicographic mask order; the lone character when ℓ0 = 1.
pub(crate) fn greedy_pair(s: &Spectrum<i64>) -> (Mask, Option<(i64, i64)>) {
    let n = s.n();
    let mut top: Vec<(&Mask, &i64)> = s.coeffs().iter().collect();
    top.sort_by_key(|(m, c)| (std::cmp::Reverse(c.abs()), m.lex_key(n)));
    match top.as_slice() {
        [(m, _)] => (**m, None),
        [(a, ca), (b, cb), ..] => (**a ^ **b, Some((**ca, **cb))),
        [] => unreachable!("empty ±1 spectrum"),
    }
}

/// p(t) for every t, as pair counts within the support.
fn pair_counts(s: &Spectrum<i64>) -> Vec<usize> {
    let len = 1usize << s.n();
    let support: Vec<usize> = s.support().map(|m| m.0 as usize).collect();
    let l0 = support.len();
    if (l0 * l0) / 2 <= len * (s.n() as usize + 1) {
        let mut counts = vec![0usize; len];
        for (i, &a) in support.iter().enumerate() {
            for &b in &support[i + 1..] {
                counts[a ^ b] += 1;
            }
        }
        counts
    } else {
        // ordered self-correlation of the support indicator
        let mut buf = vec![0i64; len];
        for &a in &support {
            buf[a] = 1;
        }
        butterfly(&mut buf);
        for v in buf.iter_mut() {
            *v *= *v;
        }
        butterfly(&mut buf);
        buf.iter().enumerate().map(|(t, &v)| if t == 0 { 0 } else { (v / len as i64 / 2) as usize }).collect()
    }
}

/// Heavy hitter of A + A with A the support: argmax p(t), ties lexicographic.
fn heavy_hitter(s: &Spectrum<i64>) -> (Mask, usize) {
    let n = s.n();
    if s.l0() == 1 {
        return (s.support().next().expect("non-empty"), 0);
    }
    let counts = pair_counts(s);
    let best = (1..counts.len())
        .max_by_key(|&t| (counts[t], std::cmp::Reverse(Mask(t as u64).lex_key(n))))
        .expect("n >= 1");
    (Mask(best as u64), counts[best])
}

struct Builder {
    trace: BuildTrace,
}

impl Builder {
    /// Emits an internal node querying original mask `mask`, which equals
    /// ⟨local, y⟩ ⊕ offset on the node's subspace.
    fn split(
        &mut self,
        state: &State,
        path: &str,
        mask: Mask,
        local: Mask,
        offset: bool,
        pairs: Option<usize>,
        mut recurse: impl FnMut(&mut Self, State, String) -> Node,
    ) -> Node {
        debug_assert!(!local.is_zero());
        let at = self.trace.nodes.len();
        self.trace.nodes.push(NodeRecord {
            path: path.to_string(),
            mask,
            l0_before: state.s.l0(),
            l1_before: state.s.l1_num(),
            l0_after: [0; 2],
            l1_after: [0; 2],
            pairs,
        });
        let mut children = Vec::with_capacity(2);
        for a in [false, true] {
            let child = state.child(AffineConstraint { mask: local, bit: a ^ offset });
            self.trace.nodes[at].l0_after[a as usize] = child.s.l0();
            self.trace.nodes[at].l1_after[a as usize] = child.s.l1_num();
            children.push(recurse(self, child, format!("{path}{}", a as u8)));
        }
        let one = children.pop().expect("two children");
        let zero = children.pop().expect("two children");
        Node::query(mask, zero, one)
    }

    fn greedy(&mut self, state: State, path: String) -> Node {
        if let Some(v) = state.g.constant_value() {
            return Node::Leaf(v);
        }
        let (beta, _) = greedy_pair(&state.s);
        let mask = state.chart.lift(beta);
        self.split(&state, &path, mask, beta, false, None, Self::greedy)
    }

    fn heavy(&mut self, state: State, path: String) -> Node {
        if let Some(v) = state.g.constant_value() {
            return Node::Leaf(v);
        }
        let (t, p) = heavy_hitter(&state.s);
        let mask = state.chart.lift(t);
        self.split(&state, &path, mask, t, false, Some(p), Self::heavy)
    }

    /// Full tree over the given original masks, in order.
    fn span(&mut self, state: State, path: String, queries: &[Mask]) -> Node {
        let Some((&first, rest)) = queries.split_first() else {
            return Node::Leaf(state.g.constant_value().expect("function is constant once the support span is fixed"));
        };
        let (local, offset) = state.chart.localize(first);
        self.split(&state, &path, first, local, offset, None, |b, s, p| b.span(s, p, rest))
    }

    fn degree_round(&mut self, state: State, path: String) -> Node {
        if let Some(v) = state.g.constant_value() {
            return Node::Leaf(v);
        }
        let degree = deg2(&state.g);
        let found = if state.g.n() <= DEGREE_REDUCE_MAX_N {
            let opts = RankOptions { max_codim: DEGREE_REDUCE_MAX_CODIM, node_budget: Some(DEGREE_REDUCE_NODE_BUDGET) };
            rank_exact_with(&state.g, opts).ok()
        } else {
            None
        };
        match found {
            Some(r) => {
                let queries: Vec<Mask> = r.witness.iter().map(|c| state.chart.lift(c.mask)).collect();
                self.trace.rounds.push(RoundRecord { path: path.clone(), degree, rank: Some(r.rank), queries: queries.clone(), fallback: false });
                self.expand(state, path, &queries)
            }
            None => {
                let queries = span_basis(&state);
                self.trace.rounds.push(RoundRecord { path: path.clone(), degree, rank: None, queries: queries.clone(), fallback: true });
                self.span(state, path, &queries)
            }
        }
    }

    fn expand(&mut self, state: State, path: String, queries: &[Mask]) -> Node {
        let Some((&first, rest)) = queries.split_first() else {
            return self.degree_round(state, path);
        };
        let (local, offset) = state.chart.localize(first);
        self.split(&state, &path, first, local, offset, None, |b, s, p| b.expand(s, p, rest))
    }
}

/// A basis of the span of the local support, lifted to original masks.
fn span_basis(state: &State) -> Vec<Mask> {
    let n = state.s.n();
    let mut support: Vec<Mask> = state.s.support().filter(|m| !m.is_zero()).collect();
    support.sort_by_key(|m| m.lex_key(n));
    independent_subset(&support).into_iter().map(|m| state.chart.lift(m)).collect()
}

fn run(f: &BooleanFunction, go: impl FnOnce(&mut Builder, State) -> Node) -> (Pdt, BuildTrace) {
    let mut b = Builder { trace: BuildTrace { denom_exp: f.n(), ..Default::default() } };
    let root = go(&mut b, State::root(f));
    (Pdt::new(f.n(), root), b.trace)
}

/// Folds along α₁ ⊕ α₂ of the two heaviest ±1 coefficients.
pub fn build_greedy_l1(f: &BooleanFunction) -> (Pdt, BuildTrace) {
    run(f, |b, s| b.greedy(s, String::new()))
}

/// Queries the most frequent difference of two support elements.
pub fn build_heavy_hitter(f: &BooleanFunction) -> (Pdt, BuildTrace) {
    run(f, |b, s| b.heavy(s, String::new()))
}

/// Full tree over a basis of the span of the support.
pub fn build_span_query(f: &BooleanFunction) -> (Pdt, BuildTrace) {
    run(f, |b, s| {
        let queries = span_basis(&s);
        b.span(s, String::new(), &queries)
    })
}

/// Rounds of degree-reducing subspace queries until the restriction is
/// constant.
pub fn build_degree_reduce(f: &BooleanFunction) -> (Pdt, BuildTrace) {
    run(f, |b, s| b.degree_round(s, String::new()))
}

pub fn build(f: &BooleanFunction, strategy: Strategy) -> (Pdt, BuildTrace) {
    match strategy {
        Strategy::GreedyL1 => build_greedy_l1(f),
        Strategy::HeavyHitter => build_heavy_hitter(f),
        Strategy::SpanQuery => build_span_query(f),
        Strategy::DegreeReduce => build_degree_reduce(f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::span_dim;
    use crate::pdt::{pdt_check, rank_exact};

    fn m(s: &str) -> Mask {
        Mask::parse_bitstring(s).unwrap().0
    }

    fn and2() -> BooleanFunction {
        BooleanFunction::from_fn(2, |x| x == 3)
    }

    fn ip4() -> BooleanFunction {
        BooleanFunction::from_fn(4, |x| (x & 3 == 3) ^ (x & 12 == 12))
    }

    fn random_poly(n: u32, seed: u64) -> BooleanFunction {
        crate::families::random_poly(n, 3.min(n), seed).unwrap()
    }

    #[test]
    fn greedy_examples() {
        let (t, trace) = build_greedy_l1(&and2());
        match t.root() {
            Node::Query { mask, children } => {
                assert_eq!(*mask, m("01"));
                assert_eq!(children[0], Node::Leaf(false));
            }
            Node::Leaf(_) => panic!("expected a query"),
        }
        assert_eq!(t.depth(), 2);
        assert!(pdt_check(&t, &and2()).correct);
        assert!(trace.monotone());

        let par = BooleanFunction::from_fn(3, |x| Mask(x).dot(m("101")));
        let (t, _) = build_greedy_l1(&par);
        assert_eq!(t, Pdt::new(3, Node::query(m("101"), Node::Leaf(false), Node::Leaf(true))));

        let (t, _) = build_greedy_l1(&ip4());
        assert!(pdt_check(&t, &ip4()).correct);

        assert_eq!(build_greedy_l1(&BooleanFunction::constant(3, true)).0, Pdt::leaf(3, true));
    }

    #[test]
    fn heavy_hitter_examples() {
        let (t, trace) = build_heavy_hitter(&and2());
        let root = &trace.nodes[0];
        assert_eq!((root.mask, root.pairs), (m("01"), Some(2)));
        assert!(root.l0_after.iter().all(|&l| l <= 2));
        assert!(pdt_check(&t, &and2()).correct);

        let single = BooleanFunction::from_fn(2, |x| Mask(x).dot(m("11")));
        assert_eq!(build_heavy_hitter(&single).0.depth(), 1);

        let f = random_poly(6, 1);
        let (t, trace) = build_heavy_hitter(&f);
        assert!(pdt_check(&t, &f).correct);
        for r in &trace.nodes {
            let p = r.pairs.unwrap();
            assert!(r.l0_after.iter().all(|&l| l + p <= r.l0_before), "{r:?}");
        }
    }

    #[test]
    fn pair_count_routes_agree() {
        for seed in 0..20 {
            let f = random_poly(6, seed);
            let s = pm_spectrum::<i64>(&f);
            let dense = pair_counts(&s);
            let support: Vec<u64> = s.support().map(|m| m.0).collect();
            for t in 1..64u64 {
                let direct = support.iter().filter(|&&a| support.contains(&(a ^ t)) && a < a ^ t).count();
                assert_eq!(dense[t as usize], direct);
            }
        }
    }

    #[test]
    fn span_query_examples() {
        let par = BooleanFunction::from_fn(3, |x| Mask(x).dot(m("011")));
        assert_eq!(build_span_query(&par).0.depth(), 1);
        let (t, _) = build_span_query(&and2());
        assert_eq!(t.depth(), 2);
        assert!(pdt_check(&t, &and2()).correct);
        for g in 0..16u64 {
            // f(x) = g(x1 ⊕ x2, x3)
            let f = BooleanFunction::from_fn(3, |x| {
                let a = (x & 1) ^ (x >> 1 & 1);
                g >> (a | (x >> 2 & 1) << 1) & 1 == 1
            });
            let (t, _) = build_span_query(&f);
            assert!(t.depth() <= 2 && pdt_check(&t, &f).correct);
            assert_eq!(t.depth() as usize, span_dim(&pm_spectrum::<i64>(&f).support().collect::<Vec<_>>()));
        }
    }

    #[test]
    fn degree_reduce_examples() {
        let (t, trace) = build_degree_reduce(&and2());
        assert_eq!(t.depth(), 2);
        assert!(pdt_check(&t, &and2()).correct);
        assert_eq!(trace.rounds[0].queries, vec![m("10")]);
        assert_eq!(trace.rounds[0].degree, 2);

        let (t, trace) = build_degree_reduce(&ip4());
        assert!(pdt_check(&t, &ip4()).correct);
        assert!(t.depth() <= 4);
        assert_eq!(trace.rounds[0].queries, vec![m("1000"), m("0010")]);
        for r in &trace.rounds {
            assert!(!r.fallback);
            assert_eq!(r.queries.len() as u32, r.rank.unwrap());
        }

        let par = BooleanFunction::from_fn(4, |x| Mask(x).dot(m("0110")));
        assert_eq!(build_degree_reduce(&par).0.depth(), 1);
    }

    #[test]
    fn all_builders_on_random_functions() {
        for seed in 0..30 {
            let n = 2 + (seed % 6) as u32;
            let f = random_poly(n, seed);
            for s in Strategy::ALL {
                let (t, trace) = build(&f, s);
                let c = pdt_check(&t, &f);
                assert!(c.correct && c.independent && c.sparsity_bound, "{s:?} {f:?}");
                assert!(trace.monotone());
                assert!(t.depth() <= n);
            }
            if !f.is_constant() {
                let (t, trace) = build_degree_reduce(&f);
                let d = deg2(&f);
                assert!(trace.rounds.iter().filter(|r| r.path.is_empty()).count() == 1);
                let max_rank = trace.rounds.iter().filter_map(|r| r.rank).max().unwrap_or(0);
                assert!(t.depth() <= d * max_rank.max(1));
                assert_eq!(trace.rounds[0].rank, Some(rank_exact(&f, 4).unwrap().rank));
            }
        }
    }
}
