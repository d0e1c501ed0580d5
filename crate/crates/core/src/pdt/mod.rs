//! Parity decision trees, their builders, parity certificates, polynomial
//! rank and the subspace decomposition read off a tree.

mod build;
mod cert;
mod decompose;
mod rank;

pub use build::{
    build, build_degree_reduce, build_greedy_l1, build_heavy_hitter, build_span_query, BuildTrace, NodeRecord,
    RoundRecord, Strategy, DEGREE_REDUCE_MAX_CODIM, DEGREE_REDUCE_MAX_N, DEGREE_REDUCE_NODE_BUDGET,
};
pub use cert::{cert_greedy_l1, cert_norm_halving, cert_norm_halving_traced, Certificate, HalvingStep};
pub use decompose::{evaluate_terms, green_sanders_decompose, SignedSubspace};
pub use rank::{degree_reducing_subspace, rank_exact, rank_exact_with, top_form, RankOptions, RankResult};

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::BooleanFunction;
use crate::gf2::{Echelon, Mask};
use crate::restrict::AffineConstraint;
use crate::spectrum::pm_spectrum;

/// A node of a parity decision tree. Queries are in original coordinates;
/// `children[b]` is followed when ⟨query, x⟩ = b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Leaf(bool),
    Query { mask: Mask, children: Box<[Node; 2]> },
}

impl Node {
    pub fn query(mask: Mask, zero: Node, one: Node) -> Node {
        Node::Query { mask, children: Box::new([zero, one]) }
    }

    fn depth(&self) -> u32 {
        match self {
            Node::Leaf(_) => 0,
            Node::Query { children, .. } => 1 + children[0].depth().max(children[1].depth()),
        }
    }

    fn size(&self) -> usize {
        match self {
            Node::Leaf(_) => 1,
            Node::Query { children, .. } => 1 + children[0].size() + children[1].size(),
        }
    }
}

/// A parity decision tree on n variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pdt {
    n: u32,
    root: Node,
}

/// A leaf together with the affine subspace of inputs reaching it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafPath {
    pub constraints: Vec<AffineConstraint>,
    pub value: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdtCheck {
    pub correct: bool,
    pub depth: u32,
    pub size: usize,
    pub first_mismatch: Option<Mask>,
    /// ‖f̂±‖₀ ≤ 4^depth.
    pub sparsity_bound: bool,
    /// Every root-to-leaf query set is linearly independent.
    pub independent: bool,
}

impl Pdt {
    pub fn new(n: u32, root: Node) -> Self {
        Self { n, root }
    }

    pub fn leaf(n: u32, value: bool) -> Self {
        Self { n, root: Node::Leaf(value) }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn depth(&self) -> u32 {
        self.root.depth()
    }

    /// Number of nodes, internal and leaves.
    pub fn size(&self) -> usize {
        self.root.size()
    }

    pub fn eval(&self, x: Mask) -> bool {
        let mut node = &self.root;
        loop {
            match node {
                Node::Leaf(v) => return *v,
                Node::Query { mask, children } => node = &children[mask.dot(x) as usize],
            }
        }
    }

    /// Root-to-leaf paths in pre-order, 0-branch first.
    pub fn leaves(&self) -> Vec<LeafPath> {
        fn walk(node: &Node, path: &mut Vec<AffineConstraint>, out: &mut Vec<LeafPath>) {
            match node {
                Node::Leaf(v) => out.push(LeafPath { constraints: path.clone(), value: *v }),
                Node::Query { mask, children } => {
                    for b in [false, true] {
                        path.push(AffineConstraint { mask: *mask, bit: b });
                        walk(&children[b as usize], path, out);
                        path.pop();
                    }
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut Vec::new(), &mut out);
        out
    }

    pub fn paths_independent(&self) -> bool {
        self.leaves().iter().all(|leaf| {
            let mut e = Echelon::new();
            leaf.constraints.iter().all(|c| e.insert(c.mask))
        })
    }

    /// DOT rendering: nodes numbered in pre-order, internal nodes labelled by
    /// their query bitstring, edges by the answer bit.
    pub fn to_dot(&self) -> String {
        fn walk(node: &Node, n: u32, next: &mut usize, out: &mut String) -> usize {
            let id = *next;
            *next += 1;
            match node {
                Node::Leaf(v) => {
                    let _ = writeln!(out, "  n{id} [shape=box, label=\"{}\"];", *v as u8);
                }
                Node::Query { mask, children } => {
                    let _ = writeln!(out, "  n{id} [shape=ellipse, label=\"{}\"];", mask.to_bitstring(n));
                    for (b, child) in children.iter().enumerate() {
                        let cid = walk(child, n, next, out);
                        let _ = writeln!(out, "  n{id} -> n{cid} [label=\"{b}\"];");
                    }
                }
            }
            id
        }
        let mut out = String::from("digraph pdt {\n");
        walk(&self.root, self.n, &mut 0, &mut out);
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> PdtJson {
        fn conv(node: &Node, n: u32) -> NodeJson {
            match node {
                Node::Leaf(v) => NodeJson::Leaf { leaf: *v as u8 },
                Node::Query { mask, children } => NodeJson::Query {
                    query: mask.to_bitstring(n),
                    zero: Box::new(conv(&children[0], n)),
                    one: Box::new(conv(&children[1], n)),
                },
            }
        }
        PdtJson { n: self.n, depth: self.depth(), root: conv(&self.root, self.n) }
    }

    pub fn from_json(json: &PdtJson) -> Result<Self> {
        fn conv(node: &NodeJson, n: u32) -> Result<Node> {
            match node {
                NodeJson::Leaf { leaf: 0 } => Ok(Node::Leaf(false)),
                NodeJson::Leaf { leaf: 1 } => Ok(Node::Leaf(true)),
                NodeJson::Leaf { leaf } => Err(Error::InvalidTree(format!("leaf value {leaf} is not 0 or 1"))),
                NodeJson::Query { query, zero, one } => {
                    let (mask, len) = Mask::parse_bitstring(query)?;
                    if len != n {
                        return Err(Error::InvalidTree(format!("query {query:?} has {len} bits, expected {n}")));
                    }
                    if mask.is_zero() {
                        return Err(Error::InvalidTree("zero query mask".into()));
                    }
                    Ok(Node::query(mask, conv(zero, n)?, conv(one, n)?))
                }
            }
        }
        Ok(Self { n: json.n, root: conv(&json.root, json.n)? })
    }
}

/// JSON mirror of a [`Pdt`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdtJson {
    pub n: u32,
    #[serde(default)]
    pub depth: u32,
    pub root: NodeJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NodeJson {
    Leaf { leaf: u8 },
    Query { query: String, zero: Box<NodeJson>, one: Box<NodeJson> },
}

pub fn pdt_eval(t: &Pdt, x: Mask) -> bool {
    t.eval(x)
}

/// Exhaustive comparison of a tree with f.
pub fn pdt_check(t: &Pdt, f: &BooleanFunction) -> PdtCheck {
    let depth = t.depth();
    let first_mismatch = if t.n() == f.n() { (0..f.len()).map(Mask).find(|&x| t.eval(x) != f.eval(x.0)) } else { Some(Mask::ZERO) };
    let l0 = pm_spectrum::<i64>(f).l0() as u128;
    let sparsity_bound = depth >= 64 || l0 <= 1u128 << (2 * depth);
    PdtCheck {
        correct: first_mismatch.is_none(),
        depth,
        size: t.size(),
        first_mismatch,
        sparsity_bound,
        independent: t.paths_independent(),
    }
}
