//! XOR functions F(x, y) = f(x ⊕ y): communication matrices, exact rank, and
//! the two-party protocol obtained from a parity decision tree.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::function::BooleanFunction;
use crate::gf2::Mask;
use crate::pdt::{Node, Pdt};
use crate::scalar::Numerator;

/// Largest n accepted by [`xor_matrix`].
pub const XOR_MATRIX_MAX_N: u32 = 10;
/// Largest n accepted by [`verify_protocol`].
pub const PROTOCOL_MAX_N: u32 = 8;

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix<N = BigInt> {
    rows: usize,
    cols: usize,
    data: Vec<N>,
}

impl<N: Numerator> IntMatrix<N> {
    pub fn new(rows: usize, cols: usize, data: Vec<N>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::TableLength { got: data.len(), expected: rows * cols });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> N) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &N {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[N] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
}

/// M[x][y] = f(x ⊕ y), rows and columns indexed by the integer encoding.
pub fn xor_matrix<N: Numerator>(f: &BooleanFunction) -> Result<IntMatrix<N>> {
    if f.n() > XOR_MATRIX_MAX_N {
        return Err(Error::TooLarge(format!("xor matrix needs n <= {XOR_MATRIX_MAX_N}, got {}", f.n())));
    }
    let len = f.len() as usize;
    Ok(IntMatrix::from_fn(len, len, |x, y| if f.eval((x ^ y) as u64) { N::one() } else { N::zero() }))
}

/// Rank over the rationals by Bareiss' fraction-free elimination; every
/// division is exact.
pub fn matrix_rank_bareiss<N: Numerator>(m: &IntMatrix<N>) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<N>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut prev = N::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                row[j] = (pivot_row[c].clone() * row[j].clone() - lead.clone() * pivot_row[j].clone()) / prev.clone();
            }
            row[c] = N::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

fn primitive(row: &mut [i64]) {
    let g = row.iter().fold(0i64, |g, v| g.gcd(v));
    if g > 1 {
        for v in row.iter_mut() {
            *v /= g;
        }
    }
}

/// Integer elimination that keeps every row primitive, in machine words;
/// `None` on overflow.
fn rank_primitive_i64(m: &IntMatrix<impl Numerator>) -> Option<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<i64>> = Vec::with_capacity(rows);
    for i in 0..rows {
        a.push(m.row(i).iter().map(|v| v.to_i64()).collect::<Option<Vec<_>>>()?);
    }
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pc = pivot_row[c];
        for row in rest.iter_mut() {
            let lead = row[c];
            if lead == 0 {
                continue;
            }
            let g = pc.gcd(&lead);
            let (s, t) = (pc / g, lead / g);
            for j in c..cols {
                row[j] = s.checked_mul(row[j])?.checked_sub(t.checked_mul(pivot_row[j])?)?;
            }
            primitive(&mut row[c + 1..]);
        }
        r += 1;
    }
    Some(r)
}

/// Exact rank over the rationals. Elimination runs on primitive rows in
/// machine integers and restarts with Bareiss on big integers if any entry
/// would overflow.
pub fn matrix_rank_exact<N: Numerator>(m: &IntMatrix<N>) -> usize {
    if let Some(r) = rank_primitive_i64(m) {
        return r;
    }
    let big = IntMatrix::<BigInt>::from_fn(m.rows, m.cols, |i, j| m.get(i, j).to_string().parse().expect("integer"));
    matrix_rank_bareiss(&big)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Round {
    pub mask: Mask,
    pub alice_bit: bool,
    pub bob_bit: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    pub rounds: Vec<Round>,
    pub output: bool,
    pub cost_bits: usize,
}

/// Alice holds x, Bob holds y; at each query both announce their parity and
/// the tree branches on the XOR.
pub fn simulate_protocol(t: &Pdt, x: Mask, y: Mask) -> Transcript {
    let mut rounds = Vec::new();
    let mut node = t.root();
    loop {
        match node {
            Node::Leaf(v) => {
                let cost_bits = 2 * rounds.len();
                return Transcript { rounds, output: *v, cost_bits };
            }
            Node::Query { mask, children } => {
                let (a, b) = (mask.dot(x), mask.dot(y));
                rounds.push(Round { mask: *mask, alice_bit: a, bob_bit: b });
                node = &children[(a ^ b) as usize];
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProtocolCheck {
    pub correct: bool,
    pub max_cost: usize,
}

/// Runs the protocol on all 4^n input pairs.
pub fn verify_protocol(t: &Pdt, f: &BooleanFunction) -> Result<ProtocolCheck> {
    if f.n() > PROTOCOL_MAX_N {
        return Err(Error::TooLarge(format!("protocol sweep needs n <= {PROTOCOL_MAX_N}, got {}", f.n())));
    }
    if t.n() != f.n() {
        return Err(Error::DimensionMismatch { left: t.n(), right: f.n() });
    }
    let mut correct = true;
    let mut max_cost = 0;
    for x in 0..f.len() {
        for y in 0..f.len() {
            let tr = simulate_protocol(t, Mask(x), Mask(y));
            correct &= tr.output == f.eval(x ^ y);
            max_cost = max_cost.max(tr.cost_bits);
        }
    }
    Ok(ProtocolCheck { correct, max_cost })
}
