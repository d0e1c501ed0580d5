//! Algebraic normal form over GF(2).

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::function::BooleanFunction;
use crate::gf2::{Gf2Matrix, Mask};

/// A GF(2) polynomial as a set of monomials; mask `m` is Π_{i ∈ m} x_i and
/// the empty mask is the constant 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Anf {
    n: u32,
    monomials: BTreeSet<Mask>,
}

impl Anf {
    /// Sums the given monomials over GF(2); repeated terms cancel.
    pub fn new(n: u32, monomials: impl IntoIterator<Item = Mask>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for m in monomials {
            if !m.fits(n) {
                return Err(Error::DimensionMismatch { left: 64 - m.0.leading_zeros(), right: n });
            }
            if !set.insert(m) {
                set.remove(&m);
            }
        }
        Ok(Self { n, monomials: set })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn monomials(&self) -> &BTreeSet<Mask> {
        &self.monomials
    }

    /// Largest monomial weight; 0 for constants.
    pub fn degree(&self) -> u32 {
        self.monomials.iter().map(|m| m.weight()).max().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> bool {
        self.monomials.iter().filter(|m| m.0 & x == m.0).count() % 2 == 1
    }

    /// Symmetric zero-diagonal matrix with A[i][j] = 1 iff x_i·x_j is a
    /// monomial. Only the quadratic part is read.
    pub fn dickson_matrix(&self) -> Gf2Matrix {
        let mut a = Gf2Matrix::zero(self.n as usize, self.n);
        for m in self.monomials.iter().filter(|m| m.weight() == 2) {
            let i = m.0.trailing_zeros();
            let j = 63 - m.0.leading_zeros();
            a.set(i as usize, j, true);
            a.set(j as usize, i, true);
        }
        a
    }

    /// Tabulates the polynomial by the inverse Möbius transform.
    pub fn to_function(&self) -> BooleanFunction {
        let mut table = BooleanFunction::constant(self.n, false);
        for m in &self.monomials {
            table.set(m.0, true);
        }
        mobius(&mut table);
        table
    }
}

impl fmt::Display for Anf {
    /// Writes `x1*x2+x3`, `1` for the constant term, `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<Mask> = self.monomials.iter().copied().collect();
        terms.sort_by_key(|m| (m.weight(), m.lex_key(self.n).wrapping_neg()));
        let rendered: Vec<String> = terms
            .iter()
            .map(|m| {
                if m.is_zero() {
                    "1".to_string()
                } else {
                    (0..self.n).filter(|&i| m.bit(i)).map(|i| format!("x{}", i + 1)).collect::<Vec<_>>().join("*")
                }
            })
            .collect();
        write!(f, "{}", rendered.join("+"))
    }
}

/// The Möbius transform over GF(2) is an involution on truth tables.
fn mobius(f: &mut BooleanFunction) {
    let n = f.n();
    for i in 0..n {
        let bit = 1u64 << i;
        for x in 0..f.len() {
            if x & bit != 0 && f.eval(x ^ bit) {
                let v = f.eval(x);
                f.set(x, !v);
            }
        }
    }
}

pub fn anf_of(f: &BooleanFunction) -> Anf {
    let mut t = f.clone();
    mobius(&mut t);
    let monomials = (0..t.len()).filter(|&x| t.eval(x)).map(Mask).collect();
    Anf { n: f.n(), monomials }
}

pub fn deg2(f: &BooleanFunction) -> u32 {
    anf_of(f).degree()
}
