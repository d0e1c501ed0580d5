//! Bit-packed linear algebra over GF(2).
//!
//! A [`Mask`] packs an n-bit vector into one machine word with x₁ at bit 0.
//! Written out as text, masks read x₁x₂…xₙ from left to right, so the
//! integer `0b01` with n = 2 prints as `"10"`.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, BitXorAssign};

use rand::Rng;

use crate::error::{Error, Result};
use crate::function::BooleanFunction;

/// Largest dimension a [`Mask`] can carry.
pub const MASK_BITS: u32 = 64;

/// An n-bit vector over GF(2); bit `i` holds coordinate x_{i+1}.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mask(pub u64);

impl Mask {
    pub const ZERO: Mask = Mask(0);

    /// The standard basis vector for the zero-based coordinate `i`.
    #[inline]
    pub fn unit(i: u32) -> Mask {
        Mask(1u64 << i)
    }

    /// All-ones vector of length `n`.
    #[inline]
    pub fn full(n: u32) -> Mask {
        if n >= 64 {
            Mask(u64::MAX)
        } else {
            Mask((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn bit(self, i: u32) -> bool {
        (self.0 >> i) & 1 == 1
    }

    #[inline]
    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }

    /// ⟨s, t⟩ = parity of popcount(s AND t).
    #[inline]
    pub fn dot(self, other: Mask) -> bool {
        (self.0 & other.0).count_ones() & 1 == 1
    }

    /// Index of the lowest set bit, i.e. the first coordinate in x₁…xₙ order.
    #[inline]
    pub fn pivot(self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros())
        }
    }

    /// Whether every set bit lies below position `n`.
    #[inline]
    pub fn fits(self, n: u32) -> bool {
        n >= 64 || self.0 >> n == 0
    }

    /// Deletes bit `p` and shifts the higher bits down by one.
    #[inline]
    pub fn remove_bit(self, p: u32) -> Mask {
        let low = self.0 & ((1u64 << p) - 1);
        let high = if p + 1 >= 64 { 0 } else { (self.0 >> (p + 1)) << p };
        Mask(low | high)
    }

    /// Inverse of [`Mask::remove_bit`]: opens a gap at `p` holding `value`.
    #[inline]
    pub fn insert_bit(self, p: u32, value: bool) -> Mask {
        let low = self.0 & ((1u64 << p) - 1);
        let high = (self.0 >> p) << (p + 1);
        Mask(low | high | ((value as u64) << p))
    }

    /// Sort key realising lexicographic order on the x₁…xₙ bitstring.
    #[inline]
    pub fn lex_key(self, n: u32) -> u64 {
        if n == 0 {
            return 0;
        }
        self.0.reverse_bits() >> (64 - n)
    }

    /// The bitstring x₁x₂…xₙ.
    pub fn to_bitstring(self, n: u32) -> String {
        (0..n).map(|i| if self.bit(i) { '1' } else { '0' }).collect()
    }

    /// Parses a bitstring written x₁x₂…xₙ; the dimension is its length.
    pub fn parse_bitstring(s: &str) -> Result<(Mask, u32)> {
        if s.len() > MASK_BITS as usize {
            return Err(Error::Parse { pos: MASK_BITS as usize, msg: "mask longer than 64 bits".into() });
        }
        let mut m = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => m |= 1 << i,
                _ => return Err(Error::Parse { pos: i, msg: format!("expected '0' or '1', found {c:?}") }),
            }
        }
        Ok((Mask(m), s.len() as u32))
    }
}

impl fmt::Debug for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mask({:#b})", self.0)
    }
}

impl BitXor for Mask {
    type Output = Mask;
    #[inline]
    fn bitxor(self, rhs: Mask) -> Mask {
        Mask(self.0 ^ rhs.0)
    }
}

impl BitXorAssign for Mask {
    #[inline]
    fn bitxor_assign(&mut self, rhs: Mask) {
        self.0 ^= rhs.0;
    }
}

impl BitAnd for Mask {
    type Output = Mask;
    #[inline]
    fn bitand(self, rhs: Mask) -> Mask {
        Mask(self.0 & rhs.0)
    }
}

impl BitOr for Mask {
    type Output = Mask;
    #[inline]
    fn bitor(self, rhs: Mask) -> Mask {
        Mask(self.0 | rhs.0)
    }
}

/// Incrementally maintained echelon basis; pivots are lowest set bits.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    // sorted by pivot; no vector has a bit below its pivot
    rows: Vec<Mask>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; zero iff `v` is in the span.
    pub fn reduce(&self, mut v: Mask) -> Mask {
        for &r in &self.rows {
            let p = r.0.trailing_zeros();
            if v.bit(p) {
                v ^= r;
            }
        }
        v
    }

    /// Adds `v` if independent; returns whether it was.
    pub fn insert(&mut self, v: Mask) -> bool {
        let r = self.reduce(v);
        if r.is_zero() {
            return false;
        }
        let p = r.0.trailing_zeros();
        let at = self.rows.partition_point(|x| x.0.trailing_zeros() < p);
        self.rows.insert(at, r);
        true
    }

    pub fn contains(&self, v: Mask) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn pivots(&self) -> impl Iterator<Item = u32> + '_ {
        self.rows.iter().map(|r| r.0.trailing_zeros())
    }

    /// The basis in fully reduced form (no pivot bit appears in another row).
    pub fn reduced_rows(&self) -> Vec<Mask> {
        let mut rows = self.rows.clone();
        for i in (0..rows.len()).rev() {
            let p = rows[i].0.trailing_zeros();
            for j in 0..i {
                if rows[j].bit(p) {
                    let r = rows[i];
                    rows[j] ^= r;
                }
            }
        }
        rows
    }
}

/// A matrix over GF(2) with one packed word per row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    ncols: u32,
    rows: Vec<Mask>,
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|r| r.to_bitstring(self.ncols)).collect();
        f.debug_struct("Gf2Matrix").field("ncols", &self.ncols).field("rows", &rows).finish()
    }
}

impl Gf2Matrix {
    pub fn new(ncols: u32, rows: Vec<Mask>) -> Result<Self> {
        if ncols > MASK_BITS {
            return Err(Error::TooLarge(format!("{ncols} columns")));
        }
        if let Some(r) = rows.iter().find(|r| !r.fits(ncols)) {
            return Err(Error::DimensionMismatch { left: 64 - r.0.leading_zeros(), right: ncols });
        }
        Ok(Self { ncols, rows })
    }

    pub fn identity(n: u32) -> Self {
        Self { ncols: n, rows: (0..n).map(Mask::unit).collect() }
    }

    pub fn zero(nrows: usize, ncols: u32) -> Self {
        Self { ncols, rows: vec![Mask::ZERO; nrows] }
    }

    pub fn ncols(&self) -> u32 {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Mask] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: u32) -> bool {
        self.rows[i].bit(j)
    }

    pub fn set(&mut self, i: usize, j: u32, v: bool) {
        if v {
            self.rows[i].0 |= 1 << j;
        } else {
            self.rows[i].0 &= !(1 << j);
        }
    }

    /// Rank by word-parallel Gaussian elimination on a private copy.
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.ncols {
            let Some(p) = (rank..rows.len()).find(|&i| rows[i].bit(col)) else { continue };
            rows.swap(rank, p);
            let pivot = rows[rank];
            for r in rows.iter_mut().skip(rank + 1) {
                if r.bit(col) {
                    *r ^= pivot;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.ncols as usize, self.rows.len() as u32);
        for (i, r) in self.rows.iter().enumerate() {
            for j in 0..self.ncols {
                if r.bit(j) {
                    t.rows[j as usize].0 |= 1 << i;
                }
            }
        }
        t
    }

    /// The product `M · x`; bit `i` of the result is ⟨row_i, x⟩.
    #[inline]
    pub fn mul_vec(&self, x: Mask) -> Mask {
        let mut out = 0u64;
        for (i, r) in self.rows.iter().enumerate() {
            out |= (r.dot(x) as u64) << i;
        }
        Mask(out)
    }

    /// The product `x^T · M`, i.e. the XOR of the rows selected by `x`.
    #[inline]
    pub fn combine_rows(&self, x: Mask) -> Mask {
        let mut out = Mask::ZERO;
        let mut bits = x.0;
        while bits != 0 {
            let i = bits.trailing_zeros();
            out ^= self.rows[i as usize];
            bits &= bits - 1;
        }
        out
    }

    pub fn mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.ncols as usize != other.rows.len() {
            return Err(Error::DimensionMismatch { left: self.ncols, right: other.rows.len() as u32 });
        }
        let rows = self.rows.iter().map(|&r| other.combine_rows(r)).collect();
        Ok(Gf2Matrix { ncols: other.ncols, rows })
    }

    pub fn is_identity(&self) -> bool {
        self.rows.len() == self.ncols as usize && self.rows.iter().enumerate().all(|(i, r)| *r == Mask::unit(i as u32))
    }

    /// Gauss–Jordan inverse of a square matrix; `None` when singular.
    pub fn inverse(&self) -> Option<Gf2Matrix> {
        let n = self.ncols as usize;
        if self.rows.len() != n {
            return None;
        }
        let mut a = self.rows.clone();
        let mut inv: Vec<Mask> = (0..n as u32).map(Mask::unit).collect();
        for col in 0..n {
            let p = (col..n).find(|&i| a[i].bit(col as u32))?;
            a.swap(col, p);
            inv.swap(col, p);
            for i in 0..n {
                if i != col && a[i].bit(col as u32) {
                    let (ac, ic) = (a[col], inv[col]);
                    a[i] ^= ac;
                    inv[i] ^= ic;
                }
            }
        }
        Some(Gf2Matrix { ncols: self.ncols, rows: inv })
    }
}

/// Rank over GF(2).
pub fn gf2_rank(m: &Gf2Matrix) -> usize {
    m.rank()
}

/// Dimension of the GF(2)-span of `vectors`.
pub fn span_dim<'a>(vectors: impl IntoIterator<Item = &'a Mask>) -> usize {
    let mut e = Echelon::new();
    for &v in vectors {
        e.insert(v);
    }
    e.dim()
}

/// Greedily selects, in iteration order, a maximal independent subset.
pub fn independent_subset<'a>(vectors: impl IntoIterator<Item = &'a Mask>) -> Vec<Mask> {
    let mut e = Echelon::new();
    vectors.into_iter().copied().filter(|&v| e.insert(v)).collect()
}

/// Basis of {x : ⟨v, x⟩ = 0 for every v} in reduced echelon form, rows
/// sorted by their integer value.
pub fn orthogonal_complement<'a>(vectors: impl IntoIterator<Item = &'a Mask>, n: u32) -> Vec<Mask> {
    let mut e = Echelon::new();
    for &v in vectors {
        e.insert(v);
    }
    let rows = e.reduced_rows();
    let pivots: Vec<u32> = rows.iter().map(|r| r.0.trailing_zeros()).collect();
    let mut out = Echelon::new();
    for j in (0..n).filter(|j| !pivots.contains(j)) {
        let mut w = Mask::unit(j);
        for (r, &p) in rows.iter().zip(&pivots) {
            if r.bit(j) {
                w ^= Mask::unit(p);
            }
        }
        out.insert(w);
    }
    let mut basis = out.reduced_rows();
    basis.sort();
    basis
}

/// An invertible linear change of variables with its inverse cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    forward: Gf2Matrix,
    inverse: Gf2Matrix,
}

impl LinearMap {
    pub fn new(forward: Gf2Matrix) -> Result<Self> {
        let inverse = forward.inverse().ok_or(Error::DependentInput)?;
        Ok(Self { forward, inverse })
    }

    pub fn identity(n: u32) -> Self {
        Self { forward: Gf2Matrix::identity(n), inverse: Gf2Matrix::identity(n) }
    }

    /// A uniformly random invertible map drawn by rejection.
    pub fn random<R: Rng + ?Sized>(n: u32, rng: &mut R) -> Self {
        loop {
            let rows = (0..n).map(|_| Mask(rng.gen::<u64>()) & Mask::full(n)).collect();
            let m = Gf2Matrix { ncols: n, rows };
            if let Ok(map) = Self::new(m) {
                return map;
            }
        }
    }

    pub fn dim(&self) -> u32 {
        self.forward.ncols
    }

    pub fn forward(&self) -> &Gf2Matrix {
        &self.forward
    }

    pub fn inverse(&self) -> &Gf2Matrix {
        &self.inverse
    }

    #[inline]
    pub fn apply(&self, x: Mask) -> Mask {
        self.forward.mul_vec(x)
    }
}

/// Extends independent vectors to a basis: the input rows first, then the
/// standard vectors at every non-pivot position in increasing order.
pub fn complete_basis(vectors: &[Mask], n: u32) -> Result<LinearMap> {
    let mut e = Echelon::new();
    for &v in vectors {
        if !v.fits(n) {
            return Err(Error::DimensionMismatch { left: 64 - v.0.leading_zeros(), right: n });
        }
        if !e.insert(v) {
            return Err(Error::DependentInput);
        }
    }
    let pivots: Vec<u32> = e.pivots().collect();
    let mut rows = vectors.to_vec();
    rows.extend((0..n).filter(|j| !pivots.contains(j)).map(Mask::unit));
    LinearMap::new(Gf2Matrix::new(n, rows)?)
}

/// The function x ↦ f(Lx).
pub fn apply_linear(f: &BooleanFunction, map: &LinearMap) -> Result<BooleanFunction> {
    if f.n() != map.dim() {
        return Err(Error::DimensionMismatch { left: f.n(), right: map.dim() });
    }
    Ok(BooleanFunction::from_fn(f.n(), |x| f.eval(map.apply(Mask(x)).0)))
}
