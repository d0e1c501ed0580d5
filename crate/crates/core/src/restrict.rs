//! Restrictions to affine subspaces, spectral folding and derivatives.
//!
//! Restricting to ⟨t, x⟩ = b eliminates the coordinate p at the lowest set
//! bit of t: the remaining coordinates keep their order and
//! x_p = b ⊕ Σ_{j≠p} t_j x_j. On the Fourier side this merges each pair
//! {σ, σ ⊕ t} with σ_p = 0 into the coefficient at σ with bit p deleted.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::function::BooleanFunction;
use crate::gf2::{Echelon, Mask};
use crate::scalar::Numerator;
use crate::spectrum::Spectrum;

/// The hyperplane ⟨mask, x⟩ = bit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct AffineConstraint {
    pub mask: Mask,
    pub bit: bool,
}

impl AffineConstraint {
    pub fn new(mask: Mask, bit: bool) -> Result<Self> {
        if mask.is_zero() {
            return Err(Error::ZeroDirection);
        }
        Ok(Self { mask, bit })
    }

    pub fn holds(&self, x: Mask) -> bool {
        self.mask.dot(x) == self.bit
    }

    /// `"1000=0"`.
    pub fn display(&self, n: u32) -> String {
        format!("{}={}", self.mask.to_bitstring(n), self.bit as u8)
    }

    /// Parses `"1000=0"`; returns the constraint and the bitstring length.
    pub fn parse(s: &str) -> Result<(Self, u32)> {
        let (mask, bit) = s.split_once('=').ok_or(Error::Parse { pos: 0, msg: format!("expected MASK=BIT, found {s:?}") })?;
        let (m, n) = Mask::parse_bitstring(mask)?;
        let bit = match bit {
            "0" => false,
            "1" => true,
            _ => return Err(Error::Parse { pos: mask.len() + 1, msg: "bit must be 0 or 1".into() }),
        };
        Ok((Self::new(m, bit)?, n))
    }
}

impl fmt::Display for AffineConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{:?},x⟩={}", self.mask, self.bit as u8)
    }
}

/// Rewrites `later` in the coordinates left after eliminating `first`.
pub(crate) fn translate(first: AffineConstraint, later: AffineConstraint) -> AffineConstraint {
    let p = first.mask.pivot().expect("non-zero constraint");
    let hit = later.mask.bit(p);
    let mask = if hit { later.mask ^ first.mask } else { later.mask };
    AffineConstraint { mask: mask.remove_bit(p), bit: later.bit ^ (hit && first.bit) }
}

fn restrict_one(f: &BooleanFunction, c: AffineConstraint) -> BooleanFunction {
    let p = c.mask.pivot().expect("non-zero constraint");
    let rest = c.mask.remove_bit(p);
    BooleanFunction::from_fn(f.n() - 1, |y| {
        let xp = c.bit ^ rest.dot(Mask(y));
        f.eval(Mask(y).insert_bit(p, xp).0)
    })
}

/// Merges the pairs {σ, σ⊕t} with sign (−1)^b into an (n−1)-dimensional
/// spectrum at the same denominator.
pub fn fold<N: Numerator>(s: &Spectrum<N>, t: Mask, b: bool) -> Result<Spectrum<N>> {
    if t.is_zero() {
        return Err(Error::ZeroDirection);
    }
    if !t.fits(s.n()) {
        return Err(Error::DimensionMismatch { left: 64 - t.0.leading_zeros(), right: s.n() });
    }
    let p = t.pivot().expect("non-zero");
    let mut out: BTreeMap<Mask, N> = BTreeMap::new();
    for (sigma, c) in s.coeffs() {
        let (rep, c) = if sigma.bit(p) {
            (*sigma ^ t, if b { -c.clone() } else { c.clone() })
        } else {
            (*sigma, c.clone())
        };
        let e = out.entry(rep.remove_bit(p)).or_insert_with(N::zero);
        *e = e.clone() + c;
    }
    Ok(Spectrum::from_map(s.n() - 1, s.denom_exp(), out))
}

/// Restricts f to the affine subspace cut out by `constraints`, one
/// elimination per constraint in order.
pub fn restrict_affine(f: &BooleanFunction, constraints: &[AffineConstraint]) -> Result<BooleanFunction> {
    let mut echelon = Echelon::new();
    for c in constraints {
        if !c.mask.fits(f.n()) {
            return Err(Error::DimensionMismatch { left: 64 - c.mask.0.leading_zeros(), right: f.n() });
        }
        if c.mask.is_zero() || !echelon.insert(c.mask) {
            return Err(Error::DependentConstraints);
        }
    }
    let mut g = f.clone();
    let mut pending = constraints.to_vec();
    while !pending.is_empty() {
        let c = pending.remove(0);
        g = restrict_one(&g, c);
        for later in pending.iter_mut() {
            *later = translate(c, *later);
        }
    }
    Ok(g)
}

/// Applies the same eliminations as [`restrict_affine`] to a spectrum.
pub fn fold_all<N: Numerator>(s: &Spectrum<N>, constraints: &[AffineConstraint]) -> Result<Spectrum<N>> {
    let mut out = s.clone();
    let mut pending = constraints.to_vec();
    while !pending.is_empty() {
        let c = pending.remove(0);
        if c.mask.is_zero() {
            return Err(Error::DependentConstraints);
        }
        out = fold(&out, c.mask, c.bit)?;
        for later in pending.iter_mut() {
            *later = translate(c, *later);
        }
    }
    Ok(out)
}

/// Δ_t f(x) = f(x) ⊕ f(x ⊕ t).
pub fn derivative(f: &BooleanFunction, t: Mask) -> Result<BooleanFunction> {
    if t.is_zero() {
        return Err(Error::ZeroDirection);
    }
    if !t.fits(f.n()) {
        return Err(Error::DimensionMismatch { left: 64 - t.0.leading_zeros(), right: f.n() });
    }
    Ok(BooleanFunction::from_fn(f.n(), |x| f.eval(x) ^ f.eval(x ^ t.0)))
}

/// Splits a spectrum into the coefficients on t^⊥ and the rest.
pub fn spectrum_split<N: Numerator>(s: &Spectrum<N>, t: Mask) -> Result<(Spectrum<N>, Spectrum<N>)> {
    if t.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let (mut g0, mut g1) = (BTreeMap::new(), BTreeMap::new());
    for (m, c) in s.coeffs() {
        if m.dot(t) {
            g1.insert(*m, c.clone());
        } else {
            g0.insert(*m, c.clone());
        }
    }
    Ok((Spectrum::from_map(s.n(), s.denom_exp(), g0), Spectrum::from_map(s.n(), s.denom_exp(), g1)))
}

/// Tracks a sequence of eliminations so local masks can be moved to and
/// from the original coordinates.
///
/// After restricting with the constraints of this module, local coordinate
/// y_j is exactly the original coordinate x_{coords[j]}, so a local linear
/// form lifts to the original space by scattering its bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    n: u32,
    coords: Vec<u32>,
    // local constraints in the order they were applied
    history: Vec<AffineConstraint>,
}

impl Chart {
    pub fn identity(n: u32) -> Self {
        Self { n, coords: (0..n).collect(), history: Vec::new() }
    }

    /// Ambient (original) dimension.
    pub fn ambient(&self) -> u32 {
        self.n
    }

    /// Current local dimension.
    pub fn dim(&self) -> u32 {
        self.coords.len() as u32
    }

    pub fn lift(&self, local: Mask) -> Mask {
        let mut out = 0u64;
        for (j, &c) in self.coords.iter().enumerate() {
            if local.bit(j as u32) {
                out |= 1 << c;
            }
        }
        Mask(out)
    }

    /// The original point with local coordinates `y`.
    pub fn embed(&self, y: Mask) -> Mask {
        let mut x = y;
        for c in self.history.iter().rev() {
            let p = c.mask.pivot().expect("non-zero constraint");
            let rest = c.mask.remove_bit(p);
            x = x.insert_bit(p, c.bit ^ rest.dot(x));
        }
        x
    }

    /// Writes ⟨l, x⟩ on the current subspace as ⟨u, y⟩ ⊕ c.
    pub fn localize(&self, l: Mask) -> (Mask, bool) {
        let c = l.dot(self.embed(Mask::ZERO));
        let mut u = 0u64;
        for j in 0..self.dim() {
            if l.dot(self.embed(Mask::unit(j))) != c {
                u |= 1 << j;
            }
        }
        (Mask(u), c)
    }

    /// Records the restriction by the local constraint `c`.
    pub fn restrict(&mut self, c: AffineConstraint) {
        let p = c.mask.pivot().expect("non-zero constraint");
        self.coords.remove(p as usize);
        self.history.push(c);
    }
}
