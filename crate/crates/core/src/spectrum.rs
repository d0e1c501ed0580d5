//! Exact Fourier spectra over the characters χ_s(x) = (−1)^⟨s,x⟩.
//!
//! Coefficients are dyadic rationals stored as integer numerators over a
//! shared denominator 2^k. Only non-zero numerators are kept.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::function::BooleanFunction;
use crate::gf2::Mask;
use crate::scalar::{cmp_dyadic, dyadic_string, Numerator};

/// Sparse Fourier spectrum; coefficient at `s` is `coeffs[s] / 2^denom_exp`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Spectrum<N = BigInt> {
    n: u32,
    denom_exp: u32,
    coeffs: BTreeMap<Mask, N>,
}

/// Norms and granularity of a spectrum, all in numerator units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralStats<N = BigInt> {
    pub l0: usize,
    /// Σ|num|; the exact ℓ1 norm is `l1_num / 2^denom_exp`.
    pub l1_num: N,
    pub linf_num: N,
    pub granularity: u32,
    pub denom_exp: u32,
}

impl<N: Numerator> SpectralStats<N> {
    pub fn l1_string(&self) -> String {
        dyadic_string(&self.l1_num, self.denom_exp)
    }

    /// ⌊log₂ ℓ0⌋ − 1 for ℓ0 ≥ 2.
    pub fn granularity_bound(&self) -> Option<u32> {
        (self.l0 >= 2).then(|| self.l0.ilog2() - 1)
    }
}

impl<N: Numerator> Spectrum<N> {
    /// Builds a spectrum, discarding zero numerators.
    pub fn new(n: u32, denom_exp: u32, coeffs: impl IntoIterator<Item = (Mask, N)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (s, c) in coeffs {
            if !s.fits(n) {
                return Err(Error::DimensionMismatch { left: 64 - s.0.leading_zeros(), right: n });
            }
            if !c.is_zero() {
                map.insert(s, c);
            }
        }
        Ok(Self { n, denom_exp, coeffs: map })
    }

    pub(crate) fn from_map(n: u32, denom_exp: u32, mut coeffs: BTreeMap<Mask, N>) -> Self {
        coeffs.retain(|_, c| !c.is_zero());
        Self { n, denom_exp, coeffs }
    }

    pub fn zero(n: u32, denom_exp: u32) -> Self {
        Self { n, denom_exp, coeffs: BTreeMap::new() }
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn denom_exp(&self) -> u32 {
        self.denom_exp
    }

    pub fn coeffs(&self) -> &BTreeMap<Mask, N> {
        &self.coeffs
    }

    pub fn get(&self, s: Mask) -> N {
        self.coeffs.get(&s).cloned().unwrap_or_else(N::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = Mask> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn l0(&self) -> usize {
        self.coeffs.len()
    }

    pub fn l1_num(&self) -> N {
        self.coeffs.values().fold(N::zero(), |acc, c| acc + c.abs())
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// ℓ0, ℓ1, ℓ∞ and granularity (0 for the empty spectrum).
    pub fn stats(&self) -> SpectralStats<N> {
        let l1_num = self.l1_num();
        let linf_num = self.coeffs.values().map(|c| c.abs()).max().unwrap_or_else(N::zero);
        let gcd = self.coeffs.values().fold(N::zero(), |g, c| g.gcd(c));
        let granularity = match gcd.two_adic_valuation() {
            None => 0,
            Some(v) => self.denom_exp.saturating_sub(v),
        };
        SpectralStats { l0: self.coeffs.len(), l1_num, linf_num, granularity, denom_exp: self.denom_exp }
    }

    /// Coefficient-wise equality of values, ignoring how denominators are written.
    pub fn same_values(&self, other: &Spectrum<N>) -> bool {
        self.n == other.n
            && self.coeffs.len() == other.coeffs.len()
            && self.coeffs.iter().zip(&other.coeffs).all(|((s, a), (t, b))| {
                s == t && cmp_dyadic(a, self.denom_exp, b, other.denom_exp) == std::cmp::Ordering::Equal
            })
    }

    /// Re-expresses every numerator in another integer type.
    pub fn convert<M: Numerator>(&self) -> Spectrum<M> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(s, c)| (*s, M::from_i128(c.to_i128().expect("numerator fits i128")).expect("numerator fits target")))
            .collect();
        Spectrum { n: self.n, denom_exp: self.denom_exp, coeffs }
    }

    /// Coefficient strings `mask -> "num/den"` for reporting.
    pub fn to_strings(&self) -> BTreeMap<String, String> {
        self.coeffs.iter().map(|(s, c)| (s.to_bitstring(self.n), dyadic_string(c, self.denom_exp))).collect()
    }
}

/// Unnormalised Walsh–Hadamard butterfly on a dense buffer of length 2^n.
pub(crate) fn butterfly<T>(buf: &mut [T])
where
    T: Clone + std::ops::Add<Output = T> + std::ops::Sub<Output = T>,
{
    let len = buf.len();
    let mut h = 1;
    while h < len {
        for block in (0..len).step_by(2 * h) {
            for i in block..block + h {
                let a = buf[i].clone();
                let b = buf[i + h].clone();
                buf[i] = a.clone() + b.clone();
                buf[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

fn dense_transform(f: &BooleanFunction, value: impl Fn(bool) -> i32) -> Vec<i32> {
    let mut buf: Vec<i32> = f.iter().map(value).collect();
    butterfly(&mut buf);
    buf
}

fn collect<N: Numerator>(n: u32, buf: &[i32]) -> Spectrum<N> {
    let coeffs = buf
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != 0)
        .map(|(s, v)| (Mask(s as u64), N::from_i32(*v).expect("numerator")))
        .collect();
    Spectrum { n, denom_exp: n, coeffs }
}

/// Fourier spectrum of f in its {0,1} range, at denominator 2^n.
pub fn wht<N: Numerator>(f: &BooleanFunction) -> Spectrum<N> {
    collect(f.n(), &dense_transform(f, |b| b as i32))
}

/// Fourier spectrum of f± = 1 − 2f, at denominator 2^n.
pub fn pm_spectrum<N: Numerator>(f: &BooleanFunction) -> Spectrum<N> {
    collect(f.n(), &dense_transform(f, |b| if b { -1 } else { 1 }))
}

/// Reconstructs the {0,1}-valued function whose spectrum is `s`.
pub fn inverse_wht<N: Numerator>(s: &Spectrum<N>) -> Result<BooleanFunction> {
    if s.denom_exp != s.n {
        return Err(Error::DimensionMismatch { left: s.denom_exp, right: s.n });
    }
    let mut buf = vec![N::zero(); 1usize << s.n];
    for (m, c) in &s.coeffs {
        buf[m.0 as usize] = c.clone();
    }
    butterfly(&mut buf);
    let full = N::pow2(s.n);
    let mut f = BooleanFunction::constant(s.n, false);
    for (x, v) in buf.iter().enumerate() {
        if *v == full {
            f.set(x as u64, true);
        } else if !v.is_zero() {
            return Err(Error::NotBoolean { x: x as u64, value: dyadic_string(v, s.n) });
        }
    }
    Ok(f)
}

/// Spectrum of f± from the spectrum of f: δ_{s,0} − 2 f̂(s).
pub fn to_pm_spectrum<N: Numerator>(s: &Spectrum<N>) -> Spectrum<N> {
    let two = N::from_u8(2).expect("2");
    let mut coeffs: BTreeMap<Mask, N> = s.coeffs.iter().map(|(m, c)| (*m, -(two.clone() * c.clone()))).collect();
    let zero = coeffs.entry(Mask::ZERO).or_insert_with(N::zero);
    *zero = zero.clone() + N::pow2(s.denom_exp);
    Spectrum::from_map(s.n, s.denom_exp, coeffs)
}

/// Spectrum of the pointwise product: (fg)^(s) = Σ_t f̂(t) ĝ(s+t).
pub fn pointwise_product<N: Numerator>(f: &Spectrum<N>, g: &Spectrum<N>) -> Result<Spectrum<N>> {
    if f.n != g.n {
        return Err(Error::DimensionMismatch { left: f.n, right: g.n });
    }
    let mut acc: BTreeMap<Mask, N> = BTreeMap::new();
    for (t, a) in &f.coeffs {
        for (u, b) in &g.coeffs {
            let e = acc.entry(*t ^ *u).or_insert_with(N::zero);
            *e = e.clone() + a.clone() * b.clone();
        }
    }
    Ok(Spectrum::from_map(f.n, f.denom_exp + g.denom_exp, acc))
}

/// Convenience: ℓ-stats of f's {0,1} spectrum.
pub fn spectral_stats<N: Numerator>(s: &Spectrum<N>) -> SpectralStats<N> {
    s.stats()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(s: &str) -> Mask {
        Mask::parse_bitstring(s).unwrap().0
    }

    fn and2() -> BooleanFunction {
        BooleanFunction::from_fn(2, |x| x == 3)
    }

    /// Direct evaluation of 2^n f̂(s) = Σ_x f(x) χ_s(x).
    fn defining_sum(f: &BooleanFunction, s: Mask) -> i64 {
        (0..f.len()).map(|x| if f.eval(x) { if s.dot(Mask(x)) { -1 } else { 1 } } else { 0 }).sum()
    }

    #[test]
    fn wht_examples() {
        let s = wht::<i64>(&and2());
        assert_eq!(s.denom_exp(), 2);
        for (mask, v) in [("00", 1), ("01", -1), ("10", -1), ("11", 1)] {
            assert_eq!(s.get(m(mask)), v);
            assert_eq!(defining_sum(&and2(), m(mask)), v);
        }
        assert!(wht::<i64>(&BooleanFunction::constant(3, false)).is_empty());
        let x1 = BooleanFunction::from_fn(1, |x| x == 1);
        let s = wht::<BigInt>(&x1);
        assert_eq!(s.get(m("0")), BigInt::from(1));
        assert_eq!(s.get(m("1")), BigInt::from(-1));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse_wht(&wht::<i64>(&and2())).unwrap(), and2());
        let one = Spectrum::new(3, 3, [(Mask::ZERO, 8i64)]).unwrap();
        assert_eq!(inverse_wht(&one).unwrap(), BooleanFunction::constant(3, true));
        let quarter = Spectrum::new(2, 2, [(Mask::ZERO, 1i64)]).unwrap();
        assert!(matches!(inverse_wht(&quarter), Err(Error::NotBoolean { .. })));
    }

    #[test]
    fn pm_examples() {
        let pm = to_pm_spectrum(&wht::<i64>(&and2()));
        for (mask, v) in [("00", 2), ("01", 2), ("10", 2), ("11", -2)] {
            assert_eq!(pm.get(m(mask)), v);
        }
        assert_eq!(pm, pm_spectrum(&and2()));
        let c0 = to_pm_spectrum(&wht::<i64>(&BooleanFunction::constant(3, false)));
        assert_eq!(c0.coeffs().iter().collect::<Vec<_>>(), vec![(&Mask::ZERO, &8)]);
        let par = BooleanFunction::from_fn(3, |x| Mask(x).dot(m("101")));
        let p = to_pm_spectrum(&wht::<i64>(&par));
        assert_eq!(p.l0(), 1);
        assert_eq!(p.get(m("101")), 8);
    }

    #[test]
    fn stats_examples() {
        let ip4 = BooleanFunction::from_fn(4, |x| ((x & 1) & (x >> 1 & 1)) ^ ((x >> 2 & 1) & (x >> 3 & 1)) == 1);
        let st = pm_spectrum::<BigInt>(&ip4).stats();
        assert_eq!(st.l0, 16);
        assert_eq!(st.l1_string(), "4/1");
        assert_eq!(st.granularity, 2);
        assert_eq!(st.granularity_bound(), Some(3));

        let one = pm_spectrum::<i64>(&BooleanFunction::constant(2, false)).stats();
        assert_eq!((one.l0, one.l1_string(), one.granularity), (1, "1/1".into(), 0));

        let a = wht::<i64>(&and2()).stats();
        assert_eq!((a.l0, a.l1_string(), a.granularity), (4, "1/1".into(), 2));

        let empty = Spectrum::<i64>::zero(3, 3).stats();
        assert_eq!((empty.l0, empty.l1_num, empty.granularity), (0, 0, 0));
    }

    #[test]
    fn product_examples() {
        let pm = pm_spectrum::<i64>(&and2());
        let sq = pointwise_product(&pm, &pm).unwrap();
        assert_eq!(sq.denom_exp(), 4);
        assert_eq!(sq.coeffs().iter().collect::<Vec<_>>(), vec![(&Mask::ZERO, &16)]);

        let chi = |s: &str| Spectrum::new(3, 0, [(m(s), 1i64)]).unwrap();
        assert_eq!(pointwise_product(&chi("110"), &chi("011")).unwrap(), chi("101"));
        assert!(pointwise_product(&chi("110"), &Spectrum::<i64>::zero(2, 0)).is_err());
    }

    fn arb_function(max_n: u32) -> impl Strategy<Value = BooleanFunction> {
        (0..=max_n).prop_flat_map(|n| {
            prop::collection::vec(any::<bool>(), 1usize << n).prop_map(move |t| BooleanFunction::from_bits(n, &t).unwrap())
        })
    }

    fn arb_pair(max_n: u32) -> impl Strategy<Value = (BooleanFunction, BooleanFunction)> {
        (0..=max_n).prop_flat_map(|n| {
            let table = move || prop::collection::vec(any::<bool>(), 1usize << n);
            (table(), table()).prop_map(move |(a, b)| (BooleanFunction::from_bits(n, &a).unwrap(), BooleanFunction::from_bits(n, &b).unwrap()))
        })
    }

    proptest! {
        #[test]
        fn round_trip(f in arb_function(8)) {
            prop_assert_eq!(inverse_wht(&wht::<BigInt>(&f)).unwrap(), f);
        }

        #[test]
        fn parseval_in_numerator_units(f in arb_function(8)) {
            let s = wht::<i64>(&f);
            let lhs: i64 = s.coeffs().values().map(|c| c * c).sum();
            prop_assert_eq!(lhs, (f.len() as i64) * f.count_ones() as i64);
        }

        #[test]
        fn transform_matches_defining_sum(f in arb_function(5)) {
            let s = wht::<i64>(&f);
            for x in 0..f.len() {
                prop_assert_eq!(s.get(Mask(x)), defining_sum(&f, Mask(x)));
            }
        }

        #[test]
        fn boolean_autocorrelation(f in arb_function(6)) {
            let pm = pm_spectrum::<BigInt>(&f);
            let sq = pointwise_product(&pm, &pm).unwrap();
            prop_assert_eq!(sq.l0(), 1);
            prop_assert_eq!(sq.get(Mask::ZERO), BigInt::pow2(2 * f.n()));
        }

        #[test]
        fn l1_l0_and_granularity(f in arb_function(8)) {
            let s = wht::<BigInt>(&f);
            let st = s.stats();
            prop_assert!(st.l1_num.clone() * st.l1_num.clone() <= BigInt::from(st.l0) * BigInt::pow2(2 * st.denom_exp));
            let pst = to_pm_spectrum(&s).stats();
            if let Some(b) = pst.granularity_bound() {
                prop_assert!(pst.granularity <= b);
            }
        }

        #[test]
        fn range_switch_sandwich(f in arb_function(7)) {
            let s = wht::<BigInt>(&f).stats();
            let p = pm_spectrum::<BigInt>(&f).stats();
            let k = BigInt::pow2(f.n());
            let two = BigInt::from(2);
            prop_assert!(two.clone() * s.l1_num.clone() - k.clone() <= p.l1_num);
            prop_assert!(p.l1_num <= two * s.l1_num + k);
            prop_assert!(s.l0 <= p.l0 + 1 && p.l0 <= s.l0 + 1);
        }

        #[test]
        fn product_norm_bounds((f, g) in arb_pair(5)) {
            let (a, b) = (wht::<BigInt>(&f), wht::<BigInt>(&g));
            let fg = BooleanFunction::from_fn(f.n(), |x| f.eval(x) && g.eval(x));
            let p = pointwise_product(&a, &b).unwrap();
            prop_assert!(p.same_values(&wht::<BigInt>(&fg)));
            prop_assert!(p.l0() <= a.l0() * b.l0());
            prop_assert!(p.l1_num() <= a.l1_num() * b.l1_num());
        }
    }
}
