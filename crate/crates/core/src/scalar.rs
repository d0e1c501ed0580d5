//! Scalar traits the exact routines are generic over.
//!
//! Spectra and integer matrices carry integer numerators. Machine integers
//! are fine at desk scale (`i64` holds every Walsh numerator for n <= 24),
//! arbitrary precision (`BigInt`) is the default everywhere the crate picks
//! a type on the caller's behalf.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Float, FromPrimitive, Signed, ToPrimitive};

/// Exact signed integer usable as a Fourier numerator or matrix entry.
pub trait Numerator:
    Clone + Debug + Display + Ord + Hash + Send + Sync + Signed + Integer + FromPrimitive + ToPrimitive
{
    /// `2^k` in this type.
    fn pow2(k: u32) -> Self {
        num_traits::pow(Self::from_u8(2).expect("2 is representable"), k as usize)
    }

    /// Largest `v` with `2^v | self`; `None` for zero.
    fn two_adic_valuation(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let two = Self::from_u8(2).expect("2 is representable");
        let mut v = 0;
        let mut x = self.abs();
        while x.is_even() {
            x = x / two.clone();
            v += 1;
        }
        Some(v)
    }
}

impl<T> Numerator for T where
    T: Clone
        + Debug
        + Display
        + Ord
        + Hash
        + Send
        + Sync
        + Signed
        + Integer
        + FromPrimitive
        + ToPrimitive
{
}

/// Floating-point type for the few genuinely real-valued quantities
/// (noise-operator norms, Chang bounds).
pub trait Real: Float + FromPrimitive + Debug + Display + Send + Sync {}

impl<T> Real for T where T: Float + FromPrimitive + Debug + Display + Send + Sync {}

/// Renders `num / 2^exp` in lowest terms as `"num/den"`.
pub fn dyadic_string<N: Numerator>(num: &N, exp: u32) -> String {
    let (n, e) = reduce_dyadic(num, exp);
    format!("{}/{}", n, BigInt::from(1u8) << e)
}

/// Cancels common factors of two from `num / 2^exp`.
pub fn reduce_dyadic<N: Numerator>(num: &N, exp: u32) -> (N, u32) {
    match num.two_adic_valuation() {
        None => (N::zero(), 0),
        Some(v) => {
            let k = v.min(exp);
            (num.clone() / N::pow2(k), exp - k)
        }
    }
}

/// Renders an arbitrary fraction as `"num/den"` in lowest terms.
pub fn ratio_string(num: u64, den: u64) -> String {
    if num == 0 {
        return "0/1".to_string();
    }
    let g = num.gcd(&den);
    format!("{}/{}", num / g, den / g)
}

/// Compares `a / 2^ea` with `b / 2^eb` exactly.
pub fn cmp_dyadic<N: Numerator>(a: &N, ea: u32, b: &N, eb: u32) -> std::cmp::Ordering {
    let e = ea.max(eb);
    let lhs = a.clone() * N::pow2(e - ea);
    let rhs = b.clone() * N::pow2(e - eb);
    lhs.cmp(&rhs)
}

/// `num / 2^exp` as a float (lossy).
pub fn dyadic_to_f64<N: Numerator>(num: &N, exp: u32) -> f64 {
    let (n, e) = reduce_dyadic(num, exp);
    let mut v = n.to_f64().unwrap_or(f64::NAN);
    // powi overflows for huge exponents long before any value here would
    for _ in 0..e / 1000 {
        v /= 2f64.powi(1000);
    }
    v / 2f64.powi((e % 1000) as i32)
}
