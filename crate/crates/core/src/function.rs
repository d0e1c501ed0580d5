use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::ratio_string;

/// Default ceiling on the number of variables.
pub const N_MAX: u32 = 24;

/// A Boolean function f: {0,1}^n → {0,1} stored as a packed truth table.
///
/// Entry `x` of the table is f(x₁,…,xₙ) with x₁ the least-significant bit
/// of `x`. The range is always {0,1}; the ±1 view is derived on demand.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    n: u32,
    words: Vec<u64>,
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n <= 6 {
            let bits: String = (0..self.len()).map(|x| if self.eval(x) { '1' } else { '0' }).collect();
            write!(f, "BooleanFunction(n={}, {})", self.n, bits)
        } else {
            write!(f, "BooleanFunction(n={}, hex={})", self.n, self.to_hex())
        }
    }
}

impl BooleanFunction {
    fn words_for(n: u32) -> usize {
        (1usize << n).div_ceil(64)
    }

    fn check_n(n: u32) -> Result<()> {
        if n > N_MAX {
            Err(Error::TooManyVariables { n, max: N_MAX })
        } else {
            Ok(())
        }
    }

    pub fn constant(n: u32, value: bool) -> Self {
        Self::from_fn(n, |_| value)
    }

    /// Tabulates `f` over all 2^n inputs. Panics if n > [`N_MAX`].
    pub fn from_fn(n: u32, f: impl Fn(u64) -> bool) -> Self {
        Self::check_n(n).expect("variable count");
        let mut words = vec![0u64; Self::words_for(n)];
        for x in 0..(1u64 << n) {
            if f(x) {
                words[(x / 64) as usize] |= 1 << (x % 64);
            }
        }
        Self { n, words }
    }

    pub fn from_bits(n: u32, table: &[bool]) -> Result<Self> {
        Self::check_n(n)?;
        if table.len() != 1usize << n {
            return Err(Error::TableLength { got: table.len(), expected: 1 << n });
        }
        Ok(Self::from_fn(n, |x| table[x as usize]))
    }

    /// Parses the hex encoding used on the command line: bit `i` of the
    /// hexadecimal number is f(i). Exactly ⌈2^n / 4⌉ digits are required and
    /// any padding bits above 2^n must be zero.
    pub fn from_hex(n: u32, hex: &str) -> Result<Self> {
        Self::check_n(n)?;
        let len = 1usize << n;
        let digits = len.div_ceil(4);
        if hex.len() != digits {
            return Err(Error::Parse { pos: 0, msg: format!("expected {digits} hex digits for n = {n}, found {}", hex.len()) });
        }
        let mut words = vec![0u64; Self::words_for(n)];
        for (pos, c) in hex.chars().enumerate() {
            let d = c.to_digit(16).ok_or_else(|| Error::Parse { pos, msg: format!("invalid hex digit {c:?}") })? as usize;
            // the last character holds bits 0..4
            let base = 4 * (digits - 1 - pos);
            for b in 0..4 {
                if d >> b & 1 == 1 {
                    let x = base + b;
                    if x >= len {
                        return Err(Error::Parse { pos, msg: "padding bits must be zero".into() });
                    }
                    words[x / 64] |= 1 << (x % 64);
                }
            }
        }
        Ok(Self { n, words })
    }

    pub fn to_hex(&self) -> String {
        let len = self.len() as usize;
        let digits = len.div_ceil(4);
        (0..digits)
            .rev()
            .map(|d| {
                let v = (0..4).filter(|&b| 4 * d + b < len && self.eval((4 * d + b) as u64)).fold(0, |acc, b| acc | 1 << b);
                char::from_digit(v, 16).expect("nibble")
            })
            .collect()
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// 2^n.
    #[inline]
    pub fn len(&self) -> u64 {
        1u64 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn eval(&self, x: u64) -> bool {
        (self.words[(x / 64) as usize] >> (x % 64)) & 1 == 1
    }

    /// f±(x) = 1 − 2 f(x).
    #[inline]
    pub fn eval_pm(&self, x: u64) -> i64 {
        if self.eval(x) {
            -1
        } else {
            1
        }
    }

    pub fn set(&mut self, x: u64, v: bool) {
        let w = &mut self.words[(x / 64) as usize];
        if v {
            *w |= 1 << (x % 64);
        } else {
            *w &= !(1 << (x % 64));
        }
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// The common value if f is constant.
    pub fn constant_value(&self) -> Option<bool> {
        let ones = self.count_ones();
        if ones == 0 {
            Some(false)
        } else if ones == self.len() {
            Some(true)
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    /// ρ₁ = |f⁻¹(1)| / 2^n as a reduced fraction string.
    pub fn density_string(&self) -> String {
        ratio_string(self.count_ones(), self.len())
    }

    pub fn density(&self) -> f64 {
        self.count_ones() as f64 / self.len() as f64
    }

    pub fn not(&self) -> Self {
        Self::from_fn(self.n, |x| !self.eval(x))
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(Self { n: self.n, words: self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect() })
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(move |x| self.eval(x))
    }
}
