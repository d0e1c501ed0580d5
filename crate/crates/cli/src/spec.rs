//! Function specifications on the command line.
//!
//! ```text
//! tt:<n>:<hex>        truth table; bit i of the hex number is f(i)
//! anf:<n>:<poly>      e.g. anf:3:x1*x2+x3+1, or anf:3:0
//! family:<spec>       e.g. family:bent_ip(4), family:random_poly(6,3,1)
//! ```
//!
//! The hex string has exactly ⌈2^n/4⌉ digits, most significant first; for
//! n < 2 the unused high bits of the single digit must be zero.

use logrank::families::FamilySpec;
use logrank::{Anf, BooleanFunction, Error, Mask, N_MAX};

/// A parse failure with a character offset into the whole argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecError {
    pub pos: usize,
    pub msg: String,
}

impl std::fmt::Display for SpecError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "at position {}: {}", self.pos, self.msg)
    }
}

fn err(pos: usize, msg: impl Into<String>) -> SpecError {
    SpecError { pos, msg: msg.into() }
}

fn shift(e: Error, offset: usize) -> SpecError {
    match e {
        Error::Parse { pos, msg } => err(offset + pos, msg),
        other => err(offset, other.to_string()),
    }
}

fn parse_n(s: &str, offset: usize) -> Result<u32, SpecError> {
    let n: u32 = s.parse().map_err(|_| err(offset, format!("expected a variable count, found {s:?}")))?;
    if n > N_MAX {
        return Err(err(offset, format!("n = {n} exceeds the maximum {N_MAX}")));
    }
    Ok(n)
}

/// Splits `<n>:<body>` that follows a prefix of length `offset`.
fn split_n(rest: &str, offset: usize) -> Result<(u32, &str, usize), SpecError> {
    let colon = rest.find(':').ok_or_else(|| err(offset + rest.len(), "expected ':' after the variable count"))?;
    let n = parse_n(&rest[..colon], offset)?;
    Ok((n, &rest[colon + 1..], offset + colon + 1))
}

pub fn parse_function(s: &str) -> Result<BooleanFunction, SpecError> {
    if let Some(rest) = s.strip_prefix("tt:") {
        let (n, hex, at) = split_n(rest, 3)?;
        BooleanFunction::from_hex(n, hex).map_err(|e| shift(e, at))
    } else if let Some(rest) = s.strip_prefix("anf:") {
        let (n, poly, at) = split_n(rest, 4)?;
        Ok(parse_anf(n, poly, at)?.to_function())
    } else if let Some(rest) = s.strip_prefix("family:") {
        let spec: FamilySpec = rest.parse().map_err(|e: Error| shift(e, 7))?;
        spec.generate().map_err(|e| shift(e, 7))
    } else {
        Err(err(0, "expected tt:, anf: or family: prefix"))
    }
}

/// Terms joined by `+`; a term is `1`, `0` (alone) or `x<i>` factors joined
/// by `*`, with 1 ≤ i ≤ n.
pub fn parse_anf(n: u32, poly: &str, offset: usize) -> Result<Anf, SpecError> {
    if poly == "0" {
        return Anf::new(n, []).map_err(|e| shift(e, offset));
    }
    let mut monomials = Vec::new();
    let mut pos = offset;
    for term in poly.split('+') {
        if term.is_empty() {
            return Err(err(pos, "empty term"));
        }
        let mut m = Mask::ZERO;
        if term != "1" {
            let mut fpos = pos;
            for factor in term.split('*') {
                let idx = factor
                    .strip_prefix('x')
                    .and_then(|d| d.parse::<u32>().ok())
                    .ok_or_else(|| err(fpos, format!("expected a factor x<i>, found {factor:?}")))?;
                if idx == 0 || idx > n {
                    return Err(err(fpos, format!("variable x{idx} is outside x1..x{n}")));
                }
                m = m | Mask::unit(idx - 1);
                fpos += factor.len() + 1;
            }
        }
        monomials.push(m);
        pos += term.len() + 1;
    }
    Anf::new(n, monomials).map_err(|e| shift(e, offset))
}

/// A bitstring x₁…xₙ of exactly n characters.
pub fn parse_bits(s: &str, n: u32) -> Result<Mask, SpecError> {
    let (m, len) = Mask::parse_bitstring(s).map_err(|e| shift(e, 0))?;
    if len != n {
        return Err(err(0, format!("expected {n} bits, found {len}")));
    }
    Ok(m)
}
