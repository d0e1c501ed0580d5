//! Named function families and the seeded test corpus.
//!
//! Specification strings: `bent_ip(k)` or `bent_ip(k,n)`, `and(n)`, `or(n)`,
//! `parity(n)`, `majority(n)`, `symmetric(v₀v₁…vₙ)` with f(x) = v_{|x|},
//! `random_poly(n,d,seed)` and `affine_indicator(n,MASK=BIT,…)`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::function::{BooleanFunction, N_MAX};
use crate::gf2::{Echelon, Mask};
use crate::restrict::AffineConstraint;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// x₁x₂ ⊕ x₃x₄ ⊕ … ⊕ x_{k−1}x_k on n ≥ k variables.
    BentIp { k: u32, n: u32 },
    And { n: u32 },
    Or { n: u32 },
    Parity { n: u32 },
    /// 1 iff more than half of the inputs are 1.
    Majority { n: u32 },
    /// f(x) = values[|x|]; n = values.len() − 1.
    Symmetric { values: Vec<bool> },
    /// Each monomial of degree ≤ d enters independently with probability ½.
    RandomPoly { n: u32, d: u32, seed: u64 },
    AffineIndicator { n: u32, constraints: Vec<AffineConstraint> },
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidSpec(msg.into())
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 || n > N_MAX {
        return Err(invalid(format!("n must be in 1..={N_MAX}, got {n}")));
    }
    Ok(())
}

pub fn bent_ip(k: u32, n: u32) -> Result<BooleanFunction> {
    if k == 0 || k % 2 == 1 {
        return Err(invalid(format!("bent_ip needs a positive even k, got {k}")));
    }
    if n < k {
        return Err(invalid(format!("bent_ip needs n >= k, got k = {k}, n = {n}")));
    }
    check_n(n)?;
    Ok(BooleanFunction::from_fn(n, |x| (0..k / 2).filter(|i| x >> (2 * i) & 3 == 3).count() % 2 == 1))
}

pub fn and(n: u32) -> Result<BooleanFunction> {
    check_n(n)?;
    Ok(BooleanFunction::from_fn(n, |x| x == (1 << n) - 1))
}

pub fn or(n: u32) -> Result<BooleanFunction> {
    check_n(n)?;
    Ok(BooleanFunction::from_fn(n, |x| x != 0))
}

pub fn parity(n: u32) -> Result<BooleanFunction> {
    check_n(n)?;
    Ok(BooleanFunction::from_fn(n, |x| x.count_ones() % 2 == 1))
}

pub fn majority(n: u32) -> Result<BooleanFunction> {
    check_n(n)?;
    Ok(BooleanFunction::from_fn(n, |x| 2 * x.count_ones() > n))
}

pub fn symmetric(values: &[bool]) -> Result<BooleanFunction> {
    if values.is_empty() {
        return Err(invalid("symmetric needs a non-empty value vector"));
    }
    let n = values.len() as u32 - 1;
    check_n(n)?;
    Ok(BooleanFunction::from_fn(n, |x| values[x.count_ones() as usize]))
}

/// Monomials are visited in increasing mask order; each of weight ≤ d is
/// kept when the next `bool` drawn from ChaCha8 seeded with `seed` is true.
pub fn random_poly(n: u32, d: u32, seed: u64) -> Result<BooleanFunction> {
    check_n(n)?;
    if d > n {
        return Err(invalid(format!("random_poly degree {d} exceeds n = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut monomials = Vec::new();
    for m in 0..1u64 << n {
        if m.count_ones() <= d && rng.gen::<bool>() {
            monomials.push(Mask(m));
        }
    }
    Ok(crate::anf::Anf::new(n, monomials)?.to_function())
}

pub fn affine_indicator(n: u32, constraints: &[AffineConstraint]) -> Result<BooleanFunction> {
    check_n(n)?;
    let mut e = Echelon::new();
    for c in constraints {
        if !c.mask.fits(n) {
            return Err(invalid(format!("constraint mask wider than n = {n}")));
        }
        if !e.insert(c.mask) {
            return Err(invalid("constraint masks are linearly dependent"));
        }
    }
    Ok(BooleanFunction::from_fn(n, |x| constraints.iter().all(|c| c.holds(Mask(x)))))
}

impl FamilySpec {
    pub fn n(&self) -> u32 {
        match self {
            FamilySpec::BentIp { n, .. }
            | FamilySpec::And { n }
            | FamilySpec::Or { n }
            | FamilySpec::Parity { n }
            | FamilySpec::Majority { n }
            | FamilySpec::RandomPoly { n, .. }
            | FamilySpec::AffineIndicator { n, .. } => *n,
            FamilySpec::Symmetric { values } => values.len().saturating_sub(1) as u32,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            FamilySpec::BentIp { .. } => "bent_ip",
            FamilySpec::And { .. } => "and",
            FamilySpec::Or { .. } => "or",
            FamilySpec::Parity { .. } => "parity",
            FamilySpec::Majority { .. } => "majority",
            FamilySpec::Symmetric { .. } => "symmetric",
            FamilySpec::RandomPoly { .. } => "random_poly",
            FamilySpec::AffineIndicator { .. } => "affine_indicator",
        }
    }

    pub fn generate(&self) -> Result<BooleanFunction> {
        match self {
            FamilySpec::BentIp { k, n } => bent_ip(*k, *n),
            FamilySpec::And { n } => and(*n),
            FamilySpec::Or { n } => or(*n),
            FamilySpec::Parity { n } => parity(*n),
            FamilySpec::Majority { n } => majority(*n),
            FamilySpec::Symmetric { values } => symmetric(values),
            FamilySpec::RandomPoly { n, d, seed } => random_poly(*n, *d, *seed),
            FamilySpec::AffineIndicator { n, constraints } => affine_indicator(*n, constraints),
        }
    }
}

pub fn generate(spec: &FamilySpec) -> Result<BooleanFunction> {
    spec.generate()
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::BentIp { k, n } if k == n => write!(f, "bent_ip({k})"),
            FamilySpec::BentIp { k, n } => write!(f, "bent_ip({k},{n})"),
            FamilySpec::And { n } | FamilySpec::Or { n } | FamilySpec::Parity { n } | FamilySpec::Majority { n } => {
                write!(f, "{}({n})", self.kind())
            }
            FamilySpec::Symmetric { values } => {
                write!(f, "symmetric({})", values.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>())
            }
            FamilySpec::RandomPoly { n, d, seed } => write!(f, "random_poly({n},{d},{seed})"),
            FamilySpec::AffineIndicator { n, constraints } => {
                write!(f, "affine_indicator({n}")?;
                for c in constraints {
                    write!(f, ",{}", c.display(*n))?;
                }
                write!(f, ")")
            }
        }
    }
}

fn parse_u32(s: &str, what: &str) -> Result<u32> {
    s.trim().parse().map_err(|_| invalid(format!("{what} must be a non-negative integer, found {s:?}")))
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let open = s.find('(').ok_or_else(|| invalid(format!("expected KIND(PARAMS), found {s:?}")))?;
        if !s.ends_with(')') {
            return Err(invalid(format!("missing closing parenthesis in {s:?}")));
        }
        let kind = &s[..open];
        let inner = &s[open + 1..s.len() - 1];
        let args: Vec<&str> = if inner.trim().is_empty() { Vec::new() } else { inner.split(',').map(str::trim).collect() };
        let arity = |want: &[usize]| -> Result<()> {
            if want.contains(&args.len()) {
                Ok(())
            } else {
                Err(invalid(format!("{kind} takes {want:?} parameters, found {}", args.len())))
            }
        };
        let spec = match kind {
            "bent_ip" => {
                arity(&[1, 2])?;
                let k = parse_u32(args[0], "k")?;
                let n = if args.len() == 2 { parse_u32(args[1], "n")? } else { k };
                FamilySpec::BentIp { k, n }
            }
            "and" | "or" | "parity" | "majority" => {
                arity(&[1])?;
                let n = parse_u32(args[0], "n")?;
                match kind {
                    "and" => FamilySpec::And { n },
                    "or" => FamilySpec::Or { n },
                    "parity" => FamilySpec::Parity { n },
                    _ => FamilySpec::Majority { n },
                }
            }
            "symmetric" => {
                arity(&[1])?;
                let values = args[0]
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(invalid(format!("symmetric values must be 0/1, found {c:?}"))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                FamilySpec::Symmetric { values }
            }
            "random_poly" => {
                arity(&[3])?;
                let seed = args[2].parse().map_err(|_| invalid(format!("seed must be an integer, found {:?}", args[2])))?;
                FamilySpec::RandomPoly { n: parse_u32(args[0], "n")?, d: parse_u32(args[1], "d")?, seed }
            }
            "affine_indicator" => {
                if args.is_empty() {
                    return Err(invalid("affine_indicator needs n"));
                }
                let n = parse_u32(args[0], "n")?;
                let mut constraints = Vec::new();
                for a in &args[1..] {
                    let (c, len) = AffineConstraint::parse(a).map_err(|e| invalid(format!("bad constraint {a:?}: {e}")))?;
                    if len != n {
                        return Err(invalid(format!("constraint {a:?} has {len} bits, expected {n}")));
                    }
                    constraints.push(c);
                }
                FamilySpec::AffineIndicator { n, constraints }
            }
            _ => return Err(invalid(format!("unknown family {kind:?}"))),
        };
        spec.generate()?;
        Ok(spec)
    }
}

/// A named corpus entry.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub f: BooleanFunction,
}

/// Constraints x₁⊕x₂ = 0, x₂⊕x₃ = 1, … (the last one alone when it runs out).
fn sample_constraints(n: u32, c: u32) -> Vec<AffineConstraint> {
    (0..c)
        .map(|i| {
            let next = if i + 1 < n { Mask::unit(i + 1) } else { Mask::ZERO };
            AffineConstraint { mask: Mask::unit(i) ^ next, bit: i % 2 == 1 }
        })
        .collect()
}

/// Every named family at every n ≤ `max_n`, plus the two constants.
pub fn family_specs(max_n: u32) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.push(FamilySpec::And { n });
        out.push(FamilySpec::Or { n });
        out.push(FamilySpec::Parity { n });
        out.push(FamilySpec::Majority { n });
        out.push(FamilySpec::Symmetric { values: (0..=n).map(|w| w % 3 == 0).collect() });
        out.push(FamilySpec::Symmetric { values: (0..=n).map(|w| w == n / 2).collect() });
        if n % 2 == 0 {
            out.push(FamilySpec::BentIp { k: n, n });
        } else if n >= 3 {
            out.push(FamilySpec::BentIp { k: n - 1, n });
        }
        out.push(FamilySpec::AffineIndicator { n, constraints: sample_constraints(n, 1 + (n - 1) % 3) });
    }
    out
}

/// `count` random polynomials with n cycling through 2..=max_n and degree
/// through 1..=max_d (capped at n); entry i uses seed i.
pub fn random_specs(count: usize, max_n: u32, max_d: u32) -> Vec<FamilySpec> {
    (0..count)
        .map(|i| {
            let n = 2 + (i as u32) % (max_n - 1);
            let d = (1 + (i as u32 / (max_n - 1)) % max_d).min(n);
            FamilySpec::RandomPoly { n, d, seed: i as u64 }
        })
        .collect()
}

/// Families up to `max_family_n`, constants, and `random` random
/// polynomials with n ≤ 8 and degree ≤ 4.
pub fn standard_corpus(max_family_n: u32, random: usize) -> Vec<CorpusEntry> {
    let mut out: Vec<CorpusEntry> = family_specs(max_family_n)
        .into_iter()
        .chain(random_specs(random, 8, 4))
        .map(|spec| CorpusEntry { name: spec.to_string(), f: spec.generate().expect("corpus specs are valid") })
        .collect();
    for v in [false, true] {
        out.push(CorpusEntry { name: format!("constant({})", v as u8), f: BooleanFunction::constant(3, v) });
    }
    out
}
