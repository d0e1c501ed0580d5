//! f as a signed sum of linear-subspace indicators, read off the 1-leaves
//! of a parity decision tree.

use crate::error::{Error, Result};
use crate::function::BooleanFunction;
use crate::gf2::Mask;

use super::{pdt_check, Pdt};

/// ±1_V with V = {x : ⟨ℓ, x⟩ = 0 for every ℓ in `constraints`}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedSubspace {
    pub sign: i8,
    pub constraints: Vec<Mask>,
}

impl SignedSubspace {
    pub fn contains(&self, x: Mask) -> bool {
        self.constraints.iter().all(|l| !l.dot(x))
    }
}

/// Σ_i sign_i · 1_{V_i}(x).
pub fn evaluate_terms(terms: &[SignedSubspace], x: Mask) -> i64 {
    terms.iter().filter(|t| t.contains(x)).map(|t| t.sign as i64).sum()
}

/// For a leaf H = {⟨ℓᵢ, x⟩ = aᵢ}: if every aᵢ is 0 then 1_H = 1_V; otherwise
/// pick the first i₀ with a_{i₀} = 1 and write 1_H = 1_U − 1_V, where V is
/// the homogeneous subspace and U = {⟨ℓᵢ + aᵢℓ_{i₀}, x⟩ = 0 for i ≠ i₀}.
pub fn green_sanders_decompose(t: &Pdt, f: &BooleanFunction) -> Result<Vec<SignedSubspace>> {
    let check = pdt_check(t, f);
    if !check.correct {
        let at = check.first_mismatch.map(|x| x.to_bitstring(f.n())).unwrap_or_default();
        return Err(Error::InvalidTree(format!("tree disagrees with the function at {at}")));
    }
    let mut terms = Vec::new();
    for leaf in t.leaves().into_iter().filter(|l| l.value) {
        let v: Vec<Mask> = leaf.constraints.iter().map(|c| c.mask).collect();
        match leaf.constraints.iter().position(|c| c.bit) {
            None => terms.push(SignedSubspace { sign: 1, constraints: v }),
            Some(i0) => {
                let l0 = leaf.constraints[i0].mask;
                let u = leaf
                    .constraints
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != i0)
                    .map(|(_, c)| if c.bit { c.mask ^ l0 } else { c.mask })
                    .collect();
                terms.push(SignedSubspace { sign: 1, constraints: u });
                terms.push(SignedSubspace { sign: -1, constraints: v });
            }
        }
    }
    if let Some(x) = (0..f.len()).map(Mask).find(|&x| evaluate_terms(&terms, x) != f.eval(x.0) as i64) {
        return Err(Error::InvalidTree(format!("decomposition disagrees at {}", x.to_bitstring(f.n()))));
    }
    Ok(terms)
}
