//! The noise operator T_η and a numerical Bonami–Beckner check.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::function::BooleanFunction;
use crate::scalar::{dyadic_to_f64, Real};
use crate::spectrum::{pm_spectrum, wht, Spectrum};

/// Which real-valued view of a Boolean function to analyse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Range {
    /// f itself, values in {0, 1}.
    ZeroOne,
    /// f± = 1 − 2f, values in {−1, 1}.
    PlusMinus,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HypercontractivityReport<R> {
    /// ‖T_η f‖₂.
    pub lhs: R,
    /// ‖f‖_{1+η²}.
    pub rhs: R,
    pub holds: bool,
}

pub const HYPERCONTRACTIVITY_TOL: f64 = 1e-9;

/// ‖T_η f‖₂ from the spectrum: coefficient s is scaled by η^{|s|}.
pub fn noisy_l2<R: Real>(s: &Spectrum<BigInt>, eta: R) -> R {
    let sum = s.coeffs().iter().fold(R::zero(), |acc, (m, c)| {
        let v = R::from_f64(dyadic_to_f64(c, s.denom_exp())).expect("finite");
        acc + eta.powi(2 * m.weight() as i32) * v * v
    });
    sum.sqrt()
}

/// Checks ‖T_η f‖₂ ≤ ‖f‖_{1+η²} for 0 < η ≤ 1.
pub fn hypercontractivity_check<R: Real>(f: &BooleanFunction, range: Range, eta: R) -> Result<HypercontractivityReport<R>> {
    let eta_f = eta.to_f64().unwrap_or(f64::NAN);
    if !(eta > R::zero() && eta <= R::one()) {
        return Err(Error::InvalidEta(eta_f));
    }
    let spectrum = match range {
        Range::ZeroOne => wht::<BigInt>(f),
        Range::PlusMinus => pm_spectrum::<BigInt>(f),
    };
    let lhs = noisy_l2(&spectrum, eta);
    let q = R::one() + eta * eta;
    // |f|^q is 0 or 1 in both views, so the average is a count
    let hits = match range {
        Range::ZeroOne => f.count_ones(),
        Range::PlusMinus => f.len(),
    };
    let avg = R::from_u64(hits).expect("count") / R::from_u64(f.len()).expect("size");
    let rhs = avg.powf(R::one() / q);
    let tol = R::from_f64(HYPERCONTRACTIVITY_TOL).expect("tolerance");
    Ok(HypercontractivityReport { lhs, rhs, holds: lhs <= rhs + tol })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct(f: &BooleanFunction, eta: f64) -> (f64, f64) {
        // T_η f(x) = E_y f(y) · Π_i ((1+η)/2 if x_i = y_i else (1−η)/2)
        let n = f.n();
        let mut sq = 0.0;
        for x in 0..f.len() {
            let mut t = 0.0;
            for y in 0..f.len() {
                let d = (x ^ y).count_ones() as i32;
                let w = ((1.0 + eta) / 2.0).powi(n as i32 - d) * ((1.0 - eta) / 2.0).powi(d);
                t += w * f.eval(y) as u8 as f64;
            }
            sq += t * t;
        }
        let q = 1.0 + eta * eta;
        let norm = (f.iter().map(|b| (b as u8 as f64).powf(q)).sum::<f64>() / f.len() as f64).powf(1.0 / q);
        ((sq / f.len() as f64).sqrt(), norm)
    }

    #[test]
    fn examples() {
        let and2 = BooleanFunction::from_fn(2, |x| x == 3);
        let r = hypercontractivity_check(&and2, Range::PlusMinus, 1.0f64).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-12 && (r.rhs - 1.0).abs() < 1e-12 && r.holds);

        let zero = BooleanFunction::constant(3, false);
        let r = hypercontractivity_check(&zero, Range::ZeroOne, 0.3).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (0.0, 0.0, true));

        let and3 = BooleanFunction::from_fn(3, |x| x == 7);
        let r = hypercontractivity_check(&and3, Range::ZeroOne, 0.5).unwrap();
        let (l, rr) = direct(&and3, 0.5);
        assert!((r.lhs - l).abs() < 1e-12 && (r.rhs - rr).abs() < 1e-12);
        assert!(r.holds);

        let r32 = hypercontractivity_check(&and3, Range::ZeroOne, 0.5f32).unwrap();
        assert!(r32.holds);
    }

    #[test]
    fn rejects_bad_eta() {
        let f = BooleanFunction::constant(1, true);
        assert_eq!(hypercontractivity_check(&f, Range::ZeroOne, 0.0), Err(Error::InvalidEta(0.0)));
        assert_eq!(hypercontractivity_check(&f, Range::ZeroOne, 1.5), Err(Error::InvalidEta(1.5)));
        assert!(hypercontractivity_check(&f, Range::ZeroOne, f64::NAN).is_err());
    }

    #[test]
    fn randomized_grid() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(1..=8);
            let words: Vec<bool> = (0..1u64 << n).map(|_| rng.gen()).collect();
            let f = BooleanFunction::from_bits(n, &words).unwrap();
            let eta: f64 = rng.gen_range(0.01..=1.0);
            for range in [Range::ZeroOne, Range::PlusMinus] {
                assert!(hypercontractivity_check(&f, range, eta).unwrap().holds);
            }
            if n <= 4 {
                let r = hypercontractivity_check(&f, Range::ZeroOne, eta).unwrap();
                let (l, rr) = direct(&f, eta);
                assert!((r.lhs - l).abs() < 1e-9 && (r.rhs - rr).abs() < 1e-9);
            }
        }
    }
}
