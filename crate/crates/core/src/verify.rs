//! Per-function invariant reports, the Chang span checker and the B_d
//! recurrence evaluator.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::anf::deg2;
use crate::error::{Error, Result};
use crate::function::BooleanFunction;
use crate::gf2::{apply_linear, span_dim, LinearMap, Mask};
use crate::noise::{hypercontractivity_check, Range};
use crate::pdt::{build, Strategy};
use crate::restrict::{fold, spectrum_split};
use crate::scalar::{dyadic_string, Numerator};
use crate::spectrum::{pm_spectrum, pointwise_product, wht, Spectrum};

/// Largest n for which the report builds trees.
pub const TREE_CHECK_MAX_N: u32 = 10;

/// Etas of the hypercontractivity spot-check.
pub const ETAS: [f64; 4] = [0.25, 0.5, 0.75, 1.0];

/// Seed of the random change of basis in the invariance check.
pub const LINEAR_MAP_SEED: u64 = 7;

/// Guard band on the strict inequality of the Chang check.
pub const CHANG_GUARD: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantReport {
    pub checks: Vec<Check>,
    pub overall: bool,
}

impl InvariantReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.holds)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: &str, lhs: impl ToString, rhs: impl ToString, holds: bool) {
        self.0.push(Check { name: name.to_string(), lhs: lhs.to_string(), rhs: rhs.to_string(), holds });
    }
}

fn pow2(k: u32) -> BigInt {
    BigInt::pow2(k)
}

/// Largest ℓ0 and ℓ1 numerators over every fold ⟨t,x⟩ = b.
fn max_fold_norms(s: &Spectrum<i64>) -> (usize, i64) {
    let mut out = (0, 0);
    for t in 1..1u64 << s.n() {
        for b in [false, true] {
            let g = fold(s, Mask(t), b).expect("non-zero direction");
            out = (out.0.max(g.l0()), out.1.max(g.l1_num()));
        }
    }
    out
}

/// Runs every inequality that can be checked on a single function.
///
/// Tree-dependent checks are skipped when n exceeds [`TREE_CHECK_MAX_N`].
pub fn invariant_report(f: &BooleanFunction) -> InvariantReport {
    let n = f.n();
    let s01 = wht::<BigInt>(f);
    let spm = pm_spectrum::<BigInt>(f);
    let (st01, stpm) = (s01.stats(), spm.stats());
    let mut c = Checks::default();

    let sq: BigInt = s01.coeffs().values().map(|v| v * v).sum();
    let rhs = pow2(n) * BigInt::from(f.count_ones());
    c.push("parseval", &sq, &rhs, sq == rhs);

    let auto = pointwise_product(&spm, &spm).expect("same dimension");
    let at_zero = dyadic_string(&auto.get(Mask::ZERO), auto.denom_exp());
    let off_zero = auto.support().filter(|s| !s.is_zero()).count();
    c.push("autocorrelation", format!("{at_zero} at 0, {off_zero} other non-zero shifts"), "1/1 at 0, 0 other non-zero shifts", at_zero == "1/1" && off_zero == 0);

    // 2^deg ≤ ℓ0 of the {0,1} spectrum; the constant 0 has no spectrum at all
    let d = deg2(f);
    if st01.l0 == 0 {
        c.push("deg_vs_sparsity", d, "vacuous (l0 = 0)", true);
    } else {
        c.push("deg_vs_sparsity", format!("2^{d}"), st01.l0, (1u128 << d) <= st01.l0 as u128);
    }

    for (name, st) in [("l1_vs_sqrt_l0", &st01), ("l1_vs_sqrt_l0_pm", &stpm)] {
        let ok = &st.l1_num * &st.l1_num <= BigInt::from(st.l0) * pow2(2 * st.denom_exp);
        c.push(name, format!("({})^2", st.l1_string()), st.l0, ok);
    }

    match stpm.granularity_bound() {
        Some(b) => c.push("granularity", stpm.granularity, b, stpm.granularity <= b),
        None => c.push("granularity", stpm.granularity, "vacuous (l0 < 2)", true),
    }

    let two = BigInt::from(2);
    let k = pow2(n);
    let l1_ok = &two * &st01.l1_num - &k <= stpm.l1_num && stpm.l1_num <= &two * &st01.l1_num + &k;
    c.push("range_switch_l1", stpm.l1_string(), format!("2*{} -/+ 1", st01.l1_string()), l1_ok);
    let l0_ok = st01.l0 <= stpm.l0 + 1 && stpm.l0 <= st01.l0 + 1;
    c.push("range_switch_l0", stpm.l0, format!("{} -/+ 1", st01.l0), l0_ok);

    if n <= TREE_CHECK_MAX_N {
        let depth = Strategy::ALL.iter().map(|&s| build(f, s).0.depth()).min().expect("four strategies");
        let ok = (stpm.l0 as u128) <= 1u128 << (2 * depth);
        c.push("l0_vs_4^depth", stpm.l0, format!("4^{depth}"), ok);
    }

    let s64: Spectrum<i64> = spm.convert();
    if n >= 1 {
        let (l0, l1) = max_fold_norms(&s64);
        let ok = l0 <= s64.l0() && l1 <= s64.l1_num();
        c.push("fold_monotone", format!("max l0 {l0}, max l1 {}", dyadic_string(&l1, n)), format!("l0 {}, l1 {}", s64.l0(), stpm.l1_string()), ok);

        let mut ok = true;
        for t in 1..1u64 << n {
            let (g0, g1) = spectrum_split(&s64, Mask(t)).expect("non-zero direction");
            ok &= g0.l0() + g1.l0() == s64.l0() && g0.l1_num() + g1.l1_num() == s64.l1_num();
        }
        c.push("split_conservation", "l1(g0) + l1(g1)", "l1(f)", ok);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(LINEAR_MAP_SEED);
    let map = LinearMap::random(n, &mut rng);
    let g = apply_linear(f, &map).expect("dimensions match");
    let gst = pm_spectrum::<BigInt>(&g).stats();
    let (dg, df) = (deg2(&g), d);
    let ok = gst == stpm && dg == df;
    c.push(
        "linear_map_invariance",
        format!("l0 {}, l1 {}, gran {}, deg {dg}", gst.l0, gst.l1_string(), gst.granularity),
        format!("l0 {}, l1 {}, gran {}, deg {df}", stpm.l0, stpm.l1_string(), stpm.granularity),
        ok,
    );

    match st01.linf_num.is_zero() {
        true => c.push("chang", "vacuous (constant 0)", "", true),
        false => {
            let eps = s01.coeffs().values().map(|v| v.abs()).min().expect("non-empty");
            let r = chang_check_big(f, &s01, &eps).expect("density is positive");
            c.push("chang", r.span, format!("{:.6}", r.bound), r.holds);
        }
    }

    for (range, tag) in [(Range::ZeroOne, "01"), (Range::PlusMinus, "pm")] {
        for eta in ETAS {
            let r = hypercontractivity_check(f, range, eta).expect("eta in (0,1]");
            c.push(&format!("hypercontractivity_{tag}_{eta}"), format!("{:.12}", r.lhs), format!("{:.12}", r.rhs), r.holds);
        }
    }

    let overall = c.0.iter().all(|x| x.holds);
    InvariantReport { checks: c.0, overall }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChangReport {
    pub span: usize,
    pub bound: f64,
    pub holds: bool,
}

/// Chang's span bound at ε = eps_num / 2^n over the {0,1} spectrum.
///
/// `holds` is `span < bound` with a small guard band; a span of 0 holds
/// without comparison, since the empty set spans nothing.
pub fn chang_check(f: &BooleanFunction, eps_num: u64) -> Result<ChangReport> {
    chang_check_big(f, &wht::<BigInt>(f), &BigInt::from(eps_num))
}

fn chang_check_big(f: &BooleanFunction, s: &Spectrum<BigInt>, eps_num: &BigInt) -> Result<ChangReport> {
    let ones = f.count_ones();
    if ones == 0 {
        return Err(Error::ZeroDensity);
    }
    if !eps_num.is_positive() {
        return Err(Error::InvalidArgument(0.0));
    }
    let heavy: Vec<Mask> = s.coeffs().iter().filter(|(_, v)| v.abs() >= *eps_num).map(|(m, _)| *m).collect();
    let span = span_dim(&heavy);
    // ρ/ε = (ones / 2^n) / (eps / 2^n) = ones / eps
    let ratio = ones as f64 / crate::scalar::dyadic_to_f64(eps_num, 0);
    let rho = ones as f64 / f.len() as f64;
    let bound = 2.0 * ratio * ratio * (1.0 / rho).ln();
    let holds = span == 0 || (span as f64) + CHANG_GUARD < bound;
    Ok(ChangReport { span, bound, holds })
}

/// Base case B₃(m) = c3·log₂(m+1) + b3 of the B_d recurrence.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundParams {
    pub c3: f64,
    pub b3: f64,
}

impl Default for BoundParams {
    fn default() -> Self {
        Self { c3: 9.0, b3: 5.0 }
    }
}

/// B_d(m) = B_{d−1}(m²)·log₂ m + B_{d−1}(m) + 1 with the default base case.
pub fn bound_b(d: u32, m: f64) -> Result<f64> {
    bound_b_with(d, m, BoundParams::default())
}

pub fn bound_b_with(d: u32, m: f64, params: BoundParams) -> Result<f64> {
    if d < 3 {
        return Err(Error::InvalidDegree(d));
    }
    if !(m >= 1.0) || m.is_infinite() {
        return Err(Error::InvalidArgument(m));
    }
    Ok(bound_b_log(d, m.log2(), params))
}

/// The recurrence in terms of L = log₂ m, so that m² never overflows.
fn bound_b_log(d: u32, l: f64, p: BoundParams) -> f64 {
    if d == 3 {
        // log₂(m + 1) = L + log₂(1 + 2^−L)
        let log_m1 = l + (-l).exp2().ln_1p() / std::f64::consts::LN_2;
        return p.c3 * log_m1 + p.b3;
    }
    bound_b_log(d - 1, 2.0 * l, p) * l + bound_b_log(d - 1, l, p) + 1.0
}

/// Leading-order form 2^{(d−2)(d−3)/2}·log₂^{d−2} m of the recurrence.
pub fn bound_b_leading(d: u32, m: f64) -> Result<f64> {
    if d < 3 {
        return Err(Error::InvalidDegree(d));
    }
    if !(m >= 1.0) {
        return Err(Error::InvalidArgument(m));
    }
    let e = ((d - 2) * (d - 3) / 2) as f64;
    Ok(e.exp2() * m.log2().powi(d as i32 - 2))
}

/// ℓ1 of f± as an f64, the argument the B_d annotation is evaluated at.
pub fn pm_l1(f: &BooleanFunction) -> f64 {
    let s = pm_spectrum::<BigInt>(f);
    crate::scalar::dyadic_to_f64(&s.l1_num(), s.denom_exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{and, bent_ip, random_poly, standard_corpus};
    use proptest::prelude::*;

    #[test]
    fn report_examples() {
        let ip4 = bent_ip(4, 4).unwrap();
        let r = invariant_report(&ip4);
        assert!(r.overall, "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.get("deg_vs_sparsity").unwrap().lhs, "2^2");
        assert_eq!(r.get("deg_vs_sparsity").unwrap().rhs, "16");

        let and2 = and(2).unwrap();
        let r = invariant_report(&and2);
        assert!(r.overall);
        assert_eq!(r.get("l1_vs_sqrt_l0").unwrap().lhs, "(1/1)^2");

        for v in [false, true] {
            let r = invariant_report(&BooleanFunction::constant(3, v));
            assert!(r.overall, "{:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn report_detects_a_broken_check() {
        let r = invariant_report(&random_poly(5, 3, 2).unwrap());
        assert_eq!(r.overall, r.checks.iter().all(|c| c.holds));
        assert!(r.checks.len() >= 20);
    }

    #[test]
    fn chang_examples() {
        for n in 1..=8 {
            let r = chang_check(&and(n).unwrap(), 1).unwrap();
            assert_eq!(r.span, n as usize);
            let expect = 2.0 * (n as f64) * std::f64::consts::LN_2;
            assert!((r.bound - expect).abs() < 1e-9);
            assert!(r.holds);
        }
        let f = and(3).unwrap();
        let r = chang_check(&f, 1 << 3).unwrap();
        assert_eq!(r.span, 0);
        assert!(r.holds);
        assert_eq!(chang_check(&BooleanFunction::constant(3, false), 1), Err(Error::ZeroDensity));
        let r = chang_check(&BooleanFunction::constant(3, true), 1).unwrap();
        assert_eq!((r.span, r.bound), (0, 0.0));
        assert!(r.holds);
    }

    #[test]
    fn chang_on_random_functions() {
        for seed in 0..40 {
            let f = random_poly(8, 1 + (seed % 4) as u32, seed).unwrap();
            if f.count_ones() == 0 {
                continue;
            }
            let s = wht::<BigInt>(&f);
            let eps = s.coeffs().values().map(|v| v.abs()).min().unwrap();
            let r = chang_check(&f, eps.try_into().unwrap()).unwrap();
            assert!(r.holds, "seed {seed}: {r:?}");
        }
    }

    #[test]
    fn bound_examples() {
        assert_eq!(bound_b(3, 1.0).unwrap(), 14.0);
        let b3 = |m: f64| 9.0 * (m + 1.0).log2() + 5.0;
        let b4 = b3(256.0) * 4.0 + b3(16.0) + 1.0;
        assert!((bound_b(4, 16.0).unwrap() - b4).abs() < 1e-9);
        assert_eq!(bound_b(2, 4.0), Err(Error::InvalidDegree(2)));
        assert_eq!(bound_b(3, 0.5), Err(Error::InvalidArgument(0.5)));
        assert!(bound_b(3, f64::NAN).is_err());
        let p = BoundParams { c3: 1.0, b3: 0.0 };
        assert_eq!(bound_b_with(3, 3.0, p).unwrap(), 2.0);
        assert_eq!(bound_b_leading(4, 16.0).unwrap(), 2.0 * 16.0);
        assert!(bound_b(12, 1e6).unwrap().is_finite());
    }

    proptest! {
        #[test]
        fn bound_is_monotone(d in 3u32..9, a in 1.0f64..1e6, b in 1.0f64..1e6) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(bound_b(d, lo).unwrap() <= bound_b(d, hi).unwrap());
            prop_assert!(bound_b(d, lo).unwrap() <= bound_b(d + 1, lo).unwrap());
        }
    }

    #[test]
    fn small_corpus_passes() {
        for e in standard_corpus(6, 30) {
            let r = invariant_report(&e.f);
            assert!(r.overall, "{}: {:?}", e.name, r.failures().collect::<Vec<_>>());
        }
    }
}
