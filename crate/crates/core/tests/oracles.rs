//! Library results against brute-force definitions on small n.

use logrank::families::random_poly;
use logrank::pdt::{cert_greedy_l1, rank_exact};
use logrank::{anf_of, deg2, pm_spectrum, restrict_affine, wht, AffineConstraint, BooleanFunction, Mask};
use proptest::prelude::*;

fn arb_function(max_n: u32) -> impl Strategy<Value = BooleanFunction> {
    (1..=max_n).prop_flat_map(|n| proptest::collection::vec(any::<bool>(), 1 << n).prop_map(move |t| BooleanFunction::from_bits(n, &t).unwrap()))
}

/// Σ_x f(x)(−1)^{⟨s,x⟩}, unnormalized.
fn naive_coeff(f: &BooleanFunction, s: u64, pm: bool) -> i64 {
    (0..f.len())
        .map(|x| {
            let v = if pm { f.eval_pm(x) } else { f.eval(x) as i64 };
            if Mask(s).dot(Mask(x)) { -v } else { v }
        })
        .sum()
}

/// Minimum codimension of an affine subspace on which the degree drops,
/// by trying every constraint set and every shift.
fn naive_rank(f: &BooleanFunction) -> u32 {
    let n = f.n();
    let d = deg2(f);
    let masks: Vec<Mask> = (1..1u64 << n).map(Mask).collect();
    for k in 1..=n {
        let mut found = false;
        choose(&masks, k as usize, &mut Vec::new(), &mut |set| {
            if found || logrank::span_dim(set) != set.len() {
                return;
            }
            for bits in 0..1u32 << k {
                let cs: Vec<AffineConstraint> =
                    set.iter().enumerate().map(|(i, &m)| AffineConstraint::new(m, bits >> i & 1 == 1).unwrap()).collect();
                let g = restrict_affine(f, &cs).unwrap();
                if g.is_constant() || deg2(&g) < d {
                    found = true;
                    return;
                }
            }
        });
        if found {
            return k;
        }
    }
    unreachable!("codimension n leaves a point")
}

fn choose(items: &[Mask], k: usize, cur: &mut Vec<Mask>, visit: &mut impl FnMut(&[Mask])) {
    if cur.len() == k {
        visit(cur);
        return;
    }
    for (i, &m) in items.iter().enumerate() {
        cur.push(m);
        choose(&items[i + 1..], k, cur, visit);
        cur.pop();
    }
}

proptest! {
    #[test]
    fn transform_matches_definition(f in arb_function(6)) {
        let n = f.n();
        for (pm, s) in [(false, wht::<i64>(&f)), (true, pm_spectrum::<i64>(&f))] {
            for t in 0..f.len() {
                // s.get(t) / 2^denom_exp == naive / 2^n
                let lhs = s.get(Mask(t)) as i128 * (1i128 << n);
                let rhs = naive_coeff(&f, t, pm) as i128 * (1i128 << s.denom_exp());
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn anf_evaluates_to_f(f in arb_function(7)) {
        let a = anf_of(&f);
        for x in 0..f.len() {
            prop_assert_eq!(a.eval(x), f.eval(x));
        }
        prop_assert_eq!(a.to_function(), f);
    }

    #[test]
    fn restriction_is_evaluation(f in arb_function(6), seed in any::<u64>()) {
        let n = f.n();
        let mask = Mask(seed % ((1 << n) - 1) + 1);
        let bit = seed >> 40 & 1 == 1;
        let c = AffineConstraint::new(mask, bit).unwrap();
        let g = restrict_affine(&f, &[c]).unwrap();
        prop_assert_eq!(g.n(), n - 1);
        // both tables list the same multiset of values over the hyperplane
        let on: Vec<bool> = (0..f.len()).filter(|&x| c.holds(Mask(x))).map(|x| f.eval(x)).collect();
        prop_assert_eq!(on.len() as u64, g.len());
        prop_assert_eq!(on.iter().filter(|&&v| v).count() as u64, g.count_ones());
    }

    #[test]
    fn greedy_certificate_is_constant(f in arb_function(6)) {
        prop_assume!(!f.is_constant());
        let c = cert_greedy_l1(&f).unwrap();
        let g = restrict_affine(&f, &c.constraints).unwrap();
        prop_assert_eq!(g.constant_value(), Some(c.value));
    }
}

#[test]
fn rank_matches_exhaustive_search() {
    let mut checked = 0;
    for n in 2..=4 {
        for d in 1..=n {
            for seed in 0..12 {
                let f = random_poly(n, d, seed).unwrap();
                if f.is_constant() {
                    continue;
                }
                let r = rank_exact(&f, n).unwrap();
                assert_eq!(r.rank, naive_rank(&f), "random_poly({n},{d},{seed})");
                let g = restrict_affine(&f, &r.witness).unwrap();
                assert!(g.is_constant() || deg2(&g) < deg2(&f));
                checked += 1;
            }
        }
    }
    assert!(checked > 80);
}

#[test]
fn quadratic_rank_is_half_the_dickson_rank() {
    for n in 2..=7 {
        for seed in 0..10 {
            let f = random_poly(n, 2, seed).unwrap();
            if deg2(&f) != 2 {
                continue;
            }
            let dickson = logrank::gf2_rank(&anf_of(&f).dickson_matrix());
            assert_eq!(dickson % 2, 0);
            assert_eq!(rank_exact(&f, n).unwrap().rank as usize, dickson / 2, "random_poly({n},2,{seed})");
        }
    }
}
