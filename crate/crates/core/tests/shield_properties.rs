//! Shield-module properties: series structure, parameter arithmetic, the
//! formula-vs-brute-force agreement on small cases, and the bound/crossover
//! algebra.

use proptest::prelude::*;

use varwreath_core::shield::{bound1, bound2, crossover, kp_series, shield_class, shield_params};
use varwreath_core::{oracle, ConcreteGroup, GroupExpr};

fn c(n: u64) -> GroupExpr {
    GroupExpr::cyclic(n)
}

fn mat(expr: GroupExpr) -> ConcreteGroup {
    ConcreteGroup::materialize(expr, 20_000).unwrap()
}

fn small_p_group(p: u64) -> impl Strategy<Value = GroupExpr> {
    let p2 = p * p;
    prop_oneof![
        Just(c(p)),
        Just(c(p2)),
        Just(GroupExpr::direct([c(p), c(p)])),
        Just(GroupExpr::power(c(p), 3)),
        Just(GroupExpr::wreath(c(p), c(p))),
        Just(GroupExpr::direct([c(p2), c(p)])),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn kp_series_terms_are_normal_and_exhaust_the_group(expr in small_p_group(2)) {
        let b = mat(expr);
        prop_assume!(b.order() <= 256);
        let series = kp_series(&b, 2).unwrap();
        prop_assert_eq!(series.terms()[0].order(), b.order(), "K_1 = B");
        for term in series.terms() {
            prop_assert!(term.is_normal());
        }
        if b.order() > 1 {
            let params = shield_params(&b, 2).unwrap();
            let log: u32 = params.e_values().iter().sum();
            prop_assert_eq!(2u64.pow(log), b.order(), "sum of e(s) is log_p |B|");
        }
    }

    /// The central agreement property on the quickly-materializable part of
    /// the grid; the acceptance suite runs the full grid.
    #[test]
    fn shield_class_matches_brute_force(bottom in small_p_group(2), top in small_p_group(2)) {
        let w = GroupExpr::wreath(bottom.clone(), top.clone());
        prop_assume!(matches!(w.order(), Ok(n) if n <= 4096));
        let r = oracle::shield_vs_brute(&bottom, &top, 2, 4096).unwrap();
        prop_assert!(r.agree, "{bottom} wr {top}: predicted {} observed {}", r.predicted, r.observed);
    }

    #[test]
    fn bound_difference_is_affine_with_the_stated_slope(
        c_ in 1u64..=5, z in 0u64..=5, l in 0u64..=5,
        p in prop::sample::select(vec![2u64, 3, 5]),
        v in 1u32..=3, alpha in 1u32..=3,
    ) {
        let t0 = z.max(l).max(1);
        let slope = c_ as i128 * (p as i128 - 1) * (p as i128).pow(v - 1);
        let diff_at = |t: u64| {
            let b2 = bound2(c_, t, z, p, v, alpha).unwrap();
            let b1 = bound1(c_, t, l, p, v, alpha).unwrap();
            num_rational::Ratio::from_integer(b2) - b1
        };
        let mut prev = diff_at(t0);
        for t in t0 + 1..t0 + 6 {
            let cur = diff_at(t);
            prop_assert_eq!(cur - prev, num_rational::Ratio::from_integer(slope));
            prev = cur;
        }
    }

    #[test]
    fn crossover_agrees_with_direct_scan(
        c_ in 1u64..=5, z in 0u64..=5, l in 0u64..=5,
        p in prop::sample::select(vec![2u64, 3, 5]),
        v in 1u32..=3, alpha in 1u32..=3,
    ) {
        let t = crossover(c_, z, l, p, v, alpha).unwrap();
        let scanned = (z.max(l).max(1)..)
            .find(|&t| {
                let b2 = num_rational::Ratio::from_integer(bound2(c_, t, z, p, v, alpha).unwrap());
                b2 > bound1(c_, t, l, p, v, alpha).unwrap()
            })
            .unwrap();
        prop_assert_eq!(t, scanned);
    }

    #[test]
    fn bound1_is_always_integral(
        c_ in 1u64..=20, l in 0u64..=30, extra in 0u64..=50,
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
        v in 1u32..=4, alpha in 1u32..=4,
    ) {
        let t = l + extra.max(if l == 0 { 1 } else { 0 });
        let b = bound1(c_, t, l, p, v, alpha).unwrap();
        prop_assert!(b.is_integer(), "bound1({c_},{t},{l},{p},{v},{alpha}) = {b}");
    }
}

#[test]
fn shield_class_is_monotone_in_the_top_exponent() {
    for bottom in [c(2), c(4), GroupExpr::wreath(c(2), c(2))] {
        let a = mat(bottom.clone());
        let mut prev = None;
        for v in 1..=3u32 {
            let b = mat(c(2u64.pow(v)));
            let class = shield_class(&a, &b, 2).unwrap();
            if let Some(p) = prev {
                assert!(class > p, "{bottom} wr C_2^{v}: {class} vs {p}");
            }
            prev = Some(class);
        }
    }
}

#[test]
fn c2_wr_c8_matches_brute_force() {
    // Depth-4 series with a zero e(s) quotient in the middle.
    let params = shield_params(&mat(c(8)), 2).unwrap();
    assert_eq!(params.depth(), 4);
    assert_eq!(params.e_values(), &[1, 1, 0, 1]);
    assert_eq!((params.a(), params.b()), (8, 4));
    let r = oracle::shield_vs_brute(&c(2), &c(8), 2, 20_000).unwrap();
    assert_eq!((r.predicted, r.observed), (8, 8));
    assert!(r.agree);
}

#[test]
fn nonabelian_tops_run_through_the_kp_series() {
    // The series definition uses the lower central series of B, so a
    // nonabelian top exercises the r >= 2 terms.
    let d4 = GroupExpr::wreath(c(2), c(2));
    let params = shield_params(&mat(d4.clone()), 2).unwrap();
    assert!(params.depth() >= 2);
    let r = oracle::shield_vs_brute(&c(2), &d4, 2, 20_000).unwrap();
    assert!(r.agree, "predicted {} observed {}", r.predicted, r.observed);
}
