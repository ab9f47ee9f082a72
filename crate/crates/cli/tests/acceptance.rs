//! Acceptance suite. Each test implements one exit criterion, pinned to its
//! stated tolerance, and prints one pass line when it holds (run with
//! `--nocapture` to see them). Any failure is a build stopper.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use varwreath_cli::fixtures;
use varwreath_cli::fuzz;
use varwreath_cli::reports::RowStatus;
use varwreath_core::oracle::{compare_varieties_upto, shield_vs_brute};
use varwreath_core::shield::{bound1, bound2, crossover, kp_series, shield_params};
use varwreath_core::{ComparisonVerdict, ConcreteGroup, GroupExpr, GroupOps, TableGroup};

const CAP: u64 = 20_000;
const SEED: u64 = 0x5eed;

fn c(n: u64) -> GroupExpr {
    GroupExpr::cyclic(n)
}

fn klein() -> GroupExpr {
    GroupExpr::direct([c(2), c(2)])
}

fn d4() -> GroupExpr {
    GroupExpr::wreath(c(2), c(2))
}

fn mat(expr: GroupExpr) -> ConcreteGroup {
    ConcreteGroup::materialize(expr, CAP).unwrap()
}

/// Criterion 1: exact Shield-vs-brute-force agreement over the full grid
/// {C2, C4, C2^2, C2 wr C2} x {C2, C4, C2^2, C2^3} (wreath order <= 20000)
/// plus (C3, C3); total runtime under 60 seconds.
#[test]
fn criterion_1_shield_oracle_agreement_on_the_grid() {
    let start = Instant::now();
    let bottoms = [c(2), c(4), klein(), d4()];
    let tops = [c(2), c(4), klein(), GroupExpr::power(c(2), 3)];
    let mut cases = 0;
    for bottom in &bottoms {
        for top in &tops {
            let wreath = GroupExpr::wreath(bottom.clone(), top.clone());
            match wreath.order() {
                Ok(order) if order <= CAP => {}
                _ => continue,
            }
            let r = shield_vs_brute(bottom, top, 2, CAP).unwrap();
            assert_eq!(
                r.predicted, r.observed,
                "{bottom} wr {top}: formula {} vs brute force {}",
                r.predicted, r.observed
            );
            cases += 1;
        }
    }
    let r = shield_vs_brute(&c(3), &c(3), 3, CAP).unwrap();
    assert_eq!(r.predicted, r.observed, "C3 wr C3");
    cases += 1;
    assert_eq!(cases, 14, "the grid has 13 in-cap pairs plus (C3, C3)");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "grid took {elapsed:?}");
    println!("[PASS] criterion 1: shield formula agrees with brute force on all {cases} grid cases in {elapsed:?}");
}

/// Criterion 2: the bundled fixture suite — every named boolean matches,
/// and the one documented-mismatch row reports EXPECTED-DISCREPANT.
#[test]
fn criterion_2_fixture_suite() {
    let file = fixtures::parse_fixture_file(fixtures::builtin("examples-7").unwrap()).unwrap();
    let report = fixtures::run_file(&file, varwreath_cli::Limits::default()).unwrap();
    assert_eq!(report.failed, 0, "failing rows: {:#?}", report.rows);
    assert_eq!(report.discrepant, 1, "exactly one documented-mismatch row");
    let discrepant_row = report
        .rows
        .iter()
        .find(|r| r.status == RowStatus::ExpectedDiscrepant)
        .unwrap();
    assert!(discrepant_row.name.contains("C3^inf x C2^7"));
    assert_eq!(report.passed + 1, report.rows.len());

    // The named booleans, asserted directly against the library as well.
    use varwreath_cli::inputs::parse_compact_shape;
    use varwreath_core::criteria::{criterion_finite, criterion_main};
    use varwreath_core::NilpotentProfile;
    let dihedral = NilpotentProfile::new(2, 4).unwrap();
    for (shape, want) in [
        ("C6", false),
        ("C3^inf x C2", false),
        ("C3 x C2^2", false),
        ("C3^2 x C2^2", false),
        ("C3^5 x C2^2", false),
        ("C3^inf x C2^7", false), // the documented-mismatch row, per this criterion
        ("unbounded", true),
    ] {
        let b = parse_compact_shape(shape).unwrap();
        assert_eq!(criterion_main(&dihedral, &b).holds, want, "{shape}");
    }
    let small = NilpotentProfile::new(2, 3).unwrap();
    for (shape, want) in [("C2", false), ("C2^2", true), ("C2^3", true)] {
        let b = parse_compact_shape(shape).unwrap();
        assert_eq!(criterion_finite(&small, &b).unwrap().holds, want, "{shape}");
    }
    println!("[PASS] criterion 2: fixture suite passes with the single expected-discrepant row");
}

/// Criterion 3: 1000 seeded random shapes and profiles with zero
/// mismatches between the criterion forms.
#[test]
fn criterion_3_criterion_cross_consistency() {
    let outcome = fuzz::consistency_fuzz(1000, SEED);
    assert_eq!(outcome.trials, 1000);
    assert!(outcome.clean(), "mismatches: {:#?}", outcome.mismatches);
    println!("[PASS] criterion 3: 1000 random consistency trials, zero mismatches");
}

/// Criterion 4: K_p-series and parameter spot values.
#[test]
fn criterion_4_kp_series_spot_values() {
    assert_eq!(
        kp_series(&mat(c(4)), 2).unwrap().term_orders(),
        vec![4, 2, 1]
    );

    let p = shield_params(&mat(c(2)), 2).unwrap();
    assert_eq!((p.depth(), p.a(), p.b()), (1, 2, 1));
    let p = shield_params(&mat(klein()), 2).unwrap();
    assert_eq!((p.depth(), p.a(), p.b()), (1, 3, 1));
    let p = shield_params(&mat(c(4)), 2).unwrap();
    assert_eq!((p.depth(), p.a(), p.b()), (2, 4, 2));
    println!("[PASS] criterion 4: K_p-series and parameter spot values");
}

/// Criterion 5: crossover value, bound domination on [5, 100], and
/// bound1 integrality over a 500-point randomized sweep.
#[test]
fn criterion_5_bound_crossover() {
    assert_eq!(crossover(1, 1, 3, 2, 1, 1).unwrap(), 5);
    for t in 5..=100 {
        let b1 = bound1(1, t, 3, 2, 1, 1).unwrap();
        let b2 = bound2(1, t, 1, 2, 1, 1).unwrap();
        assert!(
            varwreath_core::shield::Ratio::from_integer(b2) > b1,
            "t = {t}: bound2 {b2} does not exceed bound1 {b1}"
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..500 {
        let c_ = rng.gen_range(1..=20);
        let l = rng.gen_range(0..=30);
        let t = l + rng.gen_range(if l == 0 { 1..=50 } else { 0..=50 });
        let p = [2u64, 3, 5, 7, 11][rng.gen_range(0..5)];
        let v = rng.gen_range(1..=4);
        let alpha = rng.gen_range(1..=4);
        let b = bound1(c_, t, l, p, v, alpha).unwrap();
        assert!(b.is_integer(), "bound1({c_},{t},{l},{p},{v},{alpha}) = {b}");
    }
    println!(
        "[PASS] criterion 5: crossover at 5, domination on [5,100], 500-point integrality sweep"
    );
}

/// Criterion 6: engine property suite — axioms on every grid group, Sylow
/// order arithmetic on 20 random nilpotent expressions, LCS normality on
/// the suite groups of order <= 200.
#[test]
fn criterion_6_group_engine_properties() {
    let mut grid_groups: Vec<GroupExpr> = Vec::new();
    for bottom in [c(2), c(4), klein(), d4()] {
        for top in [c(2), c(4), klein(), GroupExpr::power(c(2), 3)] {
            let w = GroupExpr::wreath(bottom.clone(), top);
            if matches!(w.order(), Ok(n) if n <= CAP) {
                grid_groups.push(w);
            }
        }
    }
    grid_groups.push(GroupExpr::wreath(c(3), c(3)));

    // Axioms: identity/inverse on all elements, associativity on seeded
    // random triples.
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for expr in &grid_groups {
        let g = mat(expr.clone());
        let n = g.order() as usize;
        for e in g.elements() {
            assert_eq!(g.compose(e, g.identity()), e);
            assert_eq!(g.compose(g.identity(), e), e);
            assert_eq!(g.compose(e, g.invert(e)), g.identity());
        }
        for _ in 0..2000 {
            let (a, b, d) = (
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
            );
            assert_eq!(
                g.compose(g.compose(a, b), d),
                g.compose(a, g.compose(b, d)),
                "associativity in {expr}"
            );
        }
    }

    // Sylow orders on 20 random nilpotent expressions (direct products of
    // p-group blocks are nilpotent).
    let mut count = 0;
    while count < 20 {
        let mut parts = Vec::new();
        for &p in [2u64, 3, 5].iter().take(rng.gen_range(1..=3)) {
            let block = match rng.gen_range(0..4) {
                0 => c(p),
                1 => c(p * p),
                2 => GroupExpr::direct([c(p), c(p)]),
                _ => GroupExpr::wreath(c(p), c(p)),
            };
            parts.push(block);
        }
        let expr = GroupExpr::DirectProduct(parts);
        match expr.order() {
            Ok(n) if n <= 2048 => {}
            _ => continue,
        }
        let g = mat(expr.clone());
        for p in [2u64, 3, 5] {
            let sylow = g.sylow_subgroup(p).unwrap();
            let mut p_free = g.order();
            while p_free.is_multiple_of(p) {
                p_free /= p;
            }
            assert_eq!(sylow.order() * p_free, g.order(), "{expr} at {p}");
        }
        count += 1;
    }

    // LCS normality for the suite groups of order <= 200.
    for expr in &grid_groups {
        let g = mat(expr.clone());
        if g.order() > 200 {
            continue;
        }
        for term in g.lower_central_series() {
            assert!(term.is_normal(), "non-normal series term in {expr}");
        }
    }
    println!(
        "[PASS] criterion 6: axioms, Sylow arithmetic on 20 random nilpotent groups, LCS normality"
    );
}

/// Criterion 7: the order-8 dihedral and quaternion groups have identical
/// law sets over 2 variables up to length 6; runtime under 30 seconds.
#[test]
fn criterion_7_dihedral_quaternion_indistinguishable() {
    let start = Instant::now();
    let dihedral = mat(d4());
    let quaternion = TableGroup::quaternion();
    let report =
        compare_varieties_upto(&dihedral, &quaternion, 2, 6, varwreath_core::DEFAULT_BUDGET)
            .unwrap();
    assert_eq!(report.verdict, ComparisonVerdict::IndistinguishableUpTo(6));
    assert!(report.only_first.is_empty(), "{:?}", report.only_first);
    assert!(report.only_second.is_empty(), "{:?}", report.only_second);
    assert!(!report.both.is_empty());
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 30, "comparison took {elapsed:?}");
    println!(
        "[PASS] criterion 7: dihedral vs quaternion indistinguishable up to length 6 ({} shared laws) in {elapsed:?}",
        report.both.len()
    );
}
