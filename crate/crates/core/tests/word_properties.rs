//! Law-oracle properties: free reduction preserves values, laws descend to
//! subgroups, and the enumeration canon is what it says it is.

use proptest::prelude::*;

use varwreath_core::oracle::{compare_varieties_upto, is_law, laws_up_to, DEFAULT_BUDGET};
use varwreath_core::{ConcreteGroup, GroupExpr, ReducedWord, Word};

fn mat(expr: GroupExpr) -> ConcreteGroup {
    ConcreteGroup::materialize(expr, 20_000).unwrap()
}

fn arb_word() -> impl Strategy<Value = Word> {
    let leaf = (1u32..=2).prop_map(Word::Var);
    leaf.prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|w| Word::Inverse(Box::new(w))),
            prop::collection::vec(inner.clone(), 1..=3).prop_map(Word::Product),
            (inner.clone(), -4i64..=4).prop_map(|(w, k)| w.pow(k)),
            (inner.clone(), inner).prop_map(|(u, w)| Word::commutator(u, w)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Free reduction never changes the value of a word, so it never
    /// changes law-hood either.
    #[test]
    fn reduction_preserves_evaluation(w in arb_word(), a in 0usize..8, b in 0usize..8) {
        let g = mat(GroupExpr::wreath(GroupExpr::cyclic(2), GroupExpr::cyclic(2)));
        if let Some(reduced) = ReducedWord::from_word(&w, 4096) {
            let asgn = [a, b];
            prop_assert_eq!(w.evaluate(&g, &asgn), reduced.evaluate(&g, &asgn));
        }
    }

    #[test]
    fn reduction_preserves_lawhood(w in arb_word()) {
        let g = mat(GroupExpr::direct([GroupExpr::cyclic(2), GroupExpr::cyclic(4)]));
        if let Some(reduced) = ReducedWord::from_word(&w, 4096) {
            let direct = is_law(&w, &g, DEFAULT_BUDGET).unwrap();
            let via_reduced = is_law(&reduced.to_word(), &g, DEFAULT_BUDGET).unwrap();
            prop_assert_eq!(direct, via_reduced, "{}", w);
        }
    }
}

#[test]
fn laws_descend_to_subgroups() {
    // Laws of G hold in every subgroup of G.
    let g = mat(GroupExpr::wreath(
        GroupExpr::cyclic(2),
        GroupExpr::cyclic(2),
    ));
    let laws = laws_up_to(&g, 2, 4, DEFAULT_BUDGET).unwrap();
    assert!(!laws.is_empty(), "D_4 satisfies x1^4 within the window");
    for gens in [vec![1], vec![5], vec![1, 5], vec![3, 6]] {
        let sub = g.subgroup_generated(gens);
        let view = sub.as_group();
        for law in &laws {
            assert!(
                is_law(&law.to_word(), &view, DEFAULT_BUDGET).unwrap(),
                "law {law} of the group fails in a subgroup of order {}",
                sub.order()
            );
        }
    }
}

#[test]
fn enumeration_is_by_length_then_lexicographic() {
    let g = mat(GroupExpr::cyclic(2));
    let laws = laws_up_to(&g, 1, 4, DEFAULT_BUDGET).unwrap();
    // Reduced words over one variable are x1^±k; the exponent-2 laws up to
    // length 4 are exactly x1^2, x1^-2, x1^4, x1^-4.
    let expect: Vec<ReducedWord> = ["x1^2", "x1^-2", "x1^4", "x1^-4"]
        .iter()
        .map(|s| ReducedWord::from_word(&Word::parse(s).unwrap(), 10).unwrap())
        .collect();
    assert_eq!(laws, expect);
}

#[test]
fn enumerated_words_are_reduced_and_complete() {
    // Over 2 variables there are 4·3^(L-1) reduced words of length L.
    let g = mat(GroupExpr::cyclic(1));
    let laws = laws_up_to(&g, 2, 3, DEFAULT_BUDGET).unwrap();
    assert_eq!(laws.len(), 4 + 12 + 36, "every word is a law of C1");
    for w in &laws {
        for pair in w.letters().windows(2) {
            assert!(!pair[0].is_inverse_of(pair[1]), "unreduced word {w}");
        }
    }
}

#[test]
fn comparison_report_partitions_the_law_sets() {
    let g1 = mat(GroupExpr::cyclic(4));
    let g2 = mat(GroupExpr::direct([
        GroupExpr::cyclic(2),
        GroupExpr::cyclic(2),
    ]));
    let report = compare_varieties_upto(&g1, &g2, 1, 4, DEFAULT_BUDGET).unwrap();
    // x1^2 is a law of C2^2 only; x1^4 of both.
    assert!(report.only_first.is_empty());
    let squared = ReducedWord::from_word(&Word::parse("x1^2").unwrap(), 10).unwrap();
    assert!(report.only_second.contains(&squared));
    let fourth = ReducedWord::from_word(&Word::parse("x1^4").unwrap(), 10).unwrap();
    assert!(report.both.contains(&fourth));
    // The three sets are pairwise disjoint.
    for w in &report.only_first {
        assert!(!report.only_second.contains(w) && !report.both.contains(w));
    }
    for w in &report.only_second {
        assert!(!report.both.contains(w));
    }
}

#[test]
fn budget_errors_name_the_need() {
    let g = mat(GroupExpr::cyclic(64));
    match laws_up_to(&g, 3, 6, 1000) {
        Err(varwreath_core::OracleError::BudgetExceeded { needed, budget }) => {
            assert!(needed > budget);
            assert_eq!(budget, 1000);
        }
        other => panic!("unexpected: {other:?}"),
    }
}
