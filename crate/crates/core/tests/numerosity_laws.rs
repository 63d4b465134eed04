//! Laws of count profiles, comparisons, and pairing audits: removing
//! elements strictly shrinks the running counts, comparison verdicts flip
//! symmetrically, and a perfect pairing beside disagreeing counts is
//! reported as exactly that.

use std::collections::BTreeSet;

use proptest::prelude::*;

use diaglab_core::numerosity::{
    compare_profiles, overall_verdict, pairing_audit, partial_counts, ComparisonVerdict,
    LabelledSet, MapExpr, PairingMap, SetExpr,
};

fn naturals() -> LabelledSet {
    LabelledSet::new("naturals", SetExpr::Naturals).unwrap()
}

fn residue(modulus: u64, residue: u64) -> LabelledSet {
    LabelledSet::new("residue", SetExpr::Residue { modulus, residue }).unwrap()
}

proptest! {
    // A proper part has strictly smaller running counts from the first
    // removed element on, and the comparison names the removed count.
    #[test]
    fn removing_elements_shrinks_the_counts_by_exactly_their_number(
        removed in proptest::collection::btree_set(1u64..=100, 1..=20),
    ) {
        let trimmed = LabelledSet::new(
            "trimmed",
            SetExpr::Remove {
                inner: Box::new(SetExpr::Naturals),
                elements: removed.clone(),
            },
        )
        .unwrap();
        let n_max = 1000u64;
        let whole_profile = partial_counts(&naturals(), n_max).unwrap();
        let part_profile = partial_counts(&trimmed, n_max).unwrap();

        let smallest = *removed.iter().next().unwrap();
        let largest = *removed.iter().next_back().unwrap();
        for n in smallest..=n_max {
            prop_assert!(part_profile.count_at(n) < whole_profile.count_at(n), "n = {}", n);
        }

        let comparison = compare_profiles(&whole_profile, &part_profile).unwrap();
        let ComparisonVerdict::DifferenceStabilizes { difference, since } = comparison.verdict
        else {
            return Err(TestCaseError::fail("expected a stabilized difference"));
        };
        prop_assert_eq!(difference, removed.len() as i64);
        prop_assert!(since <= largest);
    }

    // Swapping the sides of a comparison negates a difference and flips a
    // ratio.
    #[test]
    fn comparison_verdicts_flip_with_their_sides(modulus in 1u64..=8) {
        let n_max = 10_000u64;
        let left = partial_counts(&naturals(), n_max).unwrap();
        let right = partial_counts(&residue(modulus, 0), n_max).unwrap();
        let forward = compare_profiles(&left, &right).unwrap().verdict;
        let backward = compare_profiles(&right, &left).unwrap().verdict;
        match (forward, backward) {
            (
                ComparisonVerdict::DifferenceStabilizes { difference: d1, since: s1 },
                ComparisonVerdict::DifferenceStabilizes { difference: d2, since: s2 },
            ) => {
                prop_assert_eq!(d1, -d2);
                prop_assert_eq!(s1, s2);
            }
            (
                ComparisonVerdict::RatioConverges { numerator: p1, denominator: q1, .. },
                ComparisonVerdict::RatioConverges { numerator: p2, denominator: q2, .. },
            ) => {
                prop_assert_eq!((p1, q1), (q2, p2));
            }
            (forward, backward) => {
                return Err(TestCaseError::fail(format!(
                    "asymmetric verdicts: {forward:?} vs {backward:?}"
                )));
            }
        }
    }
}

#[test]
fn a_perfect_pairing_beside_disagreeing_counts_is_named_as_such() {
    let evens = residue(2, 0);
    let halve = PairingMap {
        name: "halve".to_string(),
        forward: MapExpr::Div(Box::new(MapExpr::Value), Box::new(MapExpr::Constant(2))),
    };
    let audit = pairing_audit(&halve, &evens, &naturals(), 200).unwrap();
    assert!(audit.is_perfect());
    assert_eq!(
        (audit.paired, audit.unpaired_in_from, audit.unpaired_in_to, audit.violations),
        (100, 0, 0, 0)
    );

    let comparison = compare_profiles(
        &partial_counts(&evens, 10_000).unwrap(),
        &partial_counts(&naturals(), 10_000).unwrap(),
    )
    .unwrap();
    assert!(matches!(
        comparison.verdict,
        ComparisonVerdict::RatioConverges { numerator: 1, denominator: 2, .. }
    ));

    let combined = overall_verdict(&audit, &comparison);
    assert_eq!(combined, ComparisonVerdict::BijectionEquinumerousOnly);
}

#[test]
fn doubling_into_the_evens_is_a_perfect_pairing_too() {
    let evens = residue(2, 0);
    let double = PairingMap {
        name: "double".to_string(),
        forward: MapExpr::Mul(Box::new(MapExpr::Constant(2)), Box::new(MapExpr::Value)),
    };
    let audit = pairing_audit(&double, &naturals(), &evens, 100).unwrap();
    assert!(audit.is_perfect());
    assert_eq!(audit.paired, 100);
    assert_eq!(audit.image_bound, Some(200));
}

#[test]
fn identity_into_a_superset_strands_the_complement() {
    let evens = residue(2, 0);
    let embed = PairingMap {
        name: "embed".to_string(),
        forward: MapExpr::Value,
    };
    let audit = pairing_audit(&embed, &evens, &naturals(), 200).unwrap();
    assert!(!audit.is_perfect());
    assert_eq!(audit.paired, 100);
    assert_eq!(audit.unpaired_in_to, 100);
    assert_eq!(audit.image_bound, Some(200));
}

#[test]
fn squares_against_naturals_fit_no_simple_shape() {
    let squares = LabelledSet::new("squares", SetExpr::Squares).unwrap();
    let comparison = compare_profiles(
        &partial_counts(&naturals(), 10_000).unwrap(),
        &partial_counts(&squares, 10_000).unwrap(),
    )
    .unwrap();
    assert_eq!(comparison.verdict, ComparisonVerdict::Inconclusive);
}

#[test]
fn removed_then_restored_elements_count_as_present() {
    let with_gap = LabelledSet::new(
        "with-gap",
        SetExpr::Add {
            inner: Box::new(SetExpr::Remove {
                inner: Box::new(SetExpr::Naturals),
                elements: BTreeSet::from([10]),
            }),
            elements: BTreeSet::from([10]),
        },
    )
    .unwrap();
    let profile = partial_counts(&with_gap, 20).unwrap();
    assert_eq!(profile.count_at(20), 20);
}
