//! Acceptance suite: one test per shipping criterion, each run end to end
//! through the same preset path the binary uses. Every test prints a single
//! summary line (visible with `--nocapture`); its pass/fail status is the
//! criterion's.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand_core::{RngCore, SeedableRng};

use diaglab_cli::{run_target, Report, StepPayload};
use diaglab_core::catalog;
use diaglab_core::census::{census_full_orderings, FiniteString, FiniteStringSet};
use diaglab_core::config::{parse_plan, Overrides, PlannedStep};
use diaglab_core::diagonal::{diagonal_digit, DiagonalRule, SizeVerdict};
use diaglab_core::digits::{Digit, PeriodicDigitString, Rational};
use diaglab_core::list::{GeneratorFamily, ListSpec, TransfiniteList};
use diaglab_core::numerosity::{ComparisonVerdict, RatioExactness};

fn timed(target: &str) -> (Report, Duration) {
    let start = Instant::now();
    let report = run_target(target, &Overrides::default())
        .unwrap_or_else(|error| panic!("{target}: {error}"));
    (report, start.elapsed())
}

fn pass(criterion: u8, line: &str) {
    println!("criterion {criterion:02} PASS: {line}");
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

#[test]
fn criterion_01_extended_set_diagonal_is_certified_at_omega() {
    let (report, elapsed) = timed("paper-extended-set");
    let StepPayload::Diagonal(step) = &report.steps[0].payload else {
        panic!("first step should be the diagonal");
    };
    let value = step.report.detected.as_ref().expect("value should be detected");
    assert_eq!(value.to_string(), "0.[1]");
    assert_eq!(
        format!("{:?}", step.report.certification),
        "ProvedByFamily",
        "certification should come from the closed form"
    );
    let membership = step.report.membership.expect("value should be in the list");
    assert_eq!(membership.to_string(), "omega");
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    pass(1, "extended-set diagonal is 0.[1], proved by family, member at omega");
}

#[test]
fn criterion_02_extended_set_partials_sit_five_positions_down() {
    let (report, elapsed) = timed("paper-extended-set");
    let StepPayload::Induction(step) = &report.steps[1].payload else {
        panic!("second step should be the induction trace");
    };
    assert_eq!(step.n_max, 10_000);
    assert_eq!(step.verdict, SizeVerdict::Offset { offset: 5 });
    assert_eq!(step.evidence, (1, 10_000));
    assert_eq!(step.positions.len(), 10_000);
    for (i, position) in step.positions.iter().enumerate() {
        let n = i as u64 + 1;
        assert_eq!(*position, Some(n + 5), "partial D({n})");
    }
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    pass(2, "every D(n) up to n = 10^4 found at n + 5, verdict offset(5)");
}

#[test]
fn criterion_03_interleaved_partials_double_and_the_value_sits_at_omega_plus_one() {
    let (report, _) = timed("paper-interleaved-set");
    let StepPayload::Diagonal(diagonal) = &report.steps[0].payload else {
        panic!("first step should be the diagonal");
    };
    let membership = diagonal.report.membership.expect("value should be in the list");
    assert_eq!(membership.to_string(), "omega+1");
    let StepPayload::Induction(step) = &report.steps[1].payload else {
        panic!("second step should be the induction trace");
    };
    assert_eq!(step.n_max, 10_000);
    assert_eq!(
        step.verdict,
        SizeVerdict::Ratio { numerator: 2, denominator: 1 }
    );
    for (i, position) in step.positions.iter().enumerate() {
        let n = i as u64 + 1;
        assert_eq!(*position, Some(2 * n), "partial D({n})");
    }
    pass(3, "interleaved D(n) found at 2n, verdict ratio(2), member at omega+1");
}

#[test]
fn criterion_04_spike_insertions_shift_the_offset_by_their_count() {
    let (report, _) = timed("paper-spike-offsets");
    let expected = [1u64, 3, 7];
    assert_eq!(report.steps.len(), expected.len());
    for (step, m) in report.steps.iter().zip(expected) {
        let StepPayload::Induction(trace) = &step.payload else {
            panic!("{} should be an induction trace", step.name);
        };
        assert_eq!(trace.n_max, 1_000);
        assert_eq!(trace.verdict, SizeVerdict::Offset { offset: m }, "{}", step.name);
        for (i, position) in trace.positions.iter().enumerate() {
            let n = i as u64 + 1;
            assert_eq!(*position, Some(n + m), "{}: partial D({n})", step.name);
        }
    }
    pass(4, "m spikes in front give verdict offset(m) for m in {1, 3, 7}");
}

#[test]
fn criterion_05_relisted_original_set_never_contains_its_diagonal() {
    let (report, _) = timed("paper-original-set");
    let StepPayload::Diagonal(limit_order) = &report.steps[0].payload else {
        panic!("first step should be the limit-order diagonal");
    };
    assert_eq!(limit_order.report.membership, None);
    let StepPayload::Diagonal(relisted) = &report.steps[1].payload else {
        panic!("second step should be the relisted diagonal");
    };
    let value = relisted.report.detected.as_ref().expect("value should be detected");
    assert_eq!(value.to_string(), "0.0[1]");
    assert_eq!(relisted.report.membership, None, "value should be in no position");
    pass(5, "relisted original set yields 0.0[1], a member of no position");
}

#[test]
fn criterion_06_rat_census_counts_match_in_both_exhaustive_modes() {
    let (report, elapsed) = timed("paper-rat-census");
    let StepPayload::Census(full) = &report.steps[0].payload else {
        panic!("first step should be the full census");
    };
    let StepPayload::Census(prefixes) = &report.steps[1].payload else {
        panic!("second step should be the prefix census");
    };
    assert_eq!(full.total_orderings, big(40_320));
    assert_eq!(full.orderings_with_member_diagonal, big(5_760));
    assert_eq!(full.member_fraction, "1/7");
    assert_eq!(full.per_target["11111"], big(720));
    assert_eq!(prefixes.total_orderings, full.total_orderings);
    assert_eq!(
        prefixes.orderings_with_member_diagonal,
        full.orderings_with_member_diagonal
    );
    assert_eq!(prefixes.member_fraction, full.member_fraction);
    assert_eq!(prefixes.per_target, full.per_target);
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    pass(6, "40,320 orderings, 5,760 member (720 per target), modes agree exactly");
}

#[test]
fn criterion_07_complete_sets_always_member_and_size_n_sets_never() {
    let (report, _) = timed("paper-definitive-sizes");
    let StepPayload::Census(two) = &report.steps[0].payload else {
        panic!("first step should be the exhaustive census of the full length-2 set");
    };
    assert_eq!(two.set_size, 4);
    assert_eq!(two.total_orderings, big(24));
    assert_eq!(two.orderings_with_member_diagonal, big(24));
    assert_eq!(two.member_fraction, "1");

    let StepPayload::Census(three) = &report.steps[1].payload else {
        panic!("second step should be the prefix census of the full length-3 set");
    };
    assert_eq!(three.set_size, 8);
    assert_eq!(three.n_digits, 3);
    assert_eq!(three.member_fraction, "1");
    assert_eq!(three.orderings_with_member_diagonal, three.total_orderings);
    let completions_each = big(1 * 2 * 3 * 4 * 5);
    assert_eq!(
        &three.total_orderings / &completions_each,
        big(336),
        "8 * 7 * 6 ordered prefixes should have been examined"
    );

    let StepPayload::Census(squares) = &report.steps[2].payload else {
        panic!("third step should be the exhaustive census of a square set");
    };
    assert_eq!(squares.orderings_with_member_diagonal, big(0));
    assert_eq!(squares.member_fraction, "0");

    let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(7);
    for len in 2u8..=5 {
        for _ in 0..5 {
            let mut bits: Vec<u32> = Vec::new();
            while bits.len() < len as usize {
                let candidate = rng.next_u32() & ((1 << len) - 1);
                if !bits.contains(&candidate) {
                    bits.push(candidate);
                }
            }
            let elements: Vec<FiniteString> = bits
                .iter()
                .map(|&b| FiniteString::from_bits(b, len).unwrap())
                .collect();
            let set = FiniteStringSet::new("square", elements).unwrap();
            let census = census_full_orderings(&set, &DiagonalRule::swap_zero_one()).unwrap();
            assert_eq!(
                census.orderings_with_member_diagonal,
                big(0),
                "length {len}, elements {bits:?}"
            );
        }
    }
    pass(7, "full 2^n sets are member for every ordering, size-n sets for none");
}

#[test]
fn criterion_08_halving_pairs_perfectly_and_identity_strands_the_odds() {
    let (report, _) = timed("paper-evens-pairing");
    let StepPayload::Audit(halving) = &report.steps[0].payload else {
        panic!("first step should be the halving audit");
    };
    assert_eq!(halving.audit.n_max, 200);
    assert_eq!(halving.audit.paired, 100);
    assert_eq!(halving.audit.unpaired_in_from, 0);
    assert_eq!(halving.audit.unpaired_in_to, 0);
    assert_eq!(halving.audit.violations, 0);
    assert_eq!(halving.audit.image_bound, Some(100));
    assert!(halving.audit.is_perfect());

    let StepPayload::Audit(identity) = &report.steps[1].payload else {
        panic!("second step should be the identity audit");
    };
    assert_eq!(identity.audit.paired, 100);
    assert_eq!(identity.audit.unpaired_in_from, 0);
    assert_eq!(identity.audit.unpaired_in_to, 100);
    assert_eq!(identity.audit.violations, 0);
    assert_eq!(identity.audit.image_bound, Some(200));
    pass(8, "n/2 pairs the evens onto 1..100; the identity leaves the 100 odds unpaired");
}

#[test]
fn criterion_09_count_profiles_give_a_difference_and_a_ratio() {
    let (report, _) = timed("paper-count-profiles");
    let StepPayload::Profiles(trimmed) = &report.steps[0].payload else {
        panic!("first step should be the trimmed-set comparison");
    };
    assert_eq!(trimmed.comparison.n_max, 10_000);
    assert!(
        matches!(
            trimmed.comparison.verdict,
            ComparisonVerdict::DifferenceStabilizes { difference: 5, .. }
        ),
        "got {:?}",
        trimmed.comparison.verdict
    );

    let StepPayload::Profiles(evens) = &report.steps[1].payload else {
        panic!("second step should be the evens comparison");
    };
    match &evens.comparison.verdict {
        ComparisonVerdict::RatioConverges {
            numerator: 2,
            denominator: 1,
            exactness: RatioExactness::Asymptotic { exact_on, .. },
        } => {
            let class = exact_on.expect("the ratio should be exact on a residue class");
            assert_eq!(
                (class.modulus, class.residue),
                (2, 0),
                "exactness should hold on the even window ends"
            );
        }
        other => panic!("expected an asymptotic 2:1 ratio, got {other:?}"),
    }
    pass(9, "minus-5 stabilizes at difference 5; evens converge to 2:1, exact on even N");
}

fn assert_differs_everywhere(list: &TransfiniteList, positions: u64) {
    let rule = DiagonalRule::swap_zero_one();
    for n in 1..=positions {
        let row = list.row_digit(n, n).unwrap();
        let rewritten = diagonal_digit(list, &rule, n).unwrap();
        assert_ne!(
            rewritten, row,
            "'{}': the diagonal matches row {n} at position {n}",
            list.name()
        );
    }
}

fn random_list(rng: &mut rand_chacha::ChaCha20Rng, index: usize) -> TransfiniteList {
    let ladder = |n: u64| {
        let numerator = BigUint::from(10u32).pow(n as u32) - 1u32;
        let denominator = BigUint::from(9u32) * BigUint::from(10u32).pow(n as u32);
        PeriodicDigitString::from_rational(&Rational::new(numerator, denominator).unwrap(), 10)
            .unwrap()
    };
    let generator = if index % 2 == 0 {
        GeneratorFamily::Strided {
            inner: Box::new(GeneratorFamily::Spike {
                gap: rng.next_u32() as u64 % 6 + 1,
            }),
            start: rng.next_u32() as u64 % 4 + 1,
            step: rng.next_u32() as u64 % 3 + 1,
        }
    } else {
        GeneratorFamily::Shifted {
            inner: Box::new(GeneratorFamily::GeometricOnes),
            offset: rng.next_u32() as u64 % 8 + 5,
        }
    };
    let prefix = (1..=rng.next_u32() as u64 % 5).map(ladder).collect();
    let mut tail = vec![PeriodicDigitString::parse("0.[1]", 10).unwrap()];
    if rng.next_u32() % 2 == 0 {
        tail.insert(0, PeriodicDigitString::zero(10).unwrap());
    }
    TransfiniteList::build(ListSpec {
        name: format!("randomized-{index}"),
        base: 10,
        alphabet: [Digit::ZERO, Digit::ONE].into_iter().collect(),
        prefix,
        generator,
        tail,
        horizon: 256,
    })
    .unwrap()
}

#[test]
fn criterion_10_property_suites_hold() {
    for q in 2u64..=200 {
        for p in 1..q {
            let value = Rational::new(big(p), big(q)).unwrap();
            let digits = PeriodicDigitString::from_rational(&value, 10).unwrap();
            let reparsed = PeriodicDigitString::parse(&digits.to_string(), 10).unwrap();
            assert_eq!(reparsed, digits, "{p}/{q} reparsed differently");
            assert_eq!(reparsed.to_rational(), value, "{p}/{q} changed value");
        }
    }

    let mut built_in = vec![
        catalog::ones_ladder(0).unwrap(),
        catalog::ones_ladder(5).unwrap(),
        catalog::alternating_pairs().unwrap(),
    ];
    let mut seen: BTreeSet<String> = built_in.iter().map(|l| l.name().to_string()).collect();
    for preset in [
        "paper-original-set",
        "paper-extended-set",
        "paper-interleaved-set",
        "paper-spike-offsets",
    ] {
        let source = diaglab_cli::load_target(preset).unwrap();
        let plan = parse_plan(&source, &Overrides::default()).unwrap();
        for step in plan.steps {
            let (PlannedStep::Diagonal { list, .. } | PlannedStep::Induction { list, .. }) = step
            else {
                continue;
            };
            if seen.insert(list.name().to_string()) {
                built_in.push(list);
            }
        }
    }
    assert!(built_in.len() >= 9, "expected the full roster of built-in lists");
    for list in &built_in {
        assert_differs_everywhere(list, 2_000);
    }
    let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(10);
    for index in 0..200 {
        assert_differs_everywhere(&random_list(&mut rng, index), 2_000);
    }

    let (report, _) = timed("paper-rat-census");
    let StepPayload::Census(full) = &report.steps[0].payload else {
        panic!("first step should be the full census");
    };
    let StepPayload::Census(prefixes) = &report.steps[1].payload else {
        panic!("second step should be the prefix census");
    };
    assert_eq!(full.per_target, prefixes.per_target);
    assert_eq!(
        full.orderings_with_member_diagonal,
        prefixes.orderings_with_member_diagonal
    );
    pass(
        10,
        "round trips to q = 200, diagonals differ everywhere on 209 lists, censuses agree",
    );
}
