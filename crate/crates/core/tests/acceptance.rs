//! Acceptance suite: one test per criterion, each printing a PASS line
//! with the measured values once its assertions hold.
//!
//! Run with `cargo test -p coverings-core --test acceptance -- --nocapture`
//! to see the per-criterion lines.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::Zero;

use coverings_core::construct::{self, CounterexampleSpec};
use coverings_core::corpus::corpus_entry;
use coverings_core::count::{self, MinimalityPolicy};
use coverings_core::search::{self, CoveringNumberStatus, PrimitivityStatus};
use coverings_core::structure;
use coverings_core::verify::{self, Strategy};
use coverings_core::{Error, FactoredInteger, ModuliSet};

const COVERING_ENTRIES: [&str; 7] = [
    "erdos12",
    "exampleB",
    "exampleC",
    "exampleC_hat",
    "C1",
    "C2",
    "C3",
];

fn m80() -> ModuliSet {
    corpus_entry("M80").unwrap().moduli().unwrap().clone()
}

#[test]
fn acceptance_01_corpus_verification() {
    for name in COVERING_ENTRIES {
        let entry = corpus_entry(name).unwrap();
        let report = verify::is_covering(entry.covering().unwrap(), Strategy::Bitset).unwrap();
        assert!(report.is_covering, "{name} did not verify as a covering");
        assert_eq!(report.period, entry.lcm.value(), "{name} period mismatch");
    }
    let c3 = corpus_entry("C3").unwrap();
    let start = Instant::now();
    let report = verify::is_covering(c3.covering().unwrap(), Strategy::Bitset).unwrap();
    let elapsed = start.elapsed();
    assert!(report.is_covering);
    assert_eq!(report.period, 28_639_232);
    assert!(
        elapsed < Duration::from_secs(5),
        "C3 bitset verification took {elapsed:?}, budget 5s"
    );
    println!("ACCEPTANCE 1 PASS: all 7 corpus coverings verify; C3 (period 28,639,232) in {elapsed:?}");
}

#[test]
fn acceptance_02_minimality_of_the_lcm_120_examples() {
    let b = corpus_entry("exampleB").unwrap();
    assert!(verify::is_minimal(b.covering().unwrap()).unwrap().is_minimal);

    let c = corpus_entry("exampleC").unwrap();
    let report = verify::is_minimal(c.covering().unwrap()).unwrap();
    assert!(!report.is_minimal);
    let removable: Vec<(i64, i64)> = report
        .removable
        .iter()
        .map(|k| (k.residue(), k.modulus()))
        .collect();
    assert_eq!(removable, vec![(0, 40), (0, 120)], "removable set must be exact");

    let c_hat = corpus_entry("exampleC_hat").unwrap();
    assert!(verify::is_minimal(c_hat.covering().unwrap()).unwrap().is_minimal);
    println!("ACCEPTANCE 2 PASS: exampleB minimal; exampleC removable exactly {{(0,40),(0,120)}}; exampleC_hat minimal");
}

#[test]
fn acceptance_03_counting_the_reference_moduli_set() {
    let formula = count::count_by_formula(&m80(), MinimalityPolicy::Assert).unwrap();
    assert_eq!(formula.count, 1920u32.into());

    let start = Instant::now();
    let brute = count::count_by_enumeration(&m80(), u64::MAX).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(brute.count, 1920u32.into());
    assert_eq!(formula.count, brute.count);
    assert!(
        elapsed < Duration::from_secs(60),
        "enumeration took {elapsed:?}, budget 60s"
    );
    println!("ACCEPTANCE 3 PASS: formula = enumeration = 1920 over {{2,4,5,8,10,16,20,40,80}}; enumeration in {elapsed:?}");
}

#[test]
fn acceptance_04_counting_oracle_agreement_for_12() {
    let m12 = ModuliSet::new(vec![2, 3, 4, 6, 12]).unwrap();
    // The enumeration oracle establishes the value first.
    let brute = count::count_by_enumeration(&m12, u64::MAX).unwrap();
    assert_eq!(brute.count, 24u32.into());
    let formula = count::count_by_formula(&m12, MinimalityPolicy::Verify { budget: 100_000_000 }).unwrap();
    assert_eq!(formula.count, brute.count);
    println!("ACCEPTANCE 4 PASS: formula = enumeration = 24 over the divisors > 1 of 12");
}

#[test]
fn acceptance_05_covering_number_decisions() {
    let budget = search::DEFAULT_SEARCH_BUDGET;
    let start = Instant::now();

    let twelve = FactoredInteger::factorize(12).unwrap();
    let outcome = search::is_covering_number(&twelve, budget).unwrap();
    assert!(matches!(outcome.status, CoveringNumberStatus::CoveringNumber { .. }));
    for d in [2i64, 3, 4, 6] {
        let f = FactoredInteger::factorize(d).unwrap();
        let outcome = search::is_covering_number(&f, budget).unwrap();
        assert_eq!(
            outcome.status,
            CoveringNumberStatus::NotCoveringNumber,
            "divisor {d} of 12"
        );
    }
    let outcome = search::is_primitive_covering_number(&twelve, budget).unwrap();
    assert_eq!(outcome.status, PrimitivityStatus::Primitive);

    let forty = FactoredInteger::factorize(40).unwrap();
    let outcome = search::is_covering_number(&forty, budget).unwrap();
    assert_eq!(outcome.status, CoveringNumberStatus::NotCoveringNumber);

    let eighty = FactoredInteger::factorize(80).unwrap();
    let outcome = search::is_covering_number(&eighty, budget).unwrap();
    assert!(matches!(outcome.status, CoveringNumberStatus::CoveringNumber { .. }));
    let outcome = search::is_primitive_covering_number(&eighty, budget).unwrap();
    assert_eq!(outcome.status, PrimitivityStatus::Primitive);

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(600), "took {elapsed:?}, budget 10min");
    println!("ACCEPTANCE 5 PASS: 12 covering+primitive, its proper divisors not, 40 not, 80 covering+primitive, in {elapsed:?}");
}

#[test]
fn acceptance_06_sufficiency_condition() {
    for l in [
        2i64.pow(8) * 11 * 13,
        2i64.pow(14) * 17 * 19,
        2i64.pow(16) * 19 * 23,
    ] {
        let f = FactoredInteger::factorize(l).unwrap();
        assert!(
            !search::sun_sufficient(&f).unwrap().sufficient,
            "{l} must fail the sufficiency inequality"
        );
    }
    for l in [12i64, 24, 36, 80] {
        let f = FactoredInteger::factorize(l).unwrap();
        assert!(search::sun_sufficient(&f).unwrap().sufficient, "{l}");
    }
    for primes in [vec![2i64, 3], vec![2, 5], vec![2, 3, 7], vec![2, 5, 13], vec![2, 3, 7, 43]] {
        let member = construct::sun_primitive(&primes).unwrap();
        assert!(
            search::sun_sufficient(&member.value).unwrap().sufficient,
            "family member over {primes:?}"
        );
    }
    println!("ACCEPTANCE 6 PASS: sufficiency false for the three counterexample lcms, true for 12/24/36/80 and all tested family members");
}

#[test]
fn acceptance_07_delta_three_counterexamples() {
    let specs: Vec<CounterexampleSpec> = construct::counterexample_scan(3, 100)
        .unwrap()
        .take(3)
        .collect();
    let values: Vec<i64> = specs.iter().map(|s| s.l.value()).collect();
    assert_eq!(
        values,
        vec![
            2i64.pow(8) * 11 * 13,
            2i64.pow(14) * 17 * 19,
            2i64.pow(16) * 19 * 23,
        ]
    );
    for spec in &specs {
        assert!(spec.slack >= 1, "slack must be strictly positive");
        let report = construct::counterexample_report(spec).unwrap();
        assert!(report.verification.is_covering);
        assert!(!report.sun_check.sufficient);
        assert!(!report.unused_divisors.is_empty());
    }
    println!("ACCEPTANCE 7 PASS: delta=3 scan yields 2^8·11·13, 2^14·17·19, 2^16·19·23; all build, verify, and leave divisors unused with slack ≥ 1");
}

#[test]
fn acceptance_08_large_period_verification() {
    let (spec, _) = construct::find_counterexample_primes(4, 100).unwrap();
    assert_eq!(spec.l.value(), 2i64.pow(25) * 29 * 31);
    let covering = construct::build_counterexample_covering(&spec).unwrap();

    let start = Instant::now();
    let report = verify::is_covering(&covering, Strategy::CrtTree).unwrap();
    let elapsed = start.elapsed();
    assert!(report.is_covering);
    assert_eq!(report.period, 30_165_434_368);
    assert!(
        elapsed < Duration::from_secs(60),
        "CRT verification took {elapsed:?}, budget 60s"
    );

    let refusal = verify::is_covering(&covering, Strategy::Bitset).unwrap_err();
    assert!(matches!(refusal, Error::SieveBudgetExceeded { .. }));
    println!("ACCEPTANCE 8 PASS: delta=4 covering (period ≈ 3.0×10^10) verifies via crt_tree in {elapsed:?}; bitset refuses on budget");
}

#[test]
fn acceptance_09_structural_properties_over_enumerated_coverings() {
    let m80 = m80();
    let l80 = FactoredInteger::factorize(80).unwrap();

    let required = structure::required_divisors(&l80).unwrap();
    assert_eq!(required.as_slice(), &[2, 4, 8]);
    assert!(m80.is_superset_of(&required));

    let sample = count::enumerate_coverings(&m80, 100, u64::MAX).unwrap();
    assert_eq!(sample.len(), 100);
    for covering in &sample {
        let table = structure::lambda_table(covering, &l80).unwrap();
        assert_eq!(table.final_lambda(), 0);

        let partition = structure::partition(covering, &l80).unwrap();
        let total: usize = partition.cells().values().map(|v| v.len()).sum();
        assert_eq!(total, covering.len(), "partition must be exhaustive");
        let mut seen: Vec<_> = partition.cells().values().flatten().copied().collect();
        seen.sort_by_key(|c| c.modulus());
        assert_eq!(seen, covering.as_slice(), "partition must be disjoint");

        let report = structure::check_hole_lemmas(&table, true);
        for record in &report.records {
            assert!(
                record.holds,
                "hole identity {record:?} failed on an enumerated minimal covering"
            );
        }
    }
    println!("ACCEPTANCE 9 PASS: 100 enumerated coverings of the 80-divisor set: final hole count 0, partitions exhaustive/disjoint, all hole identities hold; required divisors {{2,4,8}} present");
}

/// Oracle equivalence swept over every minimal moduli set with lcm 12 or
/// 80 (subsets of the divisor lattices, exhaustive search per subset).
#[test]
fn acceptance_09b_formula_matches_enumeration_on_all_minimal_sets() {
    let budget = 200_000_000u64;
    let mut checked = 0usize;
    for lcm_target in [12i64, 80] {
        let divisors = FactoredInteger::factorize(lcm_target).unwrap().divisors(true);
        let n = divisors.len();
        for mask in 1u32..(1 << n) {
            let subset: Vec<i64> = (0..n)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| divisors[i])
                .collect();
            let m = ModuliSet::new(subset).unwrap();
            if m.lcm().unwrap().value() != lcm_target {
                continue;
            }
            if count::is_minimal_moduli_set(&m, budget).unwrap()
                != count::ModuliSetMinimality::Minimal
            {
                continue;
            }
            let formula = count::count_by_formula(&m, MinimalityPolicy::Assert).unwrap();
            let brute = count::count_by_enumeration(&m, u64::MAX).unwrap();
            assert_eq!(formula.count, brute.count, "disagreement on {:?}", m.as_slice());
            assert!(formula.count > BigUint::zero());
            checked += 1;
        }
    }
    assert!(checked >= 2, "expected at least the two full divisor sets");
    println!("ACCEPTANCE 9b PASS: formula = enumeration on all {checked} minimal moduli sets with lcm 12 or 80");
}
