//! Constructions: the classical family of primitive covering numbers
//! generated from a chain of primes, and explicit coverings for numbers
//! of the form `2^(q-δ)·q·q'` (consecutive primes `q < q'`) that are
//! covering numbers yet fail the sufficiency inequality.
//!
//! The counterexample covering is built in four stages:
//!
//! 1. the 2-adic ladder `2^{i-1} mod 2^i` for `i = 1..n`, which covers
//!    everything except the class `0 mod 2^n`;
//! 2. moduli `2^j·q` for `j = 0..n`, each clearing the residue class
//!    `j mod q` inside that hole, leaving `δ−1` holes;
//! 3. moduli `2^j·q'` for `j = 0..n`, each clearing the class `j mod q'`
//!    across all remaining holes simultaneously;
//! 4. moduli `2^j·q·q'` assigned to the leftover `(u mod q, v mod q')`
//!    sub-holes in lexicographic order.
//!
//! The qualifying-pair inequality guarantees stage 4 never runs out of
//! moduli, with at least one divisor of the lcm left unused.

use serde::Serialize;

use crate::arith::{checked_pow, crt_pair, is_prime, next_prime_after};
use crate::error::{Error, Result};
use crate::search::{self, SunCheck};
use crate::types::{Congruence, CongruenceSet, FactoredInteger};
use crate::verify::{self, Strategy, VerificationReport};

/// A member of the prime-chain family of primitive covering numbers:
/// primes `2 = p_1 < … < p_r` with `p_{t+1} ≡ 1 (mod p_t − 1)` for
/// `t ≤ r−2` and `p_r ≥ (p_{r-1}−2)(p_{r-1}−3)`, carrying the exponents
///
/// ```text
/// a_i = (p_{i+1}−1)/(p_i−1) − 1   for i ≤ r−2
/// a_{r-1} = ⌊(p_r−1)/(p_{r-1}−1)⌋
/// a_r = 1
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SunFamilyMember {
    pub primes: Vec<i64>,
    pub exponents: Vec<u32>,
    #[serde(skip)]
    pub value: FactoredInteger,
}

/// Builds the family member over the given ascending primes, checking
/// every hypothesis and naming the one that fails.
pub fn sun_primitive(primes: &[i64]) -> Result<SunFamilyMember> {
    let r = primes.len();
    if r < 2 {
        return Err(Error::FamilyHypothesis(
            "at least two primes are required (r > 1)".into(),
        ));
    }
    for &p in primes {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
    }
    if primes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::FamilyHypothesis(
            "primes must be strictly ascending".into(),
        ));
    }
    if primes[0] != 2 {
        return Err(Error::FamilyHypothesis("the first prime must be 2".into()));
    }
    for i in 0..r.saturating_sub(2) {
        if (primes[i + 1] - 1) % (primes[i] - 1) != 0 {
            return Err(Error::FamilyHypothesis(format!(
                "{} is not congruent to 1 modulo {} - 1",
                primes[i + 1],
                primes[i]
            )));
        }
    }
    let bound = (primes[r - 2] - 2) * (primes[r - 2] - 3);
    if primes[r - 1] < bound {
        return Err(Error::FamilyHypothesis(format!(
            "last prime {} is below the bound ({} - 2)({} - 3) = {bound}",
            primes[r - 1],
            primes[r - 2],
            primes[r - 2]
        )));
    }

    let mut exponents = Vec::with_capacity(r);
    for i in 0..r - 2 {
        let a = (primes[i + 1] - 1) / (primes[i] - 1) - 1;
        debug_assert!(a >= 1, "ascending primes force a positive exponent");
        exponents.push(a as u32);
    }
    exponents.push(((primes[r - 1] - 1) / (primes[r - 2] - 1)) as u32);
    exponents.push(1);

    let value = FactoredInteger::from_factors(
        primes.iter().copied().zip(exponents.iter().copied()).collect(),
    )?;
    Ok(SunFamilyMember {
        primes: primes.to_vec(),
        exponents,
        value,
    })
}

/// Recognizes whether `l` is a member of the family: the member built
/// from its primes must reproduce `l` exactly.
pub fn sun_family_member_of(l: &FactoredInteger) -> Result<SunFamilyMember> {
    let primes: Vec<i64> = l.factors().iter().map(|&(p, _)| p).collect();
    let member = sun_primitive(&primes).map_err(|e| Error::NotInFamily {
        value: l.value(),
        reason: e.to_string(),
    })?;
    if member.value.value() != l.value() {
        return Err(Error::NotInFamily {
            value: l.value(),
            reason: format!(
                "exponents do not match the family member {} over the same primes",
                member.value
            ),
        });
    }
    Ok(member)
}

/// Parameters of one counterexample instance: consecutive primes
/// `q < q_next` with `q − δ + 1 ≥ (δ−1)(q_next − (q − δ + 1))`, and
/// `L = 2^(q−δ)·q·q_next`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleSpec {
    pub delta: u32,
    pub q: i64,
    pub q_next: i64,
    /// The power of two, `q − δ`.
    pub exponent: u32,
    #[serde(skip)]
    pub l: FactoredInteger,
    /// Qualifying-inequality slack; always ≥ 1, and exactly the number
    /// of divisors of `l` the built covering leaves unused.
    pub slack: i64,
}

impl CounterexampleSpec {
    fn try_new(delta: u32, q: i64, q_next: i64) -> Result<Option<Self>> {
        let d = delta as i64;
        let lhs = q - d + 1;
        let rhs = (d - 1) * (q_next - lhs);
        if lhs < rhs || q - d < 1 {
            return Ok(None);
        }
        let exponent = (q - d) as u32;
        let l = match checked_pow(2, exponent)
            .and_then(|p2| p2.checked_mul(q))
            .and_then(|v| v.checked_mul(q_next))
        {
            Some(_) => FactoredInteger::from_factors(vec![(2, exponent), (q, 1), (q_next, 1)])?,
            None => {
                return Err(Error::Overflow(format!("2^{exponent}·{q}·{q_next}")));
            }
        };
        Ok(Some(CounterexampleSpec {
            delta,
            q,
            q_next,
            exponent,
            l,
            slack: lhs - rhs,
        }))
    }
}

/// Ascending scan over consecutive prime pairs `(q, q_next)` yielding
/// every qualifying counterexample spec with `q` below the limit. The
/// scan ends early once `2^(q−δ)·q·q_next` leaves the 64-bit range.
pub struct CounterexampleScan {
    delta: u32,
    q: i64,
    q_limit: i64,
    done: bool,
}

impl Iterator for CounterexampleScan {
    type Item = CounterexampleSpec;

    fn next(&mut self) -> Option<CounterexampleSpec> {
        if self.done {
            return None;
        }
        loop {
            let q = self.q;
            if q > self.q_limit {
                return None;
            }
            let q_next = next_prime_after(q);
            self.q = q_next;
            match CounterexampleSpec::try_new(self.delta, q, q_next) {
                Ok(Some(spec)) => return Some(spec),
                Ok(None) => continue,
                Err(_) => {
                    self.done = true;
                    return None;
                }
            }
        }
    }
}

/// Scans qualifying consecutive prime pairs for the given `δ ≥ 3`.
pub fn counterexample_scan(delta: u32, q_limit: i64) -> Result<CounterexampleScan> {
    if delta < 3 {
        return Err(Error::FamilyHypothesis(format!(
            "delta must be at least 3, got {delta}"
        )));
    }
    Ok(CounterexampleScan {
        delta,
        q: 2,
        q_limit,
        done: false,
    })
}

/// The smallest qualifying prime pair for `δ`; continue the returned
/// scan for subsequent pairs.
pub fn find_counterexample_primes(
    delta: u32,
    q_limit: i64,
) -> Result<(CounterexampleSpec, CounterexampleScan)> {
    let mut scan = counterexample_scan(delta, q_limit)?;
    match scan.next() {
        Some(spec) => Ok((spec, scan)),
        None => Err(Error::NoQualifyingPair { limit: q_limit }),
    }
}

/// Builds the staged covering for a counterexample spec. Residues are
/// fixed canonically: stage 1 is the 2-adic ladder, stages 2 and 3 clear
/// class `j` of the new prime with the modulus carrying `2^j`, and stage
/// 4 walks the remaining `(u, v)` sub-holes in lexicographic order.
pub fn build_counterexample_covering(spec: &CounterexampleSpec) -> Result<CongruenceSet> {
    let n = spec.exponent as i64;
    let (q, q2) = (spec.q, spec.q_next);
    let mut congruences = Vec::new();

    // Stage 1: everything but 0 mod 2^n.
    let mut power = 1i64;
    for _ in 1..=n {
        congruences.push(Congruence::new(power, power * 2)?);
        power *= 2;
    }

    // Stage 2: fill classes 0..=n mod q inside the hole.
    for j in 0..=n {
        let two_j = checked_pow(2, j as u32).expect("2^j fits: j ≤ exponent");
        let (x, m) = crt_pair(0, two_j, j, q)?;
        congruences.push(Congruence::new(x, m)?);
    }

    // Stage 3: fill classes 0..=n mod q' across every remaining hole.
    for j in 0..=n {
        let two_j = checked_pow(2, j as u32).expect("2^j fits");
        let (x, m) = crt_pair(0, two_j, j, q2)?;
        congruences.push(Congruence::new(x, m)?);
    }

    // Stage 4: one modulus 2^j·q·q' per leftover sub-hole.
    let mut j = 0i64;
    for u in (n + 1)..q {
        for v in (n + 1)..q2 {
            debug_assert!(j <= n, "the qualifying inequality bounds stage 4 by n+1 moduli");
            let two_j = checked_pow(2, j as u32).expect("2^j fits");
            let (x, m) = crt_pair(0, two_j, u, q)?;
            let (x, m) = crt_pair(x, m, v, q2)?;
            congruences.push(Congruence::new(x, m)?);
            j += 1;
        }
    }
    debug_assert!(j > 0, "delta ≥ 3 forces at least one stage-4 hole");

    CongruenceSet::new(congruences)
}

/// Everything the counterexample claims, verified end to end.
#[derive(Clone, Debug)]
pub struct CounterexampleReport {
    pub spec: CounterexampleSpec,
    pub covering: CongruenceSet,
    pub sun_check: SunCheck,
    pub verification: VerificationReport,
    /// Divisors > 1 of the lcm absent from the covering; never empty.
    pub unused_divisors: Vec<i64>,
}

/// Builds the covering for `spec` and bundles the checks that make it a
/// counterexample: the sufficiency test fails, the set verifies as a
/// covering, and at least one divisor of the lcm goes unused. Any check
/// failing here is an implementation bug, not a data condition.
pub fn counterexample_report(spec: &CounterexampleSpec) -> Result<CounterexampleReport> {
    let sun_check = search::sun_sufficient(&spec.l)?;
    if sun_check.sufficient {
        return Err(Error::Internal(format!(
            "{} unexpectedly satisfies the sufficiency condition",
            spec.l
        )));
    }
    let covering = build_counterexample_covering(spec)?;
    let verification = verify::is_covering(&covering, Strategy::Auto)?;
    if !verification.is_covering {
        return Err(Error::Internal(format!(
            "constructed set for {} failed to verify as a covering",
            spec.l
        )));
    }
    let used = covering.moduli()?;
    let unused_divisors: Vec<i64> = spec
        .l
        .divisors(true)
        .into_iter()
        .filter(|&d| !used.contains(d))
        .collect();
    if unused_divisors.is_empty() {
        return Err(Error::Internal(
            "every divisor was used; the slack bound guarantees otherwise".into(),
        ));
    }
    Ok(CounterexampleReport {
        spec: spec.clone(),
        covering,
        sun_check,
        verification,
        unused_divisors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_members() {
        let m = sun_primitive(&[2, 3]).unwrap();
        assert_eq!(m.value.value(), 12);
        assert_eq!(m.exponents, vec![2, 1]);

        let m = sun_primitive(&[2, 5]).unwrap();
        assert_eq!(m.value.value(), 80);
        assert_eq!(m.exponents, vec![4, 1]);

        let m = sun_primitive(&[2, 3, 7]).unwrap();
        assert_eq!(m.value.value(), 378); // 2·3^3·7
        assert_eq!(m.exponents, vec![1, 3, 1]);

        let m = sun_primitive(&[2, 5, 13]).unwrap();
        assert_eq!(m.value.value(), 13000); // 2^3·5^3·13
        assert_eq!(m.exponents, vec![3, 3, 1]);
    }

    #[test]
    fn family_hypothesis_failures_are_named() {
        assert!(matches!(sun_primitive(&[3, 5]), Err(Error::FamilyHypothesis(_))));
        assert!(matches!(sun_primitive(&[2]), Err(Error::FamilyHypothesis(_))));
        assert!(matches!(sun_primitive(&[2, 4]), Err(Error::NotPrime(4))));
        assert!(matches!(sun_primitive(&[2, 5, 3]), Err(Error::FamilyHypothesis(_))));
        // 11 < (7-2)(7-3) = 20 violates the last-prime bound.
        let err = sun_primitive(&[2, 7, 11]).unwrap_err();
        assert!(matches!(err, Error::FamilyHypothesis(ref m) if m.contains("bound")));
    }

    #[test]
    fn family_members_satisfy_the_sufficiency_condition() {
        for primes in [vec![2i64, 3], vec![2, 5], vec![2, 3, 7], vec![2, 5, 13], vec![2, 3, 7, 43]] {
            let m = sun_primitive(&primes).unwrap();
            assert!(
                search::sun_sufficient(&m.value).unwrap().sufficient,
                "family member {} fails the sufficiency inequality",
                m.value
            );
        }
    }

    #[test]
    fn family_recognition() {
        assert!(sun_family_member_of(&FactoredInteger::factorize(12).unwrap()).is_ok());
        assert!(sun_family_member_of(&FactoredInteger::factorize(80).unwrap()).is_ok());
        assert!(sun_family_member_of(&FactoredInteger::factorize(40).unwrap()).is_err());
        assert!(sun_family_member_of(&FactoredInteger::factorize(24).unwrap()).is_err());
    }

    #[test]
    fn delta_three_pairs_in_order() {
        let specs: Vec<CounterexampleSpec> =
            counterexample_scan(3, 1000).unwrap().take(3).collect();
        assert_eq!(
            specs.iter().map(|s| (s.q, s.q_next)).collect::<Vec<_>>(),
            vec![(11, 13), (17, 19), (19, 23)]
        );
        assert_eq!(specs[0].l.value(), 2i64.pow(8) * 11 * 13);
        assert_eq!(specs[1].l.value(), 2i64.pow(14) * 17 * 19);
        assert_eq!(specs[2].l.value(), 2i64.pow(16) * 19 * 23);
        for s in &specs {
            assert!(s.slack >= 1);
        }
    }

    #[test]
    fn delta_four_and_five_first_pairs() {
        let (spec, _) = find_counterexample_primes(4, 1000).unwrap();
        assert_eq!((spec.q, spec.q_next), (29, 31));
        assert_eq!(spec.l.value(), 2i64.pow(25) * 29 * 31);

        // (29, 31) qualifies for δ=5 as well: 25 ≥ 4·(31−25).
        let (spec, mut scan) = find_counterexample_primes(5, 1000).unwrap();
        assert_eq!((spec.q, spec.q_next), (29, 31));
        assert_eq!(spec.l.value(), 2i64.pow(24) * 29 * 31);
        let second = scan.next().unwrap();
        assert_eq!((second.q, second.q_next), (37, 41));
        assert_eq!(second.l.value(), 2i64.pow(32) * 37 * 41);
    }

    #[test]
    fn delta_below_three_is_rejected() {
        assert!(counterexample_scan(2, 100).is_err());
    }

    #[test]
    fn built_covering_structure_for_the_smallest_instance() {
        let (spec, _) = find_counterexample_primes(3, 100).unwrap();
        let covering = build_counterexample_covering(&spec).unwrap();
        // Stages: 8 + 9 + 9 + 2·(13−9) = 34 congruences.
        assert_eq!(covering.len(), 34);
        let n = spec.exponent as i64;
        let stage2 = covering
            .iter()
            .filter(|c| c.modulus() % 11 == 0 && c.modulus() % 13 != 0)
            .count() as i64;
        let stage3 = covering
            .iter()
            .filter(|c| c.modulus() % 13 == 0 && c.modulus() % 11 != 0)
            .count() as i64;
        let stage4 = covering
            .iter()
            .filter(|c| c.modulus() % (11 * 13) == 0)
            .count() as i64;
        assert_eq!(stage2, n + 1);
        assert_eq!(stage3, n + 1);
        assert_eq!(stage4, (spec.delta as i64 - 1) * (spec.q_next - (n + 1)));
        for c in covering.iter() {
            assert_eq!(spec.l.value() % c.modulus(), 0);
        }
        let report = verify::is_covering(&covering, Strategy::Bitset).unwrap();
        assert!(report.is_covering);
    }

    #[test]
    fn report_bundles_all_counterexample_checks() {
        let (spec, _) = find_counterexample_primes(3, 100).unwrap();
        let report = counterexample_report(&spec).unwrap();
        assert!(!report.sun_check.sufficient);
        assert!(report.verification.is_covering);
        assert_eq!(report.unused_divisors.len() as i64, report.spec.slack);
    }
}
