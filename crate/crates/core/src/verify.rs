//! Covering verification: decide whether a congruence set covers every
//! integer, census the uncovered residues, and decide minimality.
//!
//! Two strategies produce identical reports:
//!
//! * `Bitset` sieves one full period `[0, lcm)` directly. Simple and fast
//!   while the period fits the memory budget (default 2^28 residues).
//! * `CrtTree` recursively refines residue classes prime by prime,
//!   descending only into classes not already covered by a single
//!   congruence. This handles periods around 10^10 in milliseconds when
//!   the set is (close to) a covering, since covered branches prune.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::sieve::Bitset;
use crate::types::{Congruence, CongruenceSet, FactoredInteger};

/// Default memory budget for bitset sieves, in residues.
pub const DEFAULT_BITSET_BUDGET: i64 = 1 << 28;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Bitset,
    CrtTree,
    Auto,
}

/// Exact verdict over one full period.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub is_covering: bool,
    /// The lcm of the moduli; the census ranges over `[0, period)`.
    pub period: i64,
    pub uncovered_count: u64,
    /// Least uncovered non-negative integer, when not a covering.
    pub smallest_uncovered: Option<i64>,
}

/// Decides whether `c` covers the integers, using the default sieve budget.
pub fn is_covering(c: &CongruenceSet, strategy: Strategy) -> Result<VerificationReport> {
    is_covering_with_budget(c, strategy, DEFAULT_BITSET_BUDGET)
}

/// As [`is_covering`], with an explicit bitset budget in residues.
pub fn is_covering_with_budget(
    c: &CongruenceSet,
    strategy: Strategy,
    bitset_budget: i64,
) -> Result<VerificationReport> {
    if c.is_empty() {
        return Err(Error::EmptyCongruenceSet);
    }
    let period = c.period()?;
    let use_bitset = match strategy {
        Strategy::Bitset => {
            if period.value() > bitset_budget {
                return Err(Error::SieveBudgetExceeded {
                    period: period.value(),
                    budget: bitset_budget,
                });
            }
            true
        }
        Strategy::CrtTree => false,
        Strategy::Auto => period.value() <= bitset_budget,
    };
    let (uncovered_count, smallest_uncovered) = if use_bitset {
        bitset_census(c.as_slice(), period.value())
    } else {
        crt_census(c, &period)
    };
    Ok(VerificationReport {
        is_covering: uncovered_count == 0,
        period: period.value(),
        uncovered_count,
        smallest_uncovered,
    })
}

fn bitset_census(congruences: &[Congruence], period: i64) -> (u64, Option<i64>) {
    let mut bits = Bitset::new(period as usize);
    bits.mark(congruences);
    let (count, first) = bits.count_and_first_zero();
    (count, first.map(|i| i as i64))
}

/// Recursive class refinement. A node is the class `a mod m` with
/// `m | period`; a congruence is relevant to the node iff it intersects
/// the class. Nodes covered whole by one congruence stop; nodes with no
/// relevant congruence are uncovered whole.
fn crt_census(c: &CongruenceSet, period: &FactoredInteger) -> (u64, Option<i64>) {
    struct Census<'a> {
        period: i64,
        primes: &'a [(i64, u32)],
        uncovered: u64,
        smallest: Option<i64>,
    }

    impl Census<'_> {
        fn visit(&mut self, a: i64, m: i64, depth: &[u32], relevant: &[Congruence]) {
            if relevant.iter().any(|c| m % c.modulus() == 0 && c.covers(a)) {
                return;
            }
            if relevant.is_empty() || m == self.period {
                // Entire class uncovered; its least representative is `a`.
                self.uncovered += (self.period / m) as u64;
                self.smallest = Some(self.smallest.map_or(a, |s| s.min(a)));
                return;
            }
            let split = depth
                .iter()
                .position(|&d| d > 0)
                .expect("m < period implies an unexhausted prime");
            let p = self.primes[split].0;
            let mut child_depth = depth.to_vec();
            child_depth[split] -= 1;
            let child_m = m * p;
            for k in 0..p {
                let child_a = a + k * m;
                let keep: Vec<Congruence> = relevant
                    .iter()
                    .filter(|c| {
                        let g = gcd(c.modulus(), child_m);
                        child_a % g == c.residue() % g
                    })
                    .copied()
                    .collect();
                self.visit(child_a, child_m, &child_depth, &keep);
            }
        }
    }

    let mut census = Census {
        period: period.value(),
        primes: period.factors(),
        uncovered: 0,
        smallest: None,
    };
    let depth: Vec<u32> = period.factors().iter().map(|&(_, e)| e).collect();
    let relevant: Vec<Congruence> = c.iter().copied().collect();
    census.visit(0, 1, &depth, &relevant);
    (census.uncovered, census.smallest)
}

/// Exact census of the integers in `[1, window]` left uncovered by `c`.
/// The window must be a common multiple of the moduli so the answer is a
/// full-period count.
pub fn uncovered_set(c: &CongruenceSet, window: &FactoredInteger) -> Result<Vec<i64>> {
    let w = window.value();
    for cong in c.iter() {
        if w % cong.modulus() != 0 {
            return Err(Error::WindowNotCommonMultiple {
                window: w,
                modulus: cong.modulus(),
            });
        }
    }
    if w > DEFAULT_BITSET_BUDGET {
        return Err(Error::SieveBudgetExceeded {
            period: w,
            budget: DEFAULT_BITSET_BUDGET,
        });
    }
    let mut bits = Bitset::new(w as usize);
    bits.mark(c.as_slice());
    let mut out: Vec<i64> = bits
        .zeros()
        .into_iter()
        .map(|r| if r == 0 { w } else { r as i64 })
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Exact density `Σ 1/m` as a reduced fraction. A sum below 1 rules out
/// a covering; at least 1 is necessary but not sufficient.
pub fn density(c: &CongruenceSet) -> BigRational {
    c.iter().fold(BigRational::zero(), |acc, cong| {
        acc + BigRational::new(1.into(), cong.modulus().into())
    })
}

/// Minimality verdict for a covering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalityReport {
    pub is_minimal: bool,
    /// Congruences whose individual removal leaves a covering.
    pub removable: Vec<Congruence>,
    /// For each non-removable congruence, the least integer in
    /// `[0, period)` covered by it alone.
    pub private_witnesses: Vec<(Congruence, i64)>,
}

/// Decides whether `c` is a minimal covering.
///
/// A congruence is removable exactly when every residue it covers is
/// covered by another congruence as well, so one pass counting coverers
/// per residue decides all members at once.
pub fn is_minimal(c: &CongruenceSet) -> Result<MinimalityReport> {
    if c.is_empty() {
        return Err(Error::EmptyCongruenceSet);
    }
    let period = c.period()?.value();
    if period > DEFAULT_BITSET_BUDGET {
        return Err(Error::SieveBudgetExceeded {
            period,
            budget: DEFAULT_BITSET_BUDGET,
        });
    }
    // Coverer counts saturate at 2; only "exactly one" matters.
    let mut counts = vec![0u8; period as usize];
    for cong in c.iter() {
        let (x, m) = (cong.residue() as usize, cong.modulus() as usize);
        for z in (x..period as usize).step_by(m) {
            counts[z] = counts[z].saturating_add(1);
        }
    }
    if let Some(z) = counts.iter().position(|&k| k == 0) {
        return Err(Error::NotACovering {
            smallest_uncovered: z as i64,
        });
    }
    let mut removable = Vec::new();
    let mut private_witnesses = Vec::new();
    for cong in c.iter() {
        let (x, m) = (cong.residue() as usize, cong.modulus() as usize);
        match (x..period as usize).step_by(m).find(|&z| counts[z] == 1) {
            Some(z) => private_witnesses.push((*cong, z as i64)),
            None => removable.push(*cong),
        }
    }
    Ok(MinimalityReport {
        is_minimal: removable.is_empty(),
        removable,
        private_witnesses,
    })
}
