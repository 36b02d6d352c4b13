//! Covering-number decisions by exhaustive residue-assignment search,
//! plus the classical sufficiency inequality for covering numbers.
//!
//! The search covers the smallest uncovered integer `x` at each step.
//! Any congruence covering `x` with modulus `d` must be `x mod d`, so
//! branching ranges only over the unused candidate moduli. Candidates
//! are tried by how many uncovered integers they would claim, most
//! first, breaking ties toward the larger modulus: the greedy choice
//! reaches coverings quickly on loose instances, and high early coverage
//! makes the capacity prune bite sooner on refutations. A branch is cut
//! when the unassigned moduli cannot cover the remaining holes even
//! disjointly. Exhausting the tree is a proof of non-existence; the node
//! budget makes giving up explicit instead of silent.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::types::{Congruence, CongruenceSet, FactoredInteger};

/// Sieve budget for search, in residues (the search operates over one
/// full period `[0, L)`).
pub const SEARCH_SIEVE_BUDGET: i64 = 1 << 24;

/// Default node budget for covering-number searches.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

/// Shared countdown over all nodes explored by one operation.
#[derive(Clone, Copy, Debug)]
pub(crate) struct NodeCounter {
    nodes: u64,
    budget: u64,
}

impl NodeCounter {
    pub fn new(budget: u64) -> Self {
        NodeCounter { nodes: 0, budget }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    /// Counts one node; errs once the budget is exceeded.
    #[inline]
    pub fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(Error::BudgetExhausted {
                explored: self.nodes,
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }

    #[inline]
    fn tick_flag(&mut self) -> bool {
        self.nodes += 1;
        self.nodes <= self.budget
    }
}

pub(crate) enum ExistsResult {
    Found(CongruenceSet),
    Exhausted,
    BudgetExhausted,
}

enum Dfs {
    Found,
    Exhausted,
    Budget,
}

struct Searcher<'a> {
    period: usize,
    /// Candidate moduli, descending.
    moduli: Vec<i64>,
    used: Vec<bool>,
    covered: Vec<bool>,
    uncovered: u64,
    /// Σ period/d over unused moduli.
    capacity: u64,
    chosen: Vec<Congruence>,
    counter: &'a mut NodeCounter,
}

impl Searcher<'_> {
    fn dfs(&mut self, scan_from: usize) -> Dfs {
        let x = match self.covered[scan_from..].iter().position(|&b| !b) {
            Some(offset) => scan_from + offset,
            None => return Dfs::Found,
        };
        if self.capacity < self.uncovered {
            return Dfs::Exhausted;
        }
        // Rank the unused moduli by the number of still-uncovered
        // integers each would claim at x; ties go to the larger modulus,
        // which costs less future capacity for the same gain.
        let mut order: Vec<(u32, i64, usize)> = Vec::new();
        for (i, &d) in self.moduli.iter().enumerate() {
            if self.used[i] {
                continue;
            }
            let mut gain = 0u32;
            let mut z = x % d as usize;
            while z < self.period {
                gain += u32::from(!self.covered[z]);
                z += d as usize;
            }
            order.push((gain, d, i));
        }
        order.sort_unstable_by(|a, b| b.cmp(a));
        for (_, d, i) in order {
            if !self.counter.tick_flag() {
                return Dfs::Budget;
            }
            let cong = Congruence::new(x as i64 % d, d).expect("validated modulus");
            self.used[i] = true;
            self.capacity -= (self.period / d as usize) as u64;
            let mut flipped = Vec::new();
            let mut z = cong.residue() as usize;
            while z < self.period {
                if !self.covered[z] {
                    self.covered[z] = true;
                    self.uncovered -= 1;
                    flipped.push(z as u32);
                }
                z += d as usize;
            }
            self.chosen.push(cong);

            match self.dfs(x + 1) {
                Dfs::Found => return Dfs::Found,
                Dfs::Budget => return Dfs::Budget,
                Dfs::Exhausted => {}
            }

            self.chosen.pop();
            for &z in &flipped {
                self.covered[z as usize] = false;
            }
            self.uncovered += flipped.len() as u64;
            self.capacity += (self.period / d as usize) as u64;
            self.used[i] = false;
        }
        Dfs::Exhausted
    }
}

/// Is there a covering whose moduli are drawn from `candidates`?
/// Finds a witness or exhausts the tree. A found witness may use only a
/// subset of the candidates.
pub(crate) fn exists_covering(
    candidates: &[i64],
    period: i64,
    counter: &mut NodeCounter,
) -> Result<ExistsResult> {
    if period > SEARCH_SIEVE_BUDGET {
        return Err(Error::SieveBudgetExceeded {
            period,
            budget: SEARCH_SIEVE_BUDGET,
        });
    }
    let mut moduli: Vec<i64> = candidates.to_vec();
    moduli.sort_unstable_by(|a, b| b.cmp(a));
    let capacity = moduli.iter().map(|&d| (period / d) as u64).sum();
    let mut searcher = Searcher {
        period: period as usize,
        used: vec![false; moduli.len()],
        moduli,
        covered: vec![false; period as usize],
        uncovered: period as u64,
        capacity,
        chosen: Vec::new(),
        counter,
    };
    Ok(match searcher.dfs(0) {
        Dfs::Found => ExistsResult::Found(CongruenceSet::new(searcher.chosen)?),
        Dfs::Exhausted => ExistsResult::Exhausted,
        Dfs::Budget => ExistsResult::BudgetExhausted,
    })
}

/// Decision for "is `L` a covering number".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoveringNumberStatus {
    /// A covering with distinct moduli dividing `L` exists; the witness
    /// is the one found by the deterministic search.
    CoveringNumber { witness: CongruenceSet },
    /// The exhausted search tree proves no such covering exists.
    NotCoveringNumber,
    /// Budget ran out first. Never a false negative.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub status: CoveringNumberStatus,
    pub nodes_explored: u64,
    pub budget: u64,
}

/// Decides whether some covering uses distinct divisors > 1 of `L` as
/// moduli, by backtracking over the divisor lattice.
pub fn is_covering_number(l: &FactoredInteger, budget: u64) -> Result<SearchOutcome> {
    let mut counter = NodeCounter::new(budget);
    let divisors = l.divisors(true);
    let status = match exists_covering(&divisors, l.value(), &mut counter)? {
        ExistsResult::Found(witness) => CoveringNumberStatus::CoveringNumber { witness },
        ExistsResult::Exhausted => CoveringNumberStatus::NotCoveringNumber,
        ExistsResult::BudgetExhausted => CoveringNumberStatus::Unknown,
    };
    Ok(SearchOutcome {
        status,
        nodes_explored: counter.nodes(),
        budget,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimitivityStatus {
    /// `L` is a covering number and every proper divisor was exhausted
    /// without finding one.
    Primitive,
    /// Some proper divisor is itself a covering number.
    NotPrimitive { witness_divisor: i64 },
    /// `L` is not a covering number at all.
    NotCoveringNumber,
    /// Some sub-search ran out of budget.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitivityOutcome {
    pub status: PrimitivityStatus,
    pub nodes_explored: u64,
    pub budget: u64,
}

/// Decides primitivity: `L` is a covering number and no proper divisor
/// is. The budget is shared across all sub-searches. Divisors whose own
/// divisor density falls below 1 are rejected without search.
pub fn is_primitive_covering_number(l: &FactoredInteger, budget: u64) -> Result<PrimitivityOutcome> {
    let mut counter = NodeCounter::new(budget);
    let outcome = |status: PrimitivityStatus, counter: &NodeCounter| PrimitivityOutcome {
        status,
        nodes_explored: counter.nodes(),
        budget,
    };

    match exists_covering(&l.divisors(true), l.value(), &mut counter)? {
        ExistsResult::Found(_) => {}
        ExistsResult::Exhausted => {
            return Ok(outcome(PrimitivityStatus::NotCoveringNumber, &counter))
        }
        ExistsResult::BudgetExhausted => return Ok(outcome(PrimitivityStatus::Unknown, &counter)),
    }

    for d in l.divisors(true) {
        if d == l.value() {
            continue;
        }
        let fd = FactoredInteger::factorize(d)?;
        let divisors = fd.divisors(true);
        // Density prefilter: Σ d/e < d rules a divisor out instantly.
        let capacity: i64 = divisors.iter().map(|&e| d / e).sum();
        if capacity < d {
            continue;
        }
        match exists_covering(&divisors, d, &mut counter)? {
            ExistsResult::Found(_) => {
                return Ok(outcome(
                    PrimitivityStatus::NotPrimitive { witness_divisor: d },
                    &counter,
                ))
            }
            ExistsResult::Exhausted => {}
            ExistsResult::BudgetExhausted => {
                return Ok(outcome(PrimitivityStatus::Unknown, &counter))
            }
        }
    }
    Ok(outcome(PrimitivityStatus::Primitive, &counter))
}

/// One inequality of the sufficiency test at index `s`:
/// `∏_{t<s} (a_t + 1) ≥ p_s − 1 + [s = r]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SunInequality {
    pub s: usize,
    pub prime: i64,
    pub lhs: u64,
    pub rhs: i64,
    pub holds: bool,
}

/// Result of Sun's sufficiency test with the per-index trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SunCheck {
    pub sufficient: bool,
    pub trace: Vec<SunInequality>,
}

/// Sun's sufficiency condition: if every inequality holds, `L` is a
/// covering number. The empty product at `s = 1` is 1.
pub fn sun_sufficient(l: &FactoredInteger) -> Result<SunCheck> {
    let r = l.rank();
    if r == 0 {
        return Err(Error::OutOfRange(l.value()));
    }
    let mut trace = Vec::with_capacity(r);
    let mut product: u64 = 1;
    for s in 1..=r {
        let prime = l.prime(s);
        let rhs = prime - 1 + i64::from(s == r);
        let holds = product as i128 >= rhs as i128;
        trace.push(SunInequality {
            s,
            prime,
            lhs: product,
            rhs,
            holds,
        });
        product = product.saturating_mul(l.exponent(s) as u64 + 1);
    }
    Ok(SunCheck {
        sufficient: trace.iter().all(|i| i.holds),
        trace,
    })
}
