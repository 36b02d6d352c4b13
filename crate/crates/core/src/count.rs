//! Counting the coverings that admit a given moduli set.
//!
//! Two independent routes:
//!
//! * a closed formula, valid when the lcm of the moduli belongs to the
//!   primitive-covering-number family and the moduli set is minimal;
//! * exhaustive enumeration by backtracking over residue assignments in
//!   ascending-modulus order, pruning any partial assignment whose
//!   uncovered count exceeds the total capacity of the unassigned moduli.
//!
//! The enumeration counts every covering, minimal or not, and serves as
//! the oracle the formula is checked against.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::construct;
use crate::error::{Error, Result};
use crate::search::{self, ExistsResult, NodeCounter};
use crate::types::{Congruence, CongruenceSet, FactoredInteger, ModuliSet};

/// Sieve budget for enumeration, in residues. Enumeration keeps a
/// per-residue coverer count, so the ceiling is tighter than the
/// verification bitset budget.
pub const ENUM_SIEVE_BUDGET: i64 = 1 << 24;

/// Default node budget for enumeration-backed operations.
pub const DEFAULT_ENUM_BUDGET: u64 = 1_000_000_000;

/// Cell sizes the counting formula consumes, derived from the moduli set
/// alone: the moduli divisible by the largest prime `p_r`, the subset of
/// those not divisible by the full power `p_{r-1}^{a_{r-1}}`, and the
/// moduli exactly divisible by that power but free of `p_r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaInputs {
    #[serde(skip)]
    l: FactoredInteger,
    pub size_cpr: usize,
    pub size_q: usize,
    pub size_ctop: usize,
}

impl FormulaInputs {
    pub fn l(&self) -> &FactoredInteger {
        &self.l
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    Formula,
    Enumeration,
}

/// How the minimality hypothesis of the counting formula was discharged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MinimalityEvidence {
    AssertedByCaller,
    VerifiedBySearch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountResult {
    pub count: BigUint,
    pub method: CountMethod,
    pub inputs: Option<FormulaInputs>,
    pub minimality: Option<MinimalityEvidence>,
}

/// Caller's stance on the minimality hypothesis of the formula.
#[derive(Clone, Copy, Debug)]
pub enum MinimalityPolicy {
    /// Trust the caller; the hypothesis is recorded, not checked.
    Assert,
    /// Confirm by exhaustive search before applying the formula.
    Verify { budget: u64 },
}

/// Classifies the moduli of `m` for the counting formula. The lcm must
/// have the family shape (validated through the family constructor).
pub fn formula_inputs(m: &ModuliSet) -> Result<FormulaInputs> {
    let l = m.lcm()?;
    construct::sun_family_member_of(&l)?;
    let r = l.rank();
    let p_r = l.prime(r);
    let p_prev = l.prime(r - 1);
    let a_prev = l.exponent(r - 1);
    let top_power: i64 = (0..a_prev).fold(1i64, |acc, _| acc * p_prev);

    let size_cpr = m.iter().filter(|&x| x % p_r == 0).count();
    let size_q = m
        .iter()
        .filter(|&x| x % p_r == 0 && x % top_power != 0)
        .count();
    let size_ctop = m
        .iter()
        .filter(|&x| {
            x % p_r != 0 && FactoredInteger::valuation(x, p_prev) == a_prev
        })
        .count();

    if size_q as i64 > p_r {
        return Err(Error::NegativeFactorialArgument(format!(
            "|Q| = {size_q} exceeds p_r = {p_r}"
        )));
    }
    if size_ctop as i64 > p_prev {
        return Err(Error::NegativeFactorialArgument(format!(
            "top cell size {size_ctop} exceeds p_(r-1) = {p_prev}"
        )));
    }
    Ok(FormulaInputs {
        l,
        size_cpr,
        size_q,
        size_ctop,
    })
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Exact number of coverings admitting `m` by the closed formula
///
/// ```text
/// (|C_pr| − |Q|)!
/// ─────────────────────────────────── · ∏ (p_i!)^{a_i}
/// (p_{r-1} − |C_top|)! (p_r − |Q|)!
/// ```
///
/// in arbitrary precision. The division is checked to be exact; a
/// remainder signals a moduli set outside the formula's hypotheses.
pub fn count_by_formula(m: &ModuliSet, policy: MinimalityPolicy) -> Result<CountResult> {
    let inputs = formula_inputs(m)?;
    let minimality = match policy {
        MinimalityPolicy::Assert => MinimalityEvidence::AssertedByCaller,
        MinimalityPolicy::Verify { budget } => match is_minimal_moduli_set(m, budget)? {
            ModuliSetMinimality::Minimal => MinimalityEvidence::VerifiedBySearch,
            ModuliSetMinimality::NotMinimal { witness } => {
                return Err(Error::NotMinimalModuli(format!(
                    "a non-minimal covering with these moduli exists ({} congruences)",
                    witness.len()
                )))
            }
            ModuliSetMinimality::Empty => {
                return Err(Error::NotMinimalModuli(
                    "no covering admits this moduli set".into(),
                ))
            }
            ModuliSetMinimality::Unknown { nodes_explored } => {
                return Err(Error::BudgetExhausted {
                    explored: nodes_explored,
                    budget: match policy {
                        MinimalityPolicy::Verify { budget } => budget,
                        MinimalityPolicy::Assert => unreachable!(),
                    },
                })
            }
        },
    };

    let l = inputs.l();
    let r = l.rank();
    let p_r = l.prime(r) as u64;
    let p_prev = l.prime(r - 1) as u64;

    let mut numerator = factorial(inputs.size_cpr as u64 - inputs.size_q as u64);
    for s in 1..=r {
        let pf = factorial(l.prime(s) as u64);
        for _ in 0..l.exponent(s) {
            numerator *= &pf;
        }
    }
    let denominator =
        factorial(p_prev - inputs.size_ctop as u64) * factorial(p_r - inputs.size_q as u64);
    if (&numerator % &denominator) != BigUint::zero() {
        return Err(Error::NonExactDivision);
    }
    Ok(CountResult {
        count: numerator / denominator,
        method: CountMethod::Formula,
        inputs: Some(inputs),
        minimality: Some(minimality),
    })
}

/// Backtracking state shared by counting and enumeration: coverer counts
/// per residue over one period, with incremental apply/undo.
struct Backtracker {
    period: usize,
    moduli: Vec<i64>,
    counts: Vec<u16>,
    uncovered: u64,
    /// `suffix_capacity[i] = Σ_{j≥i} period/m_j`, the most the unassigned
    /// moduli can still cover.
    suffix_capacity: Vec<u64>,
    counter: NodeCounter,
}

impl Backtracker {
    fn new(m: &ModuliSet, budget: u64) -> Result<Self> {
        let period = m.lcm()?.value();
        if period > ENUM_SIEVE_BUDGET {
            return Err(Error::SieveBudgetExceeded {
                period,
                budget: ENUM_SIEVE_BUDGET,
            });
        }
        let moduli: Vec<i64> = m.iter().collect();
        let mut suffix_capacity = vec![0u64; moduli.len() + 1];
        for i in (0..moduli.len()).rev() {
            suffix_capacity[i] = suffix_capacity[i + 1] + (period / moduli[i]) as u64;
        }
        Ok(Backtracker {
            period: period as usize,
            moduli,
            counts: vec![0u16; period as usize],
            uncovered: period as u64,
            suffix_capacity,
            counter: NodeCounter::new(budget),
        })
    }

    #[inline]
    fn apply(&mut self, level: usize, residue: i64) {
        let m = self.moduli[level] as usize;
        let mut z = residue as usize;
        while z < self.period {
            self.counts[z] += 1;
            if self.counts[z] == 1 {
                self.uncovered -= 1;
            }
            z += m;
        }
    }

    #[inline]
    fn undo(&mut self, level: usize, residue: i64) {
        let m = self.moduli[level] as usize;
        let mut z = residue as usize;
        while z < self.period {
            self.counts[z] -= 1;
            if self.counts[z] == 0 {
                self.uncovered += 1;
            }
            z += m;
        }
    }

    fn count_completions(&mut self, level: usize, suffix_products: &[BigUint], acc: &mut BigUint) -> Result<()> {
        if self.uncovered == 0 {
            // Every residue assignment of the remaining moduli completes
            // a covering.
            *acc += &suffix_products[level];
            return Ok(());
        }
        if level == self.moduli.len() || self.uncovered > self.suffix_capacity[level] {
            return Ok(());
        }
        for r in 0..self.moduli[level] {
            self.counter.tick()?;
            self.apply(level, r);
            self.count_completions(level + 1, suffix_products, acc)?;
            self.undo(level, r);
        }
        Ok(())
    }

    fn enumerate(
        &mut self,
        level: usize,
        chosen: &mut Vec<Congruence>,
        out: &mut Vec<CongruenceSet>,
        limit: usize,
    ) -> Result<bool> {
        if level == self.moduli.len() {
            if self.uncovered == 0 {
                out.push(CongruenceSet::new(chosen.clone())?);
                if out.len() >= limit {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        if self.uncovered > self.suffix_capacity[level] {
            return Ok(true);
        }
        for r in 0..self.moduli[level] {
            self.counter.tick()?;
            self.apply(level, r);
            chosen.push(Congruence::new(r, self.moduli[level])?);
            let keep_going = self.enumerate(level + 1, chosen, out, limit)?;
            chosen.pop();
            self.undo(level, r);
            if !keep_going {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Exact `|𝒞_M|` by exhaustive backtracking. Counts every covering with
/// moduli exactly `m`, minimal or not. Never returns a wrong count: on
/// budget exhaustion it errs instead.
pub fn count_by_enumeration(m: &ModuliSet, budget: u64) -> Result<CountResult> {
    let mut bt = Backtracker::new(m, budget)?;
    let mut suffix_products = vec![BigUint::one(); bt.moduli.len() + 1];
    for i in (0..bt.moduli.len()).rev() {
        suffix_products[i] = &suffix_products[i + 1] * bt.moduli[i] as u64;
    }
    let mut acc = BigUint::zero();
    bt.count_completions(0, &suffix_products, &mut acc)?;
    Ok(CountResult {
        count: acc,
        method: CountMethod::Enumeration,
        inputs: None,
        minimality: None,
    })
}

/// Materializes up to `limit` members of `𝒞_M` in lexicographic order of
/// the residue vector (ascending-modulus coordinate order).
pub fn enumerate_coverings(m: &ModuliSet, limit: usize, budget: u64) -> Result<Vec<CongruenceSet>> {
    if limit == 0 {
        return Ok(Vec::new());
    }
    let mut bt = Backtracker::new(m, budget)?;
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(bt.moduli.len());
    bt.enumerate(0, &mut chosen, &mut out, limit)?;
    Ok(out)
}

/// Minimality verdict for a moduli set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuliSetMinimality {
    /// Every covering with these moduli is minimal.
    Minimal,
    /// Some covering with these moduli is not minimal; one such covering
    /// is returned as the witness.
    NotMinimal { witness: CongruenceSet },
    /// No covering admits these moduli.
    Empty,
    /// The search budget ran out before a verdict.
    Unknown { nodes_explored: u64 },
}

/// Decides whether `m` is a minimal moduli set.
///
/// A covering with a proper subset of `m` as moduli extends to a
/// non-minimal member of `𝒞_M` by assigning the missing moduli arbitrary
/// residues, and conversely every non-minimal member contains such a
/// sub-covering. So the verdict reduces to one existence search over `m`
/// plus one exhaustive search per element removed.
pub fn is_minimal_moduli_set(m: &ModuliSet, budget: u64) -> Result<ModuliSetMinimality> {
    let period = m.lcm()?.value();
    let mut counter = NodeCounter::new(budget);
    let full = match search::exists_covering(m.as_slice(), period, &mut counter)? {
        ExistsResult::Found(c) => c,
        ExistsResult::Exhausted => return Ok(ModuliSetMinimality::Empty),
        ExistsResult::BudgetExhausted => {
            return Ok(ModuliSetMinimality::Unknown {
                nodes_explored: counter.nodes(),
            })
        }
    };
    if full.len() < m.len() {
        return Ok(ModuliSetMinimality::NotMinimal {
            witness: pad_to_moduli(&full, m)?,
        });
    }
    // Largest moduli first: redundant congruences tend to have large moduli.
    for candidate in m.iter().rev() {
        let reduced = m.without(candidate);
        if reduced.is_empty() {
            continue;
        }
        match search::exists_covering(reduced.as_slice(), period, &mut counter)? {
            ExistsResult::Found(c) => {
                return Ok(ModuliSetMinimality::NotMinimal {
                    witness: pad_to_moduli(&c, m)?,
                })
            }
            ExistsResult::Exhausted => {}
            ExistsResult::BudgetExhausted => {
                return Ok(ModuliSetMinimality::Unknown {
                    nodes_explored: counter.nodes(),
                })
            }
        }
    }
    Ok(ModuliSetMinimality::Minimal)
}

/// Extends a covering to use every modulus of `m`, giving residue 0 to
/// the moduli it does not mention. Covering status is preserved.
fn pad_to_moduli(c: &CongruenceSet, m: &ModuliSet) -> Result<CongruenceSet> {
    let mut congruences: Vec<Congruence> = c.iter().copied().collect();
    let used = c.moduli()?;
    for modulus in m.iter() {
        if !used.contains(modulus) {
            congruences.push(Congruence::new(0, modulus)?);
        }
    }
    CongruenceSet::new(congruences)
}
