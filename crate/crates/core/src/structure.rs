//! Prime-power structure of a covering over a factored period `L`.
//!
//! Every modulus `m | L`, `m > 1` lands in exactly one cell `(s, t)`:
//! `s` indexes the largest prime of `L` dividing `m` and `t` is that
//! prime's exponent in `m`. A modulus divisible by a larger prime of `L`
//! therefore belongs to the larger prime's cell even when a smaller
//! prime power divides it exactly (with `L = 80`, the modulus `80 = 2^4·5`
//! sits in the cell of 5, not in the cell of `2^4`).
//!
//! The hole table counts, for each cell `(s, t)`, how many integers in
//! the window `[1, p_1^{a_1} ⋯ p_{s-1}^{a_{s-1}} p_s^t]` remain uncovered
//! by all cells up to `(s, t)`. The final entry is zero exactly when the
//! set is a covering. Each hole count is computed by a direct sieve so
//! the step identities checked by [`check_hole_lemmas`] remain
//! independent of it.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::construct;
use crate::error::{Error, Result};
use crate::sieve::Bitset;
use crate::types::{Congruence, CongruenceSet, FactoredInteger, ModuliSet};
use crate::verify::DEFAULT_BITSET_BUDGET;

/// Cell key `(s, t)`: 1-based prime index and prime-power exponent.
pub type Cell = (usize, u32);

/// The congruences of a set grouped by their `(s, t)` cell.
#[derive(Clone, Debug)]
pub struct PartitionTable {
    l: FactoredInteger,
    cells: BTreeMap<Cell, Vec<Congruence>>,
}

impl PartitionTable {
    pub fn l(&self) -> &FactoredInteger {
        &self.l
    }

    pub fn cells(&self) -> &BTreeMap<Cell, Vec<Congruence>> {
        &self.cells
    }

    pub fn cell(&self, s: usize, t: u32) -> &[Congruence] {
        self.cells.get(&(s, t)).map_or(&[], |v| v.as_slice())
    }
}

/// Classifies each congruence of `c` into its cell. Every modulus must
/// divide `l`.
pub fn partition(c: &CongruenceSet, l: &FactoredInteger) -> Result<PartitionTable> {
    let mut cells: BTreeMap<Cell, Vec<Congruence>> = BTreeMap::new();
    for s in 1..=l.rank() {
        for t in 1..=l.exponent(s) {
            cells.insert((s, t), Vec::new());
        }
    }
    for cong in c.iter() {
        let m = cong.modulus();
        if l.value() % m != 0 {
            return Err(Error::ModulusNotDividing {
                modulus: m,
                value: l.value(),
            });
        }
        let mut cell = None;
        for s in (1..=l.rank()).rev() {
            let v = FactoredInteger::valuation(m, l.prime(s));
            if v > 0 {
                cell = Some((s, v));
                break;
            }
        }
        let cell = cell.ok_or(Error::ModulusNotDividing {
            modulus: m,
            value: l.value(),
        })?;
        cells.get_mut(&cell).unwrap().push(*cong);
    }
    Ok(PartitionTable { l: l.clone(), cells })
}

/// Hole counts and cell sizes for each `(s, t)`.
#[derive(Clone, Debug)]
pub struct LambdaTable {
    l: FactoredInteger,
    lambda: BTreeMap<Cell, u64>,
    cell_sizes: BTreeMap<Cell, usize>,
}

impl LambdaTable {
    pub fn l(&self) -> &FactoredInteger {
        &self.l
    }

    pub fn lambda(&self, s: usize, t: u32) -> u64 {
        self.lambda[&(s, t)]
    }

    pub fn cell_size(&self, s: usize, t: u32) -> usize {
        self.cell_sizes[&(s, t)]
    }

    pub fn entries(&self) -> impl Iterator<Item = (Cell, u64, usize)> + '_ {
        self.lambda
            .iter()
            .map(|(&cell, &lam)| (cell, lam, self.cell_sizes[&cell]))
    }

    /// The last hole count, zero exactly when the input was a covering.
    pub fn final_lambda(&self) -> u64 {
        let s = self.l.rank();
        self.lambda(s, self.l.exponent(s))
    }
}

/// Computes the hole table of `c` over `l` by sieving each window.
pub fn lambda_table(c: &CongruenceSet, l: &FactoredInteger) -> Result<LambdaTable> {
    if l.value() > DEFAULT_BITSET_BUDGET {
        return Err(Error::SieveBudgetExceeded {
            period: l.value(),
            budget: DEFAULT_BITSET_BUDGET,
        });
    }
    let table = partition(c, l)?;
    let mut lambda = BTreeMap::new();
    let mut cell_sizes = BTreeMap::new();
    let mut active: Vec<Congruence> = Vec::new();
    let mut lower = 1i64; // ∏_{i<s} p_i^{a_i}
    for s in 1..=l.rank() {
        let p = l.prime(s);
        let mut window = lower;
        for t in 1..=l.exponent(s) {
            window *= p;
            active.extend_from_slice(table.cell(s, t));
            let mut bits = Bitset::new(window as usize);
            bits.mark(&active);
            let (holes, _) = bits.count_and_first_zero();
            lambda.insert((s, t), holes);
            cell_sizes.insert((s, t), table.cell(s, t).len());
        }
        lower = window;
    }
    Ok(LambdaTable {
        l: l.clone(),
        lambda,
        cell_sizes,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HoleIdentity {
    /// From `λ(s, a_s) = 1`: the next prime's first refinement satisfies
    /// `λ(s+1, 1) = p_{s+1} − |cell(s+1, 1)|`.
    NextPrime,
    /// From `λ(s, t) = 1`, `t < a_s`: the next power satisfies
    /// `λ(s, t+1) = p_s − |cell(s, t+1)|`.
    NextPower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HoleLemmaRecord {
    pub identity: HoleIdentity,
    /// Cell whose hole count of 1 establishes the premise.
    pub premise_cell: Cell,
    /// Cell whose hole count the identity predicts.
    pub target_cell: Cell,
    pub expected: i64,
    pub actual: u64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HoleLemmaReport {
    /// Caller-supplied: whether the table came from a minimal covering.
    /// The identities are only guaranteed under that hypothesis.
    pub assumed_minimal: bool,
    pub records: Vec<HoleLemmaRecord>,
}

/// Checks the hole-step identities on every cell whose premise
/// (a hole count of exactly 1) holds. Minimality of the source covering
/// is not verified here; the caller passes what it knows.
pub fn check_hole_lemmas(table: &LambdaTable, assumed_minimal: bool) -> HoleLemmaReport {
    let l = table.l();
    let mut records = Vec::new();
    for s in 1..=l.rank() {
        for t in 1..=l.exponent(s) {
            if table.lambda(s, t) != 1 {
                continue;
            }
            if t < l.exponent(s) {
                let expected = l.prime(s) - table.cell_size(s, t + 1) as i64;
                let actual = table.lambda(s, t + 1);
                records.push(HoleLemmaRecord {
                    identity: HoleIdentity::NextPower,
                    premise_cell: (s, t),
                    target_cell: (s, t + 1),
                    expected,
                    actual,
                    holds: expected >= 0 && actual == expected as u64,
                });
            } else if s < l.rank() {
                let expected = l.prime(s + 1) - table.cell_size(s + 1, 1) as i64;
                let actual = table.lambda(s + 1, 1);
                records.push(HoleLemmaRecord {
                    identity: HoleIdentity::NextPrime,
                    premise_cell: (s, t),
                    target_cell: (s + 1, 1),
                    expected,
                    actual,
                    holds: expected >= 0 && actual == expected as u64,
                });
            }
        }
    }
    HoleLemmaReport {
        assumed_minimal,
        records,
    }
}

/// The divisors every minimal moduli set with this lcm must contain:
/// all divisors > 1 of `L / (p_{r-1} p_r)`. Requires `L` to be a member
/// of the primitive-covering-number family with at least two primes.
pub fn required_divisors(l: &FactoredInteger) -> Result<ModuliSet> {
    construct::sun_family_member_of(l)?;
    let r = l.rank();
    let mut factors: Vec<(i64, u32)> = l.factors().to_vec();
    factors.pop(); // drop p_r (exponent 1 in the family)
    let last = factors.len() - 1;
    if factors[last].1 == 1 {
        factors.pop();
    } else {
        factors[last].1 -= 1;
    }
    debug_assert!(r >= 2);
    let base = FactoredInteger::from_factors(factors)?;
    ModuliSet::new(base.divisors(true))
}
