//! Value types: congruences, congruence sets, factored integers, and
//! moduli sets. All types are immutable once constructed and enforce
//! their invariants in the constructor.

use serde::{Deserialize, Serialize};

use crate::arith::{checked_pow, is_prime};
use crate::error::{Error, Result};

/// A residue class `x mod m` with `0 ≤ x < m` and `m ≥ 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Congruence {
    #[serde(rename = "x")]
    residue: i64,
    #[serde(rename = "m")]
    modulus: i64,
}

impl Congruence {
    /// Builds the congruence `x mod m`, reducing `x` into `[0, m)`.
    /// Negative `x` reduces the way the integers do: `-1 mod 12` is `11 mod 12`.
    pub fn new(x: i64, m: i64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidModulus(m));
        }
        Ok(Congruence {
            residue: x.rem_euclid(m),
            modulus: m,
        })
    }

    pub fn residue(&self) -> i64 {
        self.residue
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    /// Does `z` satisfy this congruence?
    pub fn covers(&self, z: i64) -> bool {
        z.rem_euclid(self.modulus) == self.residue
    }
}

impl std::fmt::Display for Congruence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.residue, self.modulus)
    }
}

/// Reduces `x` into a canonical congruence class mod `m`.
pub fn normalize(x: i64, m: i64) -> Result<Congruence> {
    Congruence::new(x, m)
}

/// A finite list of congruences with pairwise-distinct moduli, kept in
/// ascending modulus order so equality and serialization are canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct CongruenceSet {
    congruences: Vec<Congruence>,
}

impl CongruenceSet {
    pub fn new(mut congruences: Vec<Congruence>) -> Result<Self> {
        congruences.sort_by_key(|c| c.modulus);
        for pair in congruences.windows(2) {
            if pair[0].modulus == pair[1].modulus {
                return Err(Error::DuplicateModulus(pair[0].modulus));
            }
        }
        Ok(CongruenceSet { congruences })
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|&(x, m)| Congruence::new(x, m))
                .collect::<Result<_>>()?,
        )
    }

    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Congruence> {
        self.congruences.iter()
    }

    pub fn as_slice(&self) -> &[Congruence] {
        &self.congruences
    }

    pub fn contains(&self, c: &Congruence) -> bool {
        self.congruences
            .binary_search_by_key(&c.modulus, |k| k.modulus)
            .map(|i| self.congruences[i] == *c)
            .unwrap_or(false)
    }

    pub fn moduli(&self) -> Result<ModuliSet> {
        ModuliSet::new(self.congruences.iter().map(|c| c.modulus).collect())
    }

    /// Least common multiple of the moduli, i.e. the period of the set.
    pub fn period(&self) -> Result<FactoredInteger> {
        if self.congruences.is_empty() {
            return Err(Error::EmptyCongruenceSet);
        }
        self.moduli()?.lcm()
    }

    /// The same congruences with every residue shifted by `k`.
    pub fn shifted(&self, k: i64) -> Self {
        let congruences = self
            .congruences
            .iter()
            .map(|c| {
                Congruence::new((c.residue + k.rem_euclid(c.modulus)).rem_euclid(c.modulus), c.modulus)
                    .expect("modulus already validated")
            })
            .collect();
        CongruenceSet { congruences }
    }

    /// A copy with one congruence removed, if present.
    pub fn without(&self, c: &Congruence) -> Self {
        CongruenceSet {
            congruences: self
                .congruences
                .iter()
                .copied()
                .filter(|k| k != c)
                .collect(),
        }
    }
}

impl<'a> IntoIterator for &'a CongruenceSet {
    type Item = &'a Congruence;
    type IntoIter = std::slice::Iter<'a, Congruence>;
    fn into_iter(self) -> Self::IntoIter {
        self.congruences.iter()
    }
}

/// A positive integer in the signed-64-bit range together with its
/// certified prime factorization (primes ascending).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredInteger {
    value: i64,
    factors: Vec<(i64, u32)>,
}

impl FactoredInteger {
    /// Factorizes `n` by trial division. `factorize(1)` has an empty
    /// factor list.
    pub fn factorize(n: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::OutOfRange(n));
        }
        let mut factors = Vec::new();
        let mut rest = n;
        let mut push = |p: i64, rest: &mut i64| {
            let mut e = 0u32;
            while *rest % p == 0 {
                *rest /= p;
                e += 1;
            }
            if e > 0 {
                factors.push((p, e));
            }
        };
        push(2, &mut rest);
        push(3, &mut rest);
        let mut d = 5i64;
        while d * d <= rest {
            push(d, &mut rest);
            push(d + 2, &mut rest);
            d += 6;
        }
        if rest > 1 {
            factors.push((rest, 1));
        }
        Ok(FactoredInteger { value: n, factors })
    }

    /// Builds a factored integer from explicit `(prime, exponent)` pairs.
    pub fn from_factors(factors: Vec<(i64, u32)>) -> Result<Self> {
        let mut value = 1i64;
        for (i, &(p, e)) in factors.iter().enumerate() {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if e == 0 {
                return Err(Error::Internal(format!("exponent of {p} is zero")));
            }
            if i > 0 && factors[i - 1].0 >= p {
                return Err(Error::Internal("primes must be strictly ascending".into()));
            }
            let pe = checked_pow(p, e).ok_or_else(|| Error::Overflow(format!("{p}^{e}")))?;
            value = value
                .checked_mul(pe)
                .ok_or_else(|| Error::Overflow(format!("{value} * {p}^{e}")))?;
        }
        Ok(FactoredInteger { value, factors })
    }

    pub fn value(&self) -> i64 {
        self.value
    }

    /// `(prime, exponent)` pairs, primes strictly ascending.
    pub fn factors(&self) -> &[(i64, u32)] {
        &self.factors
    }

    /// Number of distinct primes.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// The `s`-th prime of the factorization, 1-based.
    pub fn prime(&self, s: usize) -> i64 {
        self.factors[s - 1].0
    }

    /// The exponent of the `s`-th prime, 1-based.
    pub fn exponent(&self, s: usize) -> u32 {
        self.factors[s - 1].1
    }

    pub fn divides(&self, n: i64) -> bool {
        n % self.value == 0
    }

    /// Number of divisors, `τ = ∏ (α_i + 1)`.
    pub fn num_divisors(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| e as u64 + 1).product()
    }

    /// All divisors in ascending order; with `exclude_one` set, 1 is omitted.
    pub fn divisors(&self, exclude_one: bool) -> Vec<i64> {
        let mut out = vec![1i64];
        for &(p, e) in &self.factors {
            let prev = out.clone();
            let mut pe = 1i64;
            for _ in 0..e {
                pe *= p;
                out.extend(prev.iter().map(|d| d * pe));
            }
        }
        out.sort_unstable();
        if exclude_one {
            out.remove(0);
        }
        out
    }

    /// Exponent of `p` in `n` (how many times `p` divides `n`).
    pub fn valuation(mut n: i64, p: i64) -> u32 {
        let mut v = 0;
        while n % p == 0 {
            n /= p;
            v += 1;
        }
        v
    }
}

impl std::fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(p, e)| {
                if e == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// A sorted set of pairwise-distinct integers ≥ 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct ModuliSet {
    moduli: Vec<i64>,
}

impl ModuliSet {
    pub fn new(mut moduli: Vec<i64>) -> Result<Self> {
        for &m in &moduli {
            if m < 2 {
                return Err(Error::InvalidModulus(m));
            }
        }
        moduli.sort_unstable();
        for pair in moduli.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateModulus(pair[0]));
            }
        }
        Ok(ModuliSet { moduli })
    }

    pub fn len(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moduli.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = i64> + '_ {
        self.moduli.iter().copied()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.moduli
    }

    pub fn contains(&self, m: i64) -> bool {
        self.moduli.binary_search(&m).is_ok()
    }

    /// Is `other` a subset of this set?
    pub fn is_superset_of(&self, other: &ModuliSet) -> bool {
        other.iter().all(|m| self.contains(m))
    }

    pub fn without(&self, m: i64) -> Self {
        ModuliSet {
            moduli: self.moduli.iter().copied().filter(|&k| k != m).collect(),
        }
    }

    /// Factored least common multiple. Errors on an empty set and on
    /// overflow beyond the signed-64-bit range rather than wrapping.
    pub fn lcm(&self) -> Result<FactoredInteger> {
        lcm_of(self)
    }
}

/// Factored least common multiple of a moduli set.
pub fn lcm_of(set: &ModuliSet) -> Result<FactoredInteger> {
    if set.is_empty() {
        return Err(Error::EmptyModuliSet);
    }
    let mut merged: Vec<(i64, u32)> = Vec::new();
    for m in set.iter() {
        let f = FactoredInteger::factorize(m)?;
        for &(p, e) in f.factors() {
            match merged.binary_search_by_key(&p, |&(q, _)| q) {
                Ok(i) => merged[i].1 = merged[i].1.max(e),
                Err(i) => merged.insert(i, (p, e)),
            }
        }
    }
    FactoredInteger::from_factors(merged)
        .map_err(|_| Error::Overflow("lcm of the moduli set".into()))
}
