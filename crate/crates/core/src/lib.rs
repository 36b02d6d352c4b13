//! Covering systems of the integers: verification, prime-power structure
//! analysis, exact counting of coverings over a moduli set, exhaustive
//! covering-number and primitivity decisions, and constructions of
//! covering numbers that defeat the classical sufficiency inequality.
//!
//! A covering system is a finite set of congruences `x_i mod m_i` with
//! pairwise-distinct moduli `m_i ≥ 2` such that every integer satisfies
//! at least one of them. Everything here is exact: verification sieves
//! or refines one full period, counts use arbitrary precision, and
//! negative search verdicts are certificates by exhaustion.

pub mod arith;
pub mod construct;
pub mod corpus;
pub mod count;
pub mod error;
pub mod format;
pub mod search;
pub mod structure;
pub mod verify;

mod sieve;
mod types;

pub use error::{Error, Result};
pub use types::{lcm_of, normalize, Congruence, CongruenceSet, FactoredInteger, ModuliSet};
