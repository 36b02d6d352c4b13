//! Interchange formats.
//!
//! Coverings travel as line text, one `x m` pair per line with `#`
//! comments, or as a JSON array of objects with fields `x` and `m`.
//! Moduli sets are one integer per line. Serialization is canonical
//! (ascending modulus), so parse ∘ serialize is the identity.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::types::{Congruence, CongruenceSet, ModuliSet};

#[derive(Deserialize)]
struct CongruenceObject {
    x: i64,
    m: i64,
}

/// Parses a covering from line text or a JSON array of `{x, m}` objects.
pub fn parse_covering(text: &str) -> Result<CongruenceSet> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        let objects: Vec<CongruenceObject> = serde_json::from_str(trimmed)
            .map_err(|e| Error::Parse {
                line: e.line(),
                message: e.to_string(),
            })?;
        return CongruenceSet::new(
            objects
                .into_iter()
                .map(|o| Congruence::new(o.x, o.m))
                .collect::<Result<_>>()?,
        );
    }
    let mut congruences = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected 'x m', found {} field(s)", fields.len()),
            });
        }
        let parse = |field: &str| -> Result<i64> {
            field.parse().map_err(|_| Error::Parse {
                line,
                message: format!("'{field}' is not an integer"),
            })
        };
        let (x, m) = (parse(fields[0])?, parse(fields[1])?);
        if m < 2 {
            return Err(Error::Parse {
                line,
                message: format!("modulus {m} is invalid (must be ≥ 2)"),
            });
        }
        congruences.push(Congruence::new(x, m)?);
    }
    CongruenceSet::new(congruences)
}

/// Canonical line format: one `x m` per line, ascending modulus.
pub fn serialize_covering(c: &CongruenceSet) -> String {
    c.iter()
        .map(|k| format!("{} {}\n", k.residue(), k.modulus()))
        .collect()
}

/// Parses a moduli set, one integer per line with `#` comments.
pub fn parse_moduli(text: &str) -> Result<ModuliSet> {
    let mut moduli = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let m: i64 = content.parse().map_err(|_| Error::Parse {
            line,
            message: format!("'{content}' is not an integer"),
        })?;
        if m < 2 {
            return Err(Error::Parse {
                line,
                message: format!("modulus {m} is invalid (must be ≥ 2)"),
            });
        }
        moduli.push(m);
    }
    ModuliSet::new(moduli)
}

pub fn serialize_moduli(m: &ModuliSet) -> String {
    m.iter().map(|x| format!("{x}\n")).collect()
}
