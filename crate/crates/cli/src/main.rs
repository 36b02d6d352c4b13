//! Command-line surface for the coverings library.
//!
//! Every command prints a single JSON object on stdout and exits 0 on an
//! affirmative result, 1 on a negative result, and 2 on error or an
//! unknown (budget-exhausted) verdict. Inputs are plain files: coverings
//! as `x m` lines (or a JSON array of `{x, m}` objects), moduli sets as
//! one integer per line; `#` starts a comment in either.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use coverings_core::construct::{self, CounterexampleSpec};
use coverings_core::corpus::{corpus, corpus_entry, CorpusPayload};
use coverings_core::count::{self, MinimalityPolicy};
use coverings_core::format;
use coverings_core::search::{self, CoveringNumberStatus, PrimitivityStatus};
use coverings_core::structure;
use coverings_core::verify::{self, Strategy};
use coverings_core::{Congruence, CongruenceSet, FactoredInteger};

const EXIT_AFFIRMATIVE: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "coverings", version, about = "Covering systems of the integers: verify, analyze, count, search, construct")]
struct Cli {
    /// Worker threads for internally parallel operations (0 = all cores).
    /// Outputs are identical for every thread count.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum StrategyArg {
    Bitset,
    Crt,
    #[default]
    Auto,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Bitset => Strategy::Bitset,
            StrategyArg::Crt => Strategy::CrtTree,
            StrategyArg::Auto => Strategy::Auto,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a congruence file covers the integers.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        strategy: StrategyArg,
    },
    /// Decide whether a covering is minimal and list removable congruences.
    Minimal { file: PathBuf },
    /// Hole table of a congruence file over a given lcm.
    Lambda {
        file: PathBuf,
        #[arg(long)]
        lcm: i64,
    },
    /// Count the coverings admitting a moduli set (closed formula by
    /// default, exhaustive enumeration with --brute).
    Count {
        #[arg(long)]
        moduli: PathBuf,
        /// Count by exhaustive enumeration instead of the formula.
        #[arg(long)]
        brute: bool,
        /// Skip the minimality search the formula otherwise runs.
        #[arg(long)]
        assert_minimal: bool,
    },
    /// List coverings admitting a moduli set, lexicographically.
    Enumerate {
        #[arg(long)]
        moduli: PathBuf,
        #[arg(long)]
        limit: usize,
    },
    /// Decide whether some covering uses distinct divisors > 1 of n.
    IsCoveringNumber {
        n: i64,
        #[arg(long, default_value_t = search::DEFAULT_SEARCH_BUDGET)]
        budget: u64,
    },
    /// Decide whether n is a covering number with no covering-number divisor.
    IsPrimitive {
        n: i64,
        #[arg(long, default_value_t = search::DEFAULT_SEARCH_BUDGET)]
        budget: u64,
    },
    /// Evaluate the covering-number sufficiency inequality for n.
    SunCheck { n: i64 },
    /// Build the primitive-covering-number family member over a prime chain.
    SunGenerate {
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        primes: Vec<i64>,
    },
    /// Construct and verify a covering number of the form 2^(q-delta)·q·q'
    /// that fails the sufficiency inequality.
    Counterexample {
        #[arg(long)]
        delta: u32,
        /// Which qualifying prime pair to use, in ascending order.
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Write the constructed covering to this file in line format.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// List the embedded reference coverings, or print one.
    Corpus {
        #[arg(long)]
        name: Option<String>,
        /// Print the raw covering (or moduli) file instead of JSON.
        #[arg(long)]
        emit: bool,
    },
}

fn congruence_json(c: &Congruence) -> Value {
    json!({ "x": c.residue(), "m": c.modulus() })
}

fn covering_json(c: &CongruenceSet) -> Value {
    Value::Array(c.iter().map(congruence_json).collect())
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn cmd_verify(file: &PathBuf, strategy: StrategyArg) -> Result<(Value, u8)> {
    let covering = format::parse_covering(&read(file)?)?;
    let report = verify::is_covering(&covering, strategy.into())?;
    let code = if report.is_covering { EXIT_AFFIRMATIVE } else { EXIT_NEGATIVE };
    Ok((
        json!({
            "command": "verify",
            "file": file.display().to_string(),
            "strategy": format!("{strategy:?}").to_lowercase(),
            "congruences": covering.len(),
            "is_covering": report.is_covering,
            "period": report.period,
            "uncovered_count": report.uncovered_count,
            "smallest_uncovered": report.smallest_uncovered,
        }),
        code,
    ))
}

fn cmd_minimal(file: &PathBuf) -> Result<(Value, u8)> {
    let covering = format::parse_covering(&read(file)?)?;
    let report = verify::is_minimal(&covering)?;
    let code = if report.is_minimal { EXIT_AFFIRMATIVE } else { EXIT_NEGATIVE };
    Ok((
        json!({
            "command": "minimal",
            "file": file.display().to_string(),
            "is_minimal": report.is_minimal,
            "removable": report.removable.iter().map(congruence_json).collect::<Vec<_>>(),
            "private_witnesses": report
                .private_witnesses
                .iter()
                .map(|(c, w)| json!({ "congruence": congruence_json(c), "witness": w }))
                .collect::<Vec<_>>(),
        }),
        code,
    ))
}

fn cmd_lambda(file: &PathBuf, lcm: i64) -> Result<(Value, u8)> {
    let covering = format::parse_covering(&read(file)?)?;
    let l = FactoredInteger::factorize(lcm)?;
    let table = structure::lambda_table(&covering, &l)?;
    let covering_holds = table.final_lambda() == 0;
    let cells: Vec<Value> = table
        .entries()
        .map(|((s, t), lambda, size)| {
            json!({
                "s": s,
                "t": t,
                "prime": l.prime(s),
                "size": size,
                "lambda": lambda,
            })
        })
        .collect();
    let identities = structure::check_hole_lemmas(&table, false);
    let code = if covering_holds { EXIT_AFFIRMATIVE } else { EXIT_NEGATIVE };
    Ok((
        json!({
            "command": "lambda",
            "file": file.display().to_string(),
            "lcm": l.value(),
            "factorization": l.to_string(),
            "is_covering": covering_holds,
            "cells": cells,
            "hole_identities": identities
                .records
                .iter()
                .map(|r| json!({
                    "identity": match r.identity {
                        structure::HoleIdentity::NextPrime => "next_prime",
                        structure::HoleIdentity::NextPower => "next_power",
                    },
                    "premise_cell": [r.premise_cell.0 as u64, r.premise_cell.1 as u64],
                    "target_cell": [r.target_cell.0 as u64, r.target_cell.1 as u64],
                    "expected": r.expected,
                    "actual": r.actual,
                    "holds": r.holds,
                }))
                .collect::<Vec<_>>(),
        }),
        code,
    ))
}

fn cmd_count(moduli: &PathBuf, brute: bool, assert_minimal: bool) -> Result<(Value, u8)> {
    let set = format::parse_moduli(&read(moduli)?)?;
    let result = if brute {
        count::count_by_enumeration(&set, count::DEFAULT_ENUM_BUDGET)?
    } else {
        let policy = if assert_minimal {
            MinimalityPolicy::Assert
        } else {
            MinimalityPolicy::Verify { budget: count::DEFAULT_ENUM_BUDGET }
        };
        count::count_by_formula(&set, policy)?
    };
    let positive = result.count > 0u32.into();
    let code = if positive { EXIT_AFFIRMATIVE } else { EXIT_NEGATIVE };
    Ok((
        json!({
            "command": "count",
            "file": moduli.display().to_string(),
            "moduli": set.as_slice(),
            "lcm": set.lcm()?.value(),
            "method": match result.method {
                count::CountMethod::Formula => "formula",
                count::CountMethod::Enumeration => "enumeration",
            },
            "count": result.count.to_string(),
            "inputs": result.inputs.as_ref().map(|i| json!({
                "size_cpr": i.size_cpr,
                "size_q": i.size_q,
                "size_ctop": i.size_ctop,
            })),
            "minimality": result.minimality.map(|m| match m {
                count::MinimalityEvidence::AssertedByCaller => "asserted_by_caller",
                count::MinimalityEvidence::VerifiedBySearch => "verified_by_search",
            }),
        }),
        code,
    ))
}

fn cmd_enumerate(moduli: &PathBuf, limit: usize) -> Result<(Value, u8)> {
    let set = format::parse_moduli(&read(moduli)?)?;
    let coverings = count::enumerate_coverings(&set, limit, count::DEFAULT_ENUM_BUDGET)?;
    let code = if coverings.is_empty() { EXIT_NEGATIVE } else { EXIT_AFFIRMATIVE };
    Ok((
        json!({
            "command": "enumerate",
            "file": moduli.display().to_string(),
            "moduli": set.as_slice(),
            "limit": limit,
            "found": coverings.len(),
            "coverings": coverings.iter().map(covering_json).collect::<Vec<_>>(),
        }),
        code,
    ))
}

fn cmd_is_covering_number(n: i64, budget: u64) -> Result<(Value, u8)> {
    let l = FactoredInteger::factorize(n)?;
    let outcome = search::is_covering_number(&l, budget)?;
    let (status, witness, code) = match &outcome.status {
        CoveringNumberStatus::CoveringNumber { witness } => {
            ("covering_number", Some(covering_json(witness)), EXIT_AFFIRMATIVE)
        }
        CoveringNumberStatus::NotCoveringNumber => ("not_covering_number", None, EXIT_NEGATIVE),
        CoveringNumberStatus::Unknown => ("unknown", None, EXIT_ERROR),
    };
    Ok((
        json!({
            "command": "is-covering-number",
            "n": n,
            "factorization": l.to_string(),
            "status": status,
            "witness": witness,
            "nodes_explored": outcome.nodes_explored,
            "budget": outcome.budget,
        }),
        code,
    ))
}

fn cmd_is_primitive(n: i64, budget: u64) -> Result<(Value, u8)> {
    let l = FactoredInteger::factorize(n)?;
    let outcome = search::is_primitive_covering_number(&l, budget)?;
    let (status, witness_divisor, code) = match outcome.status {
        PrimitivityStatus::Primitive => ("primitive", None, EXIT_AFFIRMATIVE),
        PrimitivityStatus::NotPrimitive { witness_divisor } => {
            ("not_primitive", Some(witness_divisor), EXIT_NEGATIVE)
        }
        PrimitivityStatus::NotCoveringNumber => ("not_covering_number", None, EXIT_NEGATIVE),
        PrimitivityStatus::Unknown => ("unknown", None, EXIT_ERROR),
    };
    Ok((
        json!({
            "command": "is-primitive",
            "n": n,
            "factorization": l.to_string(),
            "status": status,
            "witness_divisor": witness_divisor,
            "nodes_explored": outcome.nodes_explored,
            "budget": outcome.budget,
        }),
        code,
    ))
}

fn cmd_sun_check(n: i64) -> Result<(Value, u8)> {
    let l = FactoredInteger::factorize(n)?;
    let check = search::sun_sufficient(&l)?;
    let code = if check.sufficient { EXIT_AFFIRMATIVE } else { EXIT_NEGATIVE };
    Ok((
        json!({
            "command": "sun-check",
            "n": n,
            "factorization": l.to_string(),
            "sufficient": check.sufficient,
            "trace": check.trace.iter().map(|i| json!({
                "s": i.s,
                "prime": i.prime,
                "lhs": i.lhs,
                "rhs": i.rhs,
                "holds": i.holds,
            })).collect::<Vec<_>>(),
        }),
        code,
    ))
}

fn cmd_sun_generate(primes: &[i64]) -> Result<(Value, u8)> {
    let member = construct::sun_primitive(primes)?;
    Ok((
        json!({
            "command": "sun-generate",
            "primes": member.primes,
            "exponents": member.exponents,
            "value": member.value.value(),
            "factorization": member.value.to_string(),
        }),
        EXIT_AFFIRMATIVE,
    ))
}

fn nth_counterexample(delta: u32, index: usize) -> Result<CounterexampleSpec> {
    let mut scan = construct::counterexample_scan(delta, 100_000)?;
    scan.nth(index).ok_or_else(|| {
        anyhow!("no qualifying prime pair at index {index} for delta {delta} within the 64-bit range")
    })
}

fn cmd_counterexample(delta: u32, index: usize, emit: Option<&PathBuf>) -> Result<(Value, u8)> {
    let spec = nth_counterexample(delta, index)?;
    let report = construct::counterexample_report(&spec)?;
    if let Some(path) = emit {
        fs::write(path, format::serialize_covering(&report.covering))
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok((
        json!({
            "command": "counterexample",
            "delta": spec.delta,
            "index": index,
            "q": spec.q,
            "q_next": spec.q_next,
            "exponent": spec.exponent,
            "l": spec.l.value(),
            "factorization": spec.l.to_string(),
            "slack": spec.slack,
            "covering_size": report.covering.len(),
            "sun_sufficient": report.sun_check.sufficient,
            "is_covering": report.verification.is_covering,
            "period": report.verification.period,
            "unused_divisors": report.unused_divisors,
            "emitted": emit.map(|p| p.display().to_string()),
        }),
        EXIT_AFFIRMATIVE,
    ))
}

fn cmd_corpus(name: Option<&str>, emit: bool) -> Result<(Value, u8)> {
    match name {
        None => {
            let entries: Vec<Value> = corpus()
                .iter()
                .map(|e| {
                    json!({
                        "name": e.name,
                        "kind": match e.payload {
                            CorpusPayload::Covering(_) => "covering",
                            CorpusPayload::Moduli(_) => "moduli",
                        },
                        "size": match &e.payload {
                            CorpusPayload::Covering(c) => c.len(),
                            CorpusPayload::Moduli(m) => m.len(),
                        },
                        "lcm": e.lcm.value(),
                        "provenance": e.provenance,
                    })
                })
                .collect();
            Ok((json!({ "command": "corpus", "entries": entries }), EXIT_AFFIRMATIVE))
        }
        Some(name) => {
            let entry =
                corpus_entry(name).ok_or_else(|| anyhow!("unknown corpus entry '{name}'"))?;
            if emit {
                let text = match &entry.payload {
                    CorpusPayload::Covering(c) => format::serialize_covering(c),
                    CorpusPayload::Moduli(m) => format::serialize_moduli(m),
                };
                print!("{text}");
                return Ok((Value::Null, EXIT_AFFIRMATIVE));
            }
            let payload = match &entry.payload {
                CorpusPayload::Covering(c) => {
                    json!({ "kind": "covering", "congruences": covering_json(c) })
                }
                CorpusPayload::Moduli(m) => json!({ "kind": "moduli", "moduli": m.as_slice() }),
            };
            Ok((
                json!({
                    "command": "corpus",
                    "name": entry.name,
                    "lcm": entry.lcm.value(),
                    "provenance": entry.provenance,
                    "payload": payload,
                }),
                EXIT_AFFIRMATIVE,
            ))
        }
    }
}

fn dispatch(command: &Command) -> Result<(Value, u8)> {
    match command {
        Command::Verify { file, strategy } => cmd_verify(file, *strategy),
        Command::Minimal { file } => cmd_minimal(file),
        Command::Lambda { file, lcm } => cmd_lambda(file, *lcm),
        Command::Count { moduli, brute, assert_minimal } => {
            cmd_count(moduli, *brute, *assert_minimal)
        }
        Command::Enumerate { moduli, limit } => cmd_enumerate(moduli, *limit),
        Command::IsCoveringNumber { n, budget } => cmd_is_covering_number(*n, *budget),
        Command::IsPrimitive { n, budget } => cmd_is_primitive(*n, *budget),
        Command::SunCheck { n } => cmd_sun_check(*n),
        Command::SunGenerate { primes } => cmd_sun_generate(primes),
        Command::Counterexample { delta, index, emit } => {
            cmd_counterexample(*delta, *index, emit.as_ref())
        }
        Command::Corpus { name, emit } => cmd_corpus(name.as_deref(), *emit),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(pool) => pool,
        Err(e) => {
            println!("{}", json!({ "error": e.to_string() }));
            return ExitCode::from(EXIT_ERROR);
        }
    };
    match pool.install(|| dispatch(&cli.command)) {
        Ok((Value::Null, code)) => ExitCode::from(code),
        Ok((report, code)) => {
            println!("{report}");
            ExitCode::from(code)
        }
        Err(e) => {
            println!("{}", json!({ "error": format!("{e:#}") }));
            ExitCode::from(EXIT_ERROR)
        }
    }
}
