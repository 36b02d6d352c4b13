//! CLI acceptance: the exit-code contract, report shape, and
//! determinism — every command run twice with `--threads 1` and twice
//! with `--threads 8` must produce byte-identical stdout.

use std::path::PathBuf;
use std::process::{Command, Output};

use coverings_core::corpus::corpus_entry;
use coverings_core::format;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_coverings"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn fixtures() -> (PathBuf, PathBuf, PathBuf) {
    let dir = std::env::temp_dir().join(format!("coverings-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let erdos = dir.join("erdos12.cov");
    let example_c = dir.join("exampleC.cov");
    let m80 = dir.join("m80.mod");
    std::fs::write(
        &erdos,
        format::serialize_covering(corpus_entry("erdos12").unwrap().covering().unwrap()),
    )
    .unwrap();
    std::fs::write(
        &example_c,
        format::serialize_covering(corpus_entry("exampleC").unwrap().covering().unwrap()),
    )
    .unwrap();
    std::fs::write(
        &m80,
        format::serialize_moduli(corpus_entry("M80").unwrap().moduli().unwrap()),
    )
    .unwrap();
    (erdos, example_c, m80)
}

#[test]
fn acceptance_10_reports_are_deterministic_across_threads() {
    let (erdos, example_c, m80) = fixtures();
    let erdos = erdos.to_str().unwrap();
    let example_c = example_c.to_str().unwrap();
    let m80 = m80.to_str().unwrap();

    let commands: Vec<Vec<&str>> = vec![
        vec!["verify", erdos],
        vec!["verify", erdos, "--strategy", "crt"],
        vec!["minimal", example_c],
        vec!["lambda", erdos, "--lcm", "12"],
        vec!["count", "--moduli", m80],
        vec!["count", "--moduli", m80, "--brute"],
        vec!["enumerate", "--moduli", m80, "--limit", "3"],
        vec!["is-covering-number", "12"],
        vec!["is-covering-number", "40"],
        vec!["is-primitive", "12"],
        vec!["sun-check", "36608"],
        vec!["sun-generate", "--primes", "2,5"],
        vec!["counterexample", "--delta", "3"],
        vec!["corpus"],
        vec!["corpus", "--name", "C1"],
        vec!["corpus", "--name", "C1", "--emit"],
    ];

    for args in &commands {
        let mut outputs = Vec::new();
        for threads in ["1", "1", "8", "8"] {
            let output = run(&[args.as_slice(), &["--threads", threads]].concat());
            outputs.push(output);
        }
        for pair in outputs.windows(2) {
            assert_eq!(
                pair[0].stdout, pair[1].stdout,
                "stdout differs across runs for {args:?}"
            );
            assert_eq!(
                pair[0].status.code(),
                pair[1].status.code(),
                "exit code differs across runs for {args:?}"
            );
        }
    }
    println!(
        "ACCEPTANCE 10 PASS: {} commands byte-identical across repeated runs with --threads 1 and --threads 8",
        commands.len()
    );
}

#[test]
fn exit_codes_follow_the_contract() {
    let (erdos, example_c, m80) = fixtures();

    // Affirmative: 0.
    assert_eq!(run(&["verify", erdos.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(run(&["is-covering-number", "12"]).status.code(), Some(0));
    assert_eq!(run(&["is-primitive", "80"]).status.code(), Some(0));
    assert_eq!(run(&["sun-check", "12"]).status.code(), Some(0));
    assert_eq!(run(&["count", "--moduli", m80.to_str().unwrap()]).status.code(), Some(0));

    // Negative: 1.
    assert_eq!(run(&["minimal", example_c.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(run(&["is-covering-number", "40"]).status.code(), Some(1));
    assert_eq!(run(&["is-primitive", "24"]).status.code(), Some(1));
    assert_eq!(run(&["sun-check", "36608"]).status.code(), Some(1));

    // Error or unknown: 2.
    assert_eq!(run(&["verify", "/nonexistent/file.cov"]).status.code(), Some(2));
    assert_eq!(run(&["sun-generate", "--primes", "3,5"]).status.code(), Some(2));
    assert_eq!(run(&["corpus", "--name", "nope"]).status.code(), Some(2));
    assert_eq!(
        run(&["is-covering-number", "12", "--budget", "1"]).status.code(),
        Some(2),
        "budget exhaustion is an unknown verdict"
    );
}

#[test]
fn reports_are_single_json_objects() {
    let (erdos, _, m80) = fixtures();
    for args in [
        vec!["verify", erdos.to_str().unwrap()],
        vec!["count", "--moduli", m80.to_str().unwrap(), "--brute"],
        vec!["corpus"],
        vec!["sun-check", "80"],
        vec!["verify", "/nonexistent/file.cov"],
    ] {
        let output = run(&args);
        let stdout = String::from_utf8(output.stdout).unwrap();
        let lines: Vec<&str> = stdout.lines().collect();
        assert_eq!(lines.len(), 1, "expected one report line for {args:?}");
        let value: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
        assert!(value.is_object(), "report must be a JSON object for {args:?}");
    }
}

#[test]
fn emitted_corpus_files_feed_back_into_verify() {
    let dir = std::env::temp_dir().join(format!("coverings-cli-roundtrip-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for name in ["erdos12", "exampleB", "exampleC", "exampleC_hat", "C1"] {
        let emitted = run(&["corpus", "--name", name, "--emit"]);
        assert_eq!(emitted.status.code(), Some(0));
        let path = dir.join(format!("{name}.cov"));
        std::fs::write(&path, &emitted.stdout).unwrap();
        let verify = run(&["verify", path.to_str().unwrap()]);
        assert_eq!(verify.status.code(), Some(0), "{name} failed to verify");
    }
}

#[test]
fn counterexample_emits_a_verifiable_covering() {
    let dir = std::env::temp_dir().join(format!("coverings-cli-cx-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("delta3.cov");
    let output = run(&["counterexample", "--delta", "3", "--index", "1", "--emit", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(report["l"], serde_json::json!(2i64.pow(14) * 17 * 19));
    let verify = run(&["verify", path.to_str().unwrap(), "--strategy", "bitset"]);
    assert_eq!(verify.status.code(), Some(0));
}
