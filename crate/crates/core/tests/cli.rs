//! Front-end behaviour: exit statuses, JSON schema and table overrides.

use std::path::PathBuf;
use std::process::Command;

use cpsum::cli::{run, EXIT_AMBIGUOUS, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
use cpsum::{FgAbGroup, Tables};
use serde_json::Value;

fn cpsum(args: &str) -> cpsum::cli::Outcome {
    run(std::iter::once("cpsum").chain(args.split_whitespace()))
}

fn json(args: &str) -> Value {
    let out = cpsum(args);
    assert_eq!(out.status, EXIT_OK, "{args}: {}", out.stderr);
    serde_json::from_str(&out.stdout).expect("valid JSON")
}

#[test]
fn pi_s0_of_two_copies_of_cp4() {
    let out = cpsum("compute --invariant pi-s0 --k 2 --n 4 --json");
    assert_eq!(out.status, EXIT_OK);
    assert_eq!(out.stdout.trim(), r#"{"rank":0,"torsion":[2,2,2]}"#);
}

#[test]
fn ambiguous_result_and_require_unique() {
    let out = cpsum("compute --invariant pi-s0 --k 1 --n 8");
    assert_eq!(out.status, EXIT_OK);
    assert!(out.stdout.contains("ambiguous"));
    assert!(out.stdout.contains("Z_2^3") && out.stdout.contains("Z_2 + Z_4"));

    let out = cpsum("compute --invariant pi-s0 --k 1 --n 8 --require-unique");
    assert_eq!(out.status, EXIT_AMBIGUOUS);

    let v = json("compute --invariant pi-s0 --k 1 --n 8 --json");
    assert_eq!(v["ambiguous"].as_array().map(Vec::len), Some(2));
}

#[test]
fn oracle_suite_passes() {
    let out = cpsum("verify --suite oracle --max-order 64");
    assert_eq!(out.status, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.contains("suite oracle:"));
    assert!(out.stdout.contains("0 failures"));
}

#[test]
fn usage_errors() {
    for args in [
        "frobnicate",
        "compute --invariant nonsense --k 2 --n 4",
        "compute --invariant pi-s0 --k 2 --n 4 --bogus",
        "classify-extension --sub Z_2x --quot Z_2",
    ] {
        let out = cpsum(args);
        assert_eq!(out.status, EXIT_USAGE, "{args}");
        assert!(!out.stderr.is_empty(), "{args}");
    }
    // outside the tabulated range
    assert_eq!(cpsum("compute --invariant pi-s0 --k 2 --n 40").status, EXIT_USAGE);
}

#[test]
fn json_round_trips_through_the_group_schema() {
    for args in [
        "compute --invariant pi-s0 --k 3 --n 5 --json",
        "compute --invariant f-pl --k 2 --n 6 --json",
        "compute --invariant k0 --k 2 --n 3 --json",
    ] {
        let v = json(args);
        let g = v.get("group").unwrap_or(&v);
        let parsed: FgAbGroup = serde_json::from_value(g.clone()).expect(args);
        assert_eq!(serde_json::to_value(&parsed).unwrap(), *g, "{args}");
    }
}

#[test]
fn text_and_json_agree() {
    for args in [
        "compute --invariant pi-s0 --k 3 --n 5",
        "compute --invariant f-o --k 2 --n 4",
        "compute --invariant pl-o --k 4 --n 7",
    ] {
        let text = cpsum(args);
        assert_eq!(text.status, EXIT_OK);
        let v = json(&format!("{args} --json"));
        let g: FgAbGroup = serde_json::from_value(v.get("group").unwrap_or(&v).clone()).unwrap();
        let first = text.stdout.lines().next().unwrap_or_default();
        assert!(first.contains(&g.to_string()), "{args}: {first} vs {g}");
    }
}

#[test]
fn structure_set_json_carries_counts_and_citations() {
    let v = json("compute --invariant structure-set --k 2 --n 4 --json");
    assert_eq!(v["exotic_count"], 4);
    assert!(v["citations"].as_array().is_some_and(|c| !c.is_empty()));
    let v = json("compute --invariant f-o --k 2 --n 4 --json --citations");
    assert!(v["citations"].as_array().is_some_and(|c| !c.is_empty()));
}

#[test]
fn classify_extension() {
    let v = json("classify-extension --sub Z_2 --quot Z_2 --json");
    assert_eq!(v["ambiguous"].as_array().map(Vec::len), Some(2));
    let v = json("classify-extension --sub Z_2 --quot Z_2 --no-element-of-order 4 --json");
    assert_eq!(v, serde_json::json!({"rank": 0, "torsion": [2, 2]}));
    let out = cpsum("classify-extension --sub Z_2 --quot Z_2 --require-unique");
    assert_eq!(out.status, EXIT_AMBIGUOUS);
}

#[test]
fn verify_is_deterministic_under_a_seed() {
    let a = cpsum("verify --suite snf --seed 7 --cases 50");
    let b = cpsum("verify --suite snf --seed 7 --cases 50");
    assert_eq!(a.status, EXIT_OK);
    assert_eq!(a.stdout, b.stdout);
}

fn corrupted_tables() -> PathBuf {
    let text: String = Tables::builtin_text()
        .lines()
        .map(|l| {
            if l.contains(r#""kind":"ko-cp""#) && l.contains(r#""n_mod_4":3"#) && l.contains(r#""s":3}"#) {
                l.replace(r#""torsion":[2]"#, r#""torsion":[]"#)
                    .replace(r#"[{"symbol":"x","relation":{"torsion":{"order":2}}}]"#, "[]")
            } else {
                l.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n");
    assert_ne!(text.trim(), Tables::builtin_text().trim(), "corruption applied");
    let path = std::env::temp_dir().join(format!("cpsum-corrupt-{}.jsonl", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

fn binary(args: &str, tables: Option<&PathBuf>) -> std::process::Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cpsum"));
    cmd.args(args.split_whitespace());
    match tables {
        Some(p) => cmd.env("FGAB_TABLES", p),
        None => cmd.env_remove("FGAB_TABLES"),
    };
    cmd.output().expect("binary runs")
}

#[test]
fn binary_exit_codes() {
    let out = binary("compute --invariant pi-s0 --k 2 --n 4 --json", None);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), r#"{"rank":0,"torsion":[2,2,2]}"#);
    assert_eq!(binary("nope", None).status.code(), Some(EXIT_USAGE));
    let out = binary("compute --invariant pi-s0 --k 1 --n 8 --require-unique", None);
    assert_eq!(out.status.code(), Some(EXIT_AMBIGUOUS));
}

#[test]
fn verify_fails_on_corrupted_tables() {
    let path = corrupted_tables();
    let out = binary("verify --suite ko", Some(&path));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(EXIT_FAILURE), "{stdout}");
    assert!(stdout.contains("FAIL"), "{stdout}");
    assert!(stdout.contains("Fujii"), "violations carry their citation: {stdout}");

    let out = binary("verify --suite ko", None);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    std::fs::remove_file(path).ok();
}
