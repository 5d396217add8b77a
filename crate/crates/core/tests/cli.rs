use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_subgrowth"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin()
        .args(args)
        .env_remove("SUBGROWTH_CACHE_DIR")
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let (code, out, err) = run(&all);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

/// Leaves of command output are strings, booleans or null; numbers never
/// appear as JSON numbers.
fn all_scalars_are_strings(v: &Value) -> bool {
    match v {
        Value::Number(_) => false,
        Value::Array(a) => a.iter().all(all_scalars_are_strings),
        Value::Object(o) => o.values().all(all_scalars_are_strings),
        _ => true,
    }
}

fn keys(v: &Value) -> Vec<&str> {
    v.as_object().unwrap().keys().map(String::as_str).collect()
}

#[test]
fn json_schemas_round_trip() {
    let cases: Vec<(Vec<&str>, Vec<&str>)> = vec![
        (
            vec!["gamma", "A1"],
            vec![
                "R",
                "gamma",
                "inner_form_degrees",
                "input",
                "split_type",
                "warning",
            ],
        ),
        (
            vec!["roots", "G2"],
            vec![
                "bonds",
                "degrees",
                "positive_roots",
                "rank",
                "symmetries",
                "type",
            ],
        ),
        (
            vec!["parabolics", "A3", "--verify-min", "--exact-index", "3"],
            vec!["parabolics", "type", "verify_min"],
        ),
        (
            vec!["count-abelian", "2", "4", "--n", "8", "--brute-check"],
            vec![
                "brute_check",
                "counts",
                "group",
                "n",
                "order",
                "s_n",
                "total",
            ],
        ),
        (
            vec!["extremal", "--R", "3/2", "--d", "2", "--n", "500"],
            vec![
                "R",
                "best_A",
                "best_count",
                "best_r",
                "d",
                "gamma_target",
                "lower_bound",
                "mode",
                "n",
                "ratio",
                "search_space_note",
            ],
        ),
        (vec!["extremal", "--schedule", "2^8,2^16"], vec!["rows"]),
        (vec!["minh", "--q-list", "5"], vec!["rows", "type"]),
        (
            vec!["congruence", "--modulus-cap", "3", "--n", "6"],
            vec!["levels", "lower_bound", "modulus_cap", "n", "total"],
        ),
        (vec!["selfcheck", "--quick"], vec!["checks", "passed"]),
    ];
    for (args, want) in cases {
        let v = json(&args);
        assert_eq!(keys(&v), want, "{args:?}");
        assert!(all_scalars_are_strings(&v), "{args:?}");
        let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert_eq!(v, again);
    }
}

#[test]
fn documented_examples() {
    let v = json(&["gamma", "A1"]);
    assert!(v["gamma"].as_str().unwrap().starts_with("0.0428932188"));
    let v = json(&["count-abelian", "2", "4", "--n", "8"]);
    for (k, c) in [("1", "1"), ("2", "3"), ("4", "3"), ("8", "1")] {
        assert_eq!(v["counts"][k], c);
    }
    assert_eq!(v["s_n"], "8");
    let (code, out, _) = run(&["parabolics", "E8", "--verify-min"]);
    assert_eq!(code, 0);
    assert!(out.contains("min h = 15 at Borel; PASS"), "{out}");
}

#[test]
fn output_is_deterministic() {
    let args = ["extremal", "--R", "1", "--n", "2^40", "--format", "json"];
    assert_eq!(run(&args).1, run(&args).1);
    let args = ["minh", "--q-list", "5,7", "--format", "csv"];
    assert_eq!(run(&args).1, run(&args).1);
}

#[test]
fn csv_has_a_header() {
    let (code, out, _) = run(&["count-abelian", "6", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "index,count\n1,1\n2,1\n3,1\n6,1\n");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["gamma", "XYZ"]).0, 1);
    assert_eq!(run(&["minh", "--q-list", "3"]).0, 1);
    assert_eq!(run(&["extremal", "--R", "1/0", "--n", "10"]).0, 1);
    let (code, _, err) = run(&["extremal", "--n", "10^7", "--exhaustive"]);
    assert_eq!(code, 2);
    assert!(err.contains("1000000"), "{err}");
    let (code, _, err) = run(&["minh", "--q-list", "23", "--element-bound", "1000"]);
    assert_eq!(code, 2, "{err}");
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["no-such-command"]).0, 1);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "precision_digits = 12\nformat = \"json\"\n").unwrap();
    let c = cfg.to_str().unwrap();
    let (code, out, _) = run(&["gamma", "A1", "--config", c]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["gamma"], "0.042893218813");
    let (_, out, _) = run(&[
        "gamma", "A1", "--config", c, "--digits", "5", "--format", "csv",
    ]);
    assert_eq!(out.lines().nth(1).unwrap(), "A1,A1,1,0.04289");
    std::fs::write(&cfg, "precision_digits = 0\n").unwrap();
    assert_eq!(run(&["gamma", "A1", "--config", c]).0, 1);
}

#[test]
fn cache_dir_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = run(&[
        "minh",
        "--q-list",
        "5",
        "--cache-dir",
        d,
        "--format",
        "json",
    ]);
    assert_eq!(first.0, 0);
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let second = bin()
        .args(["minh", "--q-list", "5", "--format", "json"])
        .env("SUBGROWTH_CACHE_DIR", d)
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(second.stdout).unwrap(), first.1);
}
