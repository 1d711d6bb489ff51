use std::fs;
use std::path::Path;
use std::process::Command;

use gctlab::output::OutputRecord;
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_env(cache: &Path, args: &[&str], env_cache: Option<&Path>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gctlab"));
    cmd.env_remove("GCTLAB_CACHE_DIR");
    match env_cache {
        Some(dir) => {
            cmd.env("GCTLAB_CACHE_DIR", dir);
        }
        None => {
            cmd.arg("--cache-dir").arg(cache);
        }
    }
    let out = cmd.args(args).output().expect("spawn gctlab");
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn run(cache: &Path, args: &[&str]) -> Run {
    run_env(cache, args, None)
}

fn json(cache: &Path, args: &[&str]) -> (i32, OutputRecord) {
    let mut all = args.to_vec();
    all.push("--json");
    let r = run(cache, &all);
    let rec = serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{e}: {}\n{}", r.stdout, r.stderr));
    (r.code, rec)
}

#[test]
fn kron_examples() {
    let dir = tempfile::tempdir().unwrap();
    let (code, rec) = json(dir.path(), &["kron", "--alpha", "2,2", "--beta", "2,2", "--gamma", "2,2", "--verify"]);
    assert_eq!(code, 0);
    assert_eq!(rec.schema, "gctlab/1");
    assert_eq!(rec.result["value"], 1);
    assert_eq!(rec.result["cross_checked"], true);

    let (code, rec) = json(dir.path(), &["kron", "--alpha", "4", "--beta", "2,2", "--gamma", "3,1", "--method", "oracle"]);
    assert_eq!(code, 0);
    assert_eq!(rec.result["value"], 0);
    assert_eq!(rec.method, "oracle");

    let (code, rec) = json(dir.path(), &["kron", "--alpha", "2,1", "--beta", "2,1", "--gamma", "2,1"]);
    assert_eq!(code, 0);
    assert_eq!(rec.result["value"], 1);
    assert_eq!(rec.inputs["alpha"], serde_json::json!([2, 1]));
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["kron", "--alpha", "2", "--beta", "3", "--gamma", "2"],
        &["kron", "--alpha", "1,2", "--beta", "3", "--gamma", "2,1"],
        &["kron", "--alpha", "2,0", "--beta", "2", "--gamma", "2"],
        &["kron", "--alpha", "x", "--beta", "2", "--gamma", "2"],
        &["kron", "--alpha", "2", "--beta", "2", "--gamma", "2", "--method", "magic"],
        &["kron", "--alpha", "3,1", "--beta", "3,1", "--gamma", "2,1,1", "--method", "two-row"],
        &["separate", "--n", "2", "--lambda", "1", "--mu", "1"],
        &["separate", "--n", "2", "--lambda", "2,2", "--mu", ""],
        &["separate", "--n", "2", "--lambda", "", "--mu", ""],
        &["separate", "--n", "3", "--lambda", "1", "--mu", "2"],
        &["obstruct", "--n", "2", "--m", "3", "--d", "7"],
        &["obstruct", "--n", "2", "--m", "3", "--d", "5", "--max-n", "12"],
        &["obstruct", "--n", "0", "--m", "2", "--d", "1"],
        &["verify", "--suite", "nope"],
        &["frobnicate"],
        &[],
    ];
    for args in cases {
        let r = run(dir.path(), args);
        assert_eq!(r.code, 2, "{args:?}: {}{}", r.stdout, r.stderr);
        assert!(!r.stderr.is_empty(), "{args:?}");
        assert!(!r.stderr.contains("panicked"), "{args:?}");
    }
    assert_eq!(run(dir.path(), &["--help"]).code, 0);
}

#[test]
fn separate_examples() {
    let dir = tempfile::tempdir().unwrap();
    let (code, rec) = json(dir.path(), &["separate", "--n", "2", "--lambda", "2", "--mu", ""]);
    assert_eq!(code, 0);
    let c = &rec.result;
    assert_eq!(c["case_tag"], "case2");
    assert_eq!(c["rho"], serde_json::json!([7, 1]));
    assert_eq!(c["m_used"], 8);
    assert_eq!(c["coeff_rect"], 0);
    let keys: Vec<&str> = c.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        ["case_tag", "coeff_rect", "coeff_target", "lambda", "m_used", "mu", "n", "rho"]
    );

    let (code, rec) = json(dir.path(), &["separate", "--n", "2", "--lambda", "4"]);
    assert_eq!(code, 0);
    assert_eq!(rec.result["case_tag"], "case3");
    assert_eq!(rec.result["coeff_target"], 1);

    let (code, rec) = json(dir.path(), &["separate", "--n", "2", "--lambda", "2", "--mu", "2"]);
    assert_eq!(code, 0);
    assert_eq!(rec.result["case_tag"], "case1");
    assert_eq!(rec.result["rho"], serde_json::json!([13, 3]));
    assert_eq!(rec.result["m_used"], 16);

    let (code, rec) = json(dir.path(), &["separate", "--n", "2", "--lambda", "1", "--mu", "1", "--allow-nonzero-mod"]);
    assert_eq!(code, 0);
    assert_eq!(rec.result["case_tag"], "nonzero_mod_n");
}

#[test]
fn obstruct_examples_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let (code, rec) = json(dir.path(), &["obstruct", "--n", "1", "--m", "2", "--d", "1"]);
    assert_eq!(code, 0);
    assert_eq!(rec.result["rows"], serde_json::json!([]));

    let (code, rec) = json(dir.path(), &["obstruct", "--n", "1", "--m", "2", "--d", "2", "--emit-all"]);
    assert_eq!(code, 0);
    let rows = rec.result["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0]["lambda"], serde_json::json!([4]));

    let r = run(dir.path(), &["obstruct", "--n", "1", "--m", "2", "--d", "2", "--emit-all", "--csv"]);
    assert_eq!(r.code, 0);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[2], "\"3,1\",false,true,0,false");

    assert_eq!(run(dir.path(), &["obstruct", "--n", "2", "--m", "3", "--d", "5"]).code, 0);
}

#[test]
fn json_round_trips_and_matches_text() {
    let dir = tempfile::tempdir().unwrap();
    let commands: &[&[&str]] = &[
        &["kron", "--alpha", "3,1", "--beta", "2,2", "--gamma", "2,1,1"],
        &["separate", "--n", "2", "--lambda", "4", "--mu", "2"],
        &["obstruct", "--n", "1", "--m", "2", "--d", "3", "--emit-all"],
        &["verify", "--suite", "parity"],
    ];
    for args in commands {
        json(dir.path(), args);
        let (code, rec) = json(dir.path(), args);
        assert_eq!(code, 0, "{args:?}");
        let text = serde_json::to_string(&rec).unwrap();
        let back: OutputRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rec);

        let human = run(dir.path(), args);
        assert_eq!(human.code, 0);
        let strip = |s: &str| -> Vec<String> {
            s.lines().filter(|l| !l.starts_with("elapsed_ms:")).map(str::to_string).collect()
        };
        assert_eq!(strip(&human.stdout), strip(&rec.to_human()), "{args:?}");
    }
}

fn payload(rec: &OutputRecord) -> Value {
    rec.payload()
}

#[test]
fn repeated_runs_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["obstruct", "--n", "2", "--m", "2", "--d", "4", "--emit-all"];
    let (_, first) = json(dir.path(), &args);
    let (_, warm1) = json(dir.path(), &[&args[..], &["--threads", "1"]].concat());
    let (_, warm4) = json(dir.path(), &[&args[..], &["--threads", "4"]].concat());
    assert_eq!(first.cache_hits, 0);
    assert!(warm1.cache_hits > 0);
    assert_eq!(payload(&warm1), payload(&warm4));
    assert_eq!(first.result, warm1.result);
}

#[test]
fn cache_dir_flag_overrides_env_and_repairs_corruption() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let args = ["kron", "--alpha", "3,1", "--beta", "3,1", "--gamma", "2,1,1", "--method", "oracle", "--json"];

    let r = run_env(flag_dir.path(), &args, Some(env_dir.path()));
    assert_eq!(r.code, 0);
    let table = env_dir.path().join("chartable-n4.json");
    assert!(table.exists());

    let mut cmd_args = vec!["--cache-dir", flag_dir.path().to_str().unwrap()];
    cmd_args.extend_from_slice(&args);
    let r = run_env(flag_dir.path(), &cmd_args, Some(env_dir.path()));
    assert_eq!(r.code, 0);
    assert!(flag_dir.path().join("chartable-n4.json").exists());

    let good = fs::read(&table).unwrap();
    fs::write(&table, b"gctlab-cache 1 chartable n4 sha256:bad\n{\"n\":4}").unwrap();
    let r = run_env(flag_dir.path(), &args, Some(env_dir.path()));
    assert_eq!(r.code, 0, "{}", r.stderr);
    let rec: OutputRecord = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(rec.result["value"], 1);
    assert_eq!(rec.cache_hits, 0);
    assert_eq!(fs::read(&table).unwrap(), good);
}

#[test]
fn verify_suites_pass() {
    let dir = tempfile::tempdir().unwrap();
    for suite in ["rw", "four-row", "parity", "psl2", "plethysm", "branching", "symmetry"] {
        let (code, rec) = json(dir.path(), &["verify", "--suite", suite]);
        assert_eq!(code, 0, "{suite}");
        assert_eq!(rec.result["passed"], true);
        assert_eq!(rec.result["suites"][0]["suite"], suite);
    }
    let (_, rec) = json(dir.path(), &["verify", "--suite", "psl2"]);
    let certs = rec.result["suites"][0]["checks"][0]["details"].as_array().unwrap();
    assert_eq!(certs.len(), 14);
    assert!(certs.iter().all(|c| c["coeff_rect"] == 0 && c["coeff_target"].as_u64().unwrap() >= 1));
}
