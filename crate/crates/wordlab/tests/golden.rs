//! Golden-file tests over `tests/golden/cases.tsv`.
//!
//! Each case stores stdout in `<name>.out` and, for failing exits, stderr in
//! `<name>.err`. Set `WORDLAB_BLESS=1` to rewrite the expected files.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::thread;

use wordlab::report::csv_from_json;

struct Case {
    name: String,
    code: i32,
    args: Vec<String>,
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn cases() -> Vec<Case> {
    let text = std::fs::read_to_string(golden_dir().join("cases.tsv")).expect("cases.tsv");
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut parts = l.splitn(3, '\t');
            let name = parts.next().unwrap().to_string();
            let code = parts.next().unwrap().parse().unwrap();
            let args = parts.next().unwrap().split_whitespace().map(str::to_string).collect();
            Case { name, code, args }
        })
        .collect()
}

struct Output {
    stdout: Vec<u8>,
    stderr: Vec<u8>,
    code: i32,
}

fn run_binary(args: &[String], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_wordlab"));
    cmd.args(args).current_dir(env!("CARGO_MANIFEST_DIR"));
    match threads {
        Some(t) => cmd.env("WORDLAB_THREADS", t),
        None => cmd.env_remove("WORDLAB_THREADS"),
    };
    let out = cmd.output().expect("spawn wordlab");
    Output {
        stdout: out.stdout,
        stderr: out.stderr,
        code: out.status.code().expect("exit code"),
    }
}

fn expected(case: &Case, ext: &str) -> Vec<u8> {
    std::fs::read(golden_dir().join(format!("{}.{ext}", case.name))).unwrap_or_default()
}

#[test]
fn golden_outputs_match_across_runs_and_thread_counts() {
    let bless = std::env::var_os("WORDLAB_BLESS").is_some();
    let cases = cases();
    assert!(cases.len() >= 40);
    for case in &cases {
        let first = run_binary(&case.args, None);
        assert_eq!(first.code, case.code, "{}: exit code; stderr {}", case.name, String::from_utf8_lossy(&first.stderr));
        if bless {
            std::fs::write(golden_dir().join(format!("{}.out", case.name)), &first.stdout).unwrap();
            if case.code != 0 {
                std::fs::write(golden_dir().join(format!("{}.err", case.name)), &first.stderr).unwrap();
            }
        }
        assert_eq!(first.stdout, expected(case, "out"), "{}: stdout differs from golden file", case.name);
        if case.code != 0 {
            assert!(first.stdout.is_empty());
            assert_eq!(first.stderr, expected(case, "err"), "{}: stderr differs", case.name);
        }
        for threads in [None, Some("1"), Some("4")] {
            let again = run_binary(&case.args, threads);
            assert_eq!(again.stdout, first.stdout, "{} with WORDLAB_THREADS={threads:?}", case.name);
            assert_eq!(again.code, first.code);
        }
    }
}

#[test]
fn every_subcommand_is_covered() {
    let cases = cases();
    for sub in ["gen", "dens", "stats", "table", "tm", "sturmian", "pal", "id", "thm51"] {
        assert!(cases.iter().any(|c| c.code == 0 && c.args[0] == sub), "no golden case for {sub}");
    }
    for fmt in ["csv", "json", "plot-csv"] {
        assert!(cases.iter().any(|c| c.args.windows(2).any(|w| w[0] == "--format" && w[1] == fmt)));
    }
}

#[test]
fn concurrent_in_process_runs_match_sequential_ones() {
    let cases: Vec<Case> = cases().into_iter().filter(|c| !c.args.iter().any(|a| a.contains('/'))).collect();
    let sequential: Vec<_> = cases.iter().map(|c| wordlab::run(&c.args, Some("2"))).collect();
    let concurrent: Vec<_> = thread::scope(|s| {
        let handles: Vec<_> = cases.iter().map(|c| s.spawn(|| wordlab::run(&c.args, Some("2")))).collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    for ((c, a), b) in cases.iter().zip(&sequential).zip(&concurrent) {
        assert_eq!(a, b, "{}", c.name);
        assert_eq!(a.stdout, expected(c, "out"), "{}: in-process output differs from the binary", c.name);
    }
}

#[test]
fn json_reparsed_as_csv_matches_direct_csv() {
    let mut checked = 0;
    for case in cases().iter().filter(|c| c.code == 0) {
        let Some(pos) = case.args.iter().position(|a| a == "--format") else { continue };
        if case.args[pos + 1] == "plot-csv" {
            continue;
        }
        let with = |fmt: &str| {
            let mut args = case.args.clone();
            args[pos + 1] = fmt.into();
            let out = wordlab::run(&args, None);
            assert_eq!(out.code, 0, "{}", case.name);
            String::from_utf8(out.stdout).unwrap()
        };
        let json: serde_json::Value = serde_json::from_str(&with("json")).unwrap();
        assert_eq!(csv_from_json(&json).unwrap(), with("csv"), "{}", case.name);
        checked += 1;
    }
    assert!(checked >= 15);
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = std::env::temp_dir().join(format!("wordlab-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dens.csv");
    let args = ["dens", "--n-max", "12", "--format", "csv", "--out", path.to_str().unwrap()];
    let done = wordlab::run(args, None);
    assert_eq!(done.code, 0);
    assert!(done.stdout.is_empty());
    let direct = wordlab::run(["dens", "--n-max", "12", "--format", "csv"], None);
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn timing_is_null_unless_requested() {
    let plain = wordlab::run(["tm", "--n-max", "64", "--format", "json"], None);
    let v: serde_json::Value = serde_json::from_slice(&plain.stdout).unwrap();
    assert!(v["elapsed"].is_null());
    let timed = wordlab::run(["tm", "--n-max", "64", "--format", "json", "--timing"], None);
    let v: serde_json::Value = serde_json::from_slice(&timed.stdout).unwrap();
    assert!(v["elapsed"].as_f64().unwrap() >= 0.0);
}
