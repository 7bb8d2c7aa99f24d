//! End-to-end tests of the `bokit` binary: output shapes, exit codes, the
//! JSON/env switches, and the table/cache file formats.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bokit<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_bokit"))
        .args(args)
        .env_remove("BOKIT_JSON")
        .env_remove("BOKIT_WORKERS")
        .output()
        .expect("spawning the bokit binary")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn compute_prints_exact_sequences_and_polynomials() {
    let cases: [(&[&str], &str); 6] = [
        (&["compute", "p", "--to", "10"], "1,1,2,3,5,7,11,15,22,30,42\n"),
        (&["compute", "colored", "--k", "2", "--to", "4"], "1,2,5,10,20\n"),
        (&["compute", "sigma", "--to", "8"], "1,3,4,7,6,12,8,15\n"),
        (&["compute", "darcais", "--n", "3"], "(1/6)x^3 + (3/2)x^2 + (4/3)x\n"),
        (&["compute", "darcais", "--n", "8", "--at", "3"], "810\n"),
        (
            &["compute", "darcais", "--n", "15", "--at", "1.8"],
            "8944478278729371/3814697265625\n",
        ),
    ];
    for (args, want) in cases {
        let out = bokit(args);
        assert_eq!(exit_code(&out), 0, "{args:?} failed: {}", stderr(&out));
        assert_eq!(stdout(&out), want, "{args:?}");
    }
}

#[test]
fn json_output_is_available_by_flag_and_by_environment() {
    let flag = bokit(["--json", "compute", "p", "--to", "4"]);
    assert_eq!(exit_code(&flag), 0);
    assert_eq!(stdout(&flag), "[\"1\",\"1\",\"2\",\"3\",\"5\"]\n");

    let env = Command::new(env!("CARGO_BIN_EXE_bokit"))
        .args(["compute", "p", "--to", "4"])
        .env("BOKIT_JSON", "true")
        .output()
        .expect("spawning the bokit binary");
    assert_eq!(exit_code(&env), 0);
    assert_eq!(env.stdout, flag.stdout, "env switch must match the flag");

    let at = bokit(["--json", "compute", "darcais", "--n", "8", "--at", "3"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&at)).unwrap();
    assert_eq!(doc["n"], 8);
    assert_eq!(doc["at"], "3");
    assert_eq!(doc["value"], "810");
}

#[test]
fn verify_exit_codes_follow_the_verdict() {
    let clean = bokit(["verify", "t1.1"]);
    assert_eq!(exit_code(&clean), 0, "{}", stderr(&clean));
    assert!(stdout(&clean).contains("Verdict: **holds as stated**"));

    // A ceiling below the statement's own floor confirms the known
    // exceptions but does not verify the statement, and must say so.
    let narrow = bokit(["verify", "t1.1", "--nmax", "9"]);
    assert_eq!(exit_code(&narrow), 1);
    let text = stdout(&narrow);
    assert!(text.contains("range too small"), "{text}");
    assert!(text.contains("statement scope exercised: NO"), "{text}");

    let unknown = bokit(["verify", "t9.9"]);
    assert_eq!(exit_code(&unknown), 2);
}

#[test]
fn certify_reports_the_refuted_sentence_and_signals_it() {
    // The x = 3 chain is sound end to end, but its published intermediate
    // start is refuted, so the exit code must flag the discrepancy.
    let out = bokit(["certify", "x3"]);
    assert_eq!(exit_code(&out), 1, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("# Certification report: family x3"), "{text}");
    assert!(text.contains("closing expression certified positive for ALL a ≥ 12"), "{text}");
    assert!(text.contains("## Refuted published sentences"), "{text}");
}

#[test]
fn certify_json_is_stable_across_the_flag_and_the_environment() {
    let flag = bokit(["certify", "x3", "--json", "--no-tail"]);
    assert_eq!(exit_code(&flag), 1);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&flag)).unwrap();
    assert_eq!(doc["schema"], "bokit-certify/1");
    assert_eq!(doc["family"], "x3");

    let env = Command::new(env!("CARGO_BIN_EXE_bokit"))
        .args(["certify", "x3", "--no-tail"])
        .env("BOKIT_JSON", "true")
        .output()
        .expect("spawning the bokit binary");
    assert_eq!(exit_code(&env), 1);
    assert_eq!(env.stdout, flag.stdout, "env switch must match the flag byte for byte");
}

#[test]
fn roots_grid_and_csv_share_the_same_intervals() {
    let grid = bokit(["roots", "--amax", "3", "--width", "1/100"]);
    assert_eq!(exit_code(&grid), 0, "{}", stderr(&grid));
    let text = stdout(&grid);
    assert!(text.starts_with("| a\\b | 1 | 2 | 3 |"), "{text}");
    assert!(stderr(&grid).contains("published 3×3 comparison"), "{}", stderr(&grid));

    let csv = bokit(["roots", "--amax", "3", "--width", "1/100", "--csv"]);
    assert_eq!(exit_code(&csv), 0);
    let body = stdout(&csv);
    let lines: Vec<&str> = body.lines().collect();
    assert_eq!(lines[0], "a,b,lo,hi,rounded");
    assert_eq!(lines.len(), 1 + 9, "header plus one row per grid cell");
    assert!(lines[1].starts_with("1,1,"), "{}", lines[1]);
    // The (1, 1) zero is exactly 3, so its rounded figure is 3.0.
    assert!(lines[1].ends_with(",3.0"), "{}", lines[1]);
}

#[test]
fn table_round_trip_checks_and_corruption_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p2.jsonl");
    let path_str = path.to_str().unwrap();

    let write = bokit(["table", "write", "--kind", "colored", "--k", "2", "--to", "30", "--out", path_str]);
    assert_eq!(exit_code(&write), 0, "{}", stderr(&write));
    assert!(stderr(&write).contains("wrote 31 rows"));

    let check = bokit(["table", "check", path_str]);
    assert_eq!(exit_code(&check), 0, "{}", stderr(&check));
    assert!(stdout(&check).contains("31 rows, all re-derived exactly"));

    corrupt_last_value(&path);
    let bad = bokit(["table", "check", path_str]);
    assert_eq!(exit_code(&bad), 1);
    assert!(stderr(&bad).contains("row 30 disagrees"), "{}", stderr(&bad));
}

/// Bump the final digit of the last row's value, keeping the JSON well formed
/// so the failure is a value mismatch rather than a parse error.
fn corrupt_last_value(path: &Path) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let last = lines.last_mut().unwrap();
    let tail = "\"}";
    assert!(last.ends_with(tail), "{last}");
    let digit_at = last.len() - tail.len() - 1;
    let digit = last.as_bytes()[digit_at];
    assert!(digit.is_ascii_digit());
    let bumped = b'0' + (digit - b'0' + 1) % 10;
    last.replace_range(digit_at..=digit_at, &(bumped as char).to_string());
    fs::write(path, lines.join("\n") + "\n").unwrap();
}

#[test]
fn polynomial_cache_is_created_reused_and_left_intact() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("darcais.jsonl");
    let cache_str = cache.to_str().unwrap();
    let args = ["compute", "darcais", "--n", "12", "--at", "2", "--cache", cache_str];

    let cold = bokit(args);
    assert_eq!(exit_code(&cold), 0, "{}", stderr(&cold));
    assert!(cache.exists(), "first run must write the cache");
    let written = fs::read(&cache).unwrap();

    let warm = bokit(args);
    assert_eq!(exit_code(&warm), 0);
    assert_eq!(warm.stdout, cold.stdout, "cache reuse must not change the value");
    assert_eq!(fs::read(&cache).unwrap(), written, "a warm read must not rewrite the cache");

    // Asking beyond the cached ceiling extends the file in place.
    let grow = bokit(["compute", "darcais", "--n", "14", "--cache", cache_str]);
    assert_eq!(exit_code(&grow), 0, "{}", stderr(&grow));
    let grown = fs::read(&cache).unwrap();
    assert!(grown.len() > written.len(), "extension must persist the larger table");
}

#[test]
fn bad_requests_exit_two() {
    assert_eq!(exit_code(&bokit(["compute", "darcais", "--n", "3", "--at", "1.8.3"])), 2);
    assert_eq!(exit_code(&bokit(["certify", "x7"])), 2);
    assert_eq!(exit_code(&bokit(["--workers", "0", "compute", "p", "--to", "3"])), 2);
    assert_eq!(exit_code(&bokit(["table", "write", "--kind", "plain", "--k", "2", "--to", "5", "--out", "/dev/null"])), 2);
}

#[test]
fn worker_count_does_not_change_compute_output() {
    let one = bokit(["--workers", "1", "compute", "colored", "--k", "3", "--to", "20"]);
    let many = Command::new(env!("CARGO_BIN_EXE_bokit"))
        .args(["compute", "colored", "--k", "3", "--to", "20"])
        .env("BOKIT_WORKERS", "2")
        .output()
        .expect("spawning the bokit binary");
    assert_eq!(exit_code(&one), 0);
    assert_eq!(many.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
}
