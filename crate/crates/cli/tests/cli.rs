use std::process::{Command, Output};

fn altsc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_altsc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn eval_gallery_automaton() {
    let out = altsc(&["eval", "lex", "0#1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "accept\n");

    let out = altsc(&["eval", "lex", "1#1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "reject\n");
}

#[test]
fn eval_oracle_only_language() {
    // 1 + 2 + 8 = 11 read least significant bit first
    let out = altsc(&["eval", "primes", "1101"]);
    assert_eq!(stdout(&out), "accept\n");
}

#[test]
fn prob_eval_rabin() {
    let out = altsc(&["prob", "eval", "rabin-half", "11"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "3/4\n");

    let out = altsc(&["prob", "eval", "rabin-half", "10#1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // bin(10) · bin(1) = 1/4 · 1/2
    assert_eq!(v["probability"], "1/8");
    assert_eq!(v["member"], false);
}

#[test]
fn prob_separate() {
    let out = altsc(&["prob", "separate", "0", "1"]);
    assert_eq!(out.status.code(), Some(0));
    // bin(w) must fall strictly between 2/3 and 1; "11" is 3/4
    assert_eq!(stdout(&out), "#11\n");
}

#[test]
fn quotients_count_eq3() {
    let out = altsc(&["quotients", "count-eq3", "--order", "1", "--witness", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], 4);
    assert_eq!(v["bound"], "lower");
}

#[test]
fn query_table_csv() {
    let out = altsc(&["query-table", "l-exp", "--order", "1", "--row", "", "--row", "#0", "--dump", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    // columns ε, 0, 1, #
    assert_eq!(stdout(&out), "row,word,profile\n0,,0001\n1,#0,0101\n");
}

#[test]
fn profile_bound_verdicts() {
    let out = altsc(&["profile", "lex", "--n-max", "40", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("n,count\n0,1\n"));

    let out = altsc(&["profile", "count-eq3", "--n-max", "40", "--class", "n", "--constant", "10"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(altsc(&["eval", "no-such-language", "0"]).status.code(), Some(2));
    assert_eq!(altsc(&["eval", "lex", "0x1"]).status.code(), Some(2));
    assert_eq!(altsc(&["frobnicate"]).status.code(), Some(2));
    let out = altsc(&["quotients", "lex", "--order", "6", "--witness", "6", "--budget", "1000"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn automaton_file_reference() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("parity.aut");
    std::fs::write(
        &path,
        "alphabet: 0 1\nstates: even odd\ninitial: even\naccepting: even\n\
         trans even 0 -> even\ntrans even 1 -> odd\ntrans odd 0 -> odd\ntrans odd 1 -> even\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(stdout(&altsc(&["eval", p, "0110"])), "accept\n");
    assert_eq!(altsc(&["eval", p, "010"]).status.code(), Some(1));

    let out = altsc(&["quotients", p, "--order", "3", "--witness", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], 2);
}

#[test]
fn probabilistic_file_reference() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("coin.paut");
    std::fs::write(
        &path,
        "alphabet: a\nstates: s t\ninitial: s\naccepting: t\n\
         ptrans s a -> s:1/2 t:1/2\nptrans t a -> t:1\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(stdout(&altsc(&["prob", "eval", p, "aa"])), "3/4\n");
    assert_eq!(altsc(&["eval", p, "a", "--threshold", "1/2"]).status.code(), Some(1));
    assert_eq!(altsc(&["eval", p, "aa"]).status.code(), Some(0));
}

#[test]
fn experiment_reports() {
    let out = altsc(&["experiment", "exp-alt", "--n", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["measured"]["distinct_profiles"], 4);
    assert!(v.get("duration").is_none());

    let again = altsc(&["experiment", "exp-alt", "--n", "1", "--format", "json"]);
    assert_eq!(out.stdout, again.stdout);

    let out = altsc(&["experiment", "rabin-claim", "--n", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"certified_classes\":64"));

    let out = altsc(&["experiment", "primes-hs", "--n", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["measured"]["pairs"], 28);
    assert_eq!(v["measured"]["undistinguished"], 0);

    assert_eq!(altsc(&["experiment", "unknown"]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("profile.csv");
    let out = altsc(&["profile", "maj2", "--n-max", "3", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap(), "n,count\n0,1\n1,3\n2,5\n3,7\n");
}
