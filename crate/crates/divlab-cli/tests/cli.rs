//! End-to-end checks of the binary: envelope shape, exit codes, and the
//! round-trip promise that any printed ground set is valid --set input.

use std::process::{Command, Output};

use serde_json::Value;

fn divlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_divlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn envelope(args: &[&str]) -> Value {
    let out = divlab(args);
    assert!(
        out.status.success(),
        "args {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON envelope")
}

#[test]
fn count_envelope_has_the_documented_shape() {
    let env = envelope(&["count", "--set", "1,5,7,11", "--k", "2", "--s", "1"]);
    assert_eq!(env["command"], "count");
    assert_eq!(env["params"]["set"], "1,5,7,11");
    assert_eq!(env["result"]["count"], 4);
    assert_eq!(env["result"]["target"], 3);
    assert_eq!(env["result"]["exceeds"], true);
    assert!(env["version"].as_str().is_some());
}

#[test]
fn witness_listing_is_opt_in() {
    let env = envelope(&["count", "--set", "1,5,7,11", "--k", "2", "--list"]);
    let w = env["result"]["witnesses"].as_array().unwrap();
    assert_eq!(w.len(), 4);
    assert_eq!(w[0], serde_json::json!([0, 1]));
}

#[test]
fn printed_sets_round_trip_through_set_flags() {
    for args in [
        vec!["family", "k1", "--n", "6"],
        vec!["family", "s-exception", "--s", "3", "--n", "5"],
        vec!["family", "huynh"],
        vec!["antipencil", "build", "--prefix", "2,3,10", "--k", "2"],
    ] {
        let env = envelope(&args);
        let set = env["result"]["set"].as_str().unwrap().to_owned();
        let reread = envelope(&["count", "--set", &set, "--k", "1"]);
        assert_eq!(reread["params"]["set"], set.as_str(), "args {args:?}");
    }
}

#[test]
fn builds_the_reference_anti_pencil() {
    let env = envelope(&["antipencil", "build", "--prefix", "1,2,3", "--k", "2"]);
    assert_eq!(env["result"]["set"], "1,2,3,54");
    assert_eq!(env["result"]["strict"], true);
    assert_eq!(env["result"]["count"], 3);
}

#[test]
fn chain_reports_the_multiplier_bound() {
    let env = envelope(&["chain", "--set", "1,2,3,54", "--k", "2"]);
    assert_eq!(env["result"]["length"], 3);
    assert_eq!(env["result"]["q"], "12");
    assert_eq!(env["result"]["sum_bound"], "1/14");
    assert_eq!(env["result"]["holds"], true);
}

#[test]
fn fracpairs_lists_ordered_solutions() {
    let env = envelope(&["fracpairs", "--m", "1", "--n", "2", "--a", "1", "--b", "1"]);
    assert_eq!(env["result"]["solutions"], serde_json::json!([[3, 6], [4, 4], [6, 3]]));
}

#[test]
fn dominance_width_oracle_agrees() {
    let env = envelope(&["width", "dominance", "--n", "6", "--d", "3", "--oracle"]);
    assert_eq!(env["result"]["width"], env["result"]["oracle"]);
    assert_eq!(env["result"]["agree"], true);
}

#[test]
fn bad_input_exits_two() {
    for args in [
        vec!["count", "--set", "1,5,0", "--k", "2"],
        vec!["count", "--set", "1,5/0", "--k", "1"],
        vec!["count", "--set", "1,5", "--k", "3"],
        vec!["count", "--set", "1,5", "--k", "1", "--bogus"],
        vec!["count", "--set", "1,5", "--k", "1", "--seed", "3"],
        vec!["family", "s-exception", "--s", "3", "--n", "3"],
        vec!["mms", "--k", "2"],
        vec!["verify-grid", "--n", "5..4", "--k", "2", "--sum-bound", "20"],
    ] {
        let out = divlab(&args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
        assert!(out.stderr.len() > 0, "args {args:?} wrote no diagnostic");
    }
}

#[test]
fn resource_caps_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("c.jsonl");
    let out = divlab(&[
        "search",
        "--n",
        "4",
        "--k",
        "2",
        "--sum-bound",
        "40",
        "--budget",
        "10",
        "--checkpoint",
        ckpt.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("resume"), "stderr: {msg}");
    assert!(ckpt.exists());
}

#[test]
fn mms_trial_mode_is_seed_deterministic() {
    let a = envelope(&["mms", "--trials", "20", "--n", "8", "--k", "2", "--seed", "11"]);
    let b = envelope(&["mms", "--trials", "20", "--n", "8", "--k", "2", "--seed", "11"]);
    assert_eq!(a["result"], b["result"]);
    assert_eq!(a["result"]["all_met"], true);
}

#[test]
fn lemma_subcommands_summarize() {
    let one = envelope(&["lemma", "1", "--n-max", "10", "--d-max", "3"]);
    assert_eq!(one["result"]["all_hold"], true);
    assert_eq!(one["result"]["equality_at_d2"], true);

    let two = envelope(&["lemma", "2", "--n-max", "20", "--d-max", "2"]);
    assert_eq!(two["result"]["rows"][0]["threshold"], 3);

    let three = envelope(&["lemma", "3", "--k", "1", "--n-max", "50"]);
    assert_eq!(three["result"]["ratio"], "1");

    let four = envelope(&["lemma", "4", "--grid", "4"]);
    assert_eq!(four["result"]["all_match"], true);
    assert_eq!(four["result"]["bound_violations"], 0);
}
