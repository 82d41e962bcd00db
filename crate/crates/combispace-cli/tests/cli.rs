//! Golden-transcript tests for the binary: outputs, JSON round-trips, and
//! the exit-code table (0 ok, 1 usage/parse, 2 violation, 3 bound).

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_combispace"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).trim().to_string()
}

fn json_doc(output: &Output) -> Value {
    serde_json::from_str(&stdout(output)).expect("stdout is one JSON document")
}

const S1: &str = r#"{"kind":"schreier","alpha":"1"}"#;
const S2: &str = r#"{"kind":"schreier","alpha":"2"}"#;
const CARD2: &str = r#"{"kind":"cardinality","n":2}"#;
const INTERVAL: &str = r#"{"kind":"interval","ks_prefix":[0,2,5],"tail_step":3}"#;

#[test]
fn member_golden() {
    let out = run(&["member", "--family", S2, "--set", "[2,3,4,5,6]"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "true");

    let out = run(&["member", "--family", S1, "--set", "[1,2]", "--json"]);
    assert_eq!(json_doc(&out), serde_json::json!({ "member": false }));
}

#[test]
fn dualnorm_golden() {
    let out = run(&["dualnorm", "--family", S1, "--vec", r#"{"1":"1","2":"1"}"#, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_doc(&out);
    assert_eq!(doc["value"], "2");
    assert_eq!(doc["certificate"]["1"], "1");

    let out = run(&["dualnorm", "--family", S1, "--vec", r#"{"2":"1","3":"1"}"#, "--json"]);
    assert_eq!(json_doc(&out)["value"], "1");
}

#[test]
fn isosearch_golden() {
    let out = run(&["isosearch", "--family", S1, "--support", "5", "--window", "14"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "identity");

    let out = run(&[
        "isosearch", "--family", INTERVAL, "--support", "4", "--window", "16", "--json",
    ]);
    let doc = json_doc(&out);
    assert_eq!(doc["count"], 6);
    assert_eq!(doc["permutations"][0], serde_json::json!([1, 2, 3, 4]));
    // every candidate fixes 1
    for perm in doc["permutations"].as_array().unwrap() {
        assert_eq!(perm[0], 1);
    }
}

#[test]
fn isocheck_violation_exit_code() {
    let perm = r#"{"window":5,"perm":[1,2,4,3,5]}"#;
    let out = run(&["isocheck", "--family", S1, "--perm", perm, "--window", "10", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let doc = json_doc(&out);
    assert_eq!(doc["holds"], false);
    assert_eq!(doc["counterexample"], serde_json::json!([3, 5, 6, 7]));

    let identity = r#"{"window":3,"perm":[1,2,3]}"#;
    let out = run(&["isocheck", "--family", S1, "--perm", identity, "--window", "10"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn checker_exit_codes() {
    let seeded = r#"{"kind":"explicit","universe":3,"sets":[[1],[2],[3],[1,2]]}"#;
    let out = run(&["check-regular", "--family", seeded, "--window", "3", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let doc = json_doc(&out);
    assert_eq!(doc["ok"], false);
    assert_eq!(
        doc["spreading_violations"][0],
        serde_json::json!([[1, 2], [1, 3]])
    );

    let out = run(&["check-regular", "--family", S2, "--window", "10"]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["minpres", "--alpha", "w", "--window", "12", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_doc(&out)["ok"], true);
}

#[test]
fn usage_and_bound_exit_codes() {
    let out = run(&["member", "--family", "{bad json", "--set", "[1]"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    let out = run(&["member", "--family", S1, "--set", "[3,2]"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["maximal", "--family", S1, "--set", "[1,2]"]);
    assert_eq!(out.status.code(), Some(1), "precondition violation is a usage error");

    let big: Vec<String> = (1..=21).map(|i| i.to_string()).collect();
    let within = format!("[{}]", big.join(","));
    let out = run(&["enumerate", "--family", CARD2, "--within", &within]);
    assert_eq!(out.status.code(), Some(3));

    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn bound_overrides() {
    let big: Vec<String> = (1..=21).map(|i| i.to_string()).collect();
    let within = format!("[{}]", big.join(","));
    let out = run(&[
        "enumerate", "--family", CARD2, "--within", &within, "--max-support", "21", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    // C(21,0) + C(21,1) + C(21,2)
    assert_eq!(json_doc(&out)["count"], 1 + 21 + 210);
}

#[test]
fn extend_and_extseq() {
    let evens = r#"{"kind":"arithmetic_progression","first":2,"step":2}"#;
    let out = run(&["extend", "--family", S1, "--set", "[3]", "--tail", evens]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "[3,4,6]");

    let out = run(&["extseq", "--family", S1, "--n", "2", "--count", "3", "--json"]);
    assert_eq!(
        json_doc(&out)["sets"],
        serde_json::json!([[3], [4], [5]])
    );

    let out = run(&["extseq", "--family", S1, "--n", "1"]);
    assert_eq!(out.status.code(), Some(1), "maximal singleton is a usage error");
}

#[test]
fn norm_extreme_and_doubling() {
    let out = run(&["norm", "--family", CARD2, "--vec", r#"{"1":"3","2":"1","3":"2"}"#]);
    assert_eq!(stdout(&out), "5");

    let out = run(&["extreme", "--family", S1, "--vec", r#"{"2":"i","3":"-1"}"#, "--json"]);
    assert_eq!(json_doc(&out), serde_json::json!({ "extreme": true }));

    let out = run(&["extremes", "--family", INTERVAL, "--window", "4", "--json"]);
    assert_eq!(
        json_doc(&out)["supports"],
        serde_json::json!([[1], [2, 3], [2, 4], [3, 4]])
    );

    let out = run(&["doubling", "--vec", r#"{"2":"1","3":"-1"}"#, "--json"]);
    let doc = json_doc(&out);
    assert_eq!(doc["4"], "1");
    assert_eq!(doc["5"], "1");
    assert_eq!(doc["6"], "-1");
    assert_eq!(doc["7"], "-1");
}

#[test]
fn ordinal_surface() {
    let out = run(&["ordinal", "--expr", "w^2*3 + w + 4", "--json"]);
    let doc = json_doc(&out);
    assert_eq!(doc["canonical"], "w^2*3+w+4");
    assert_eq!(doc["class"], "successor");
    assert_eq!(doc["predecessor"], "w^2*3+w+3");

    let out = run(&["ordinal", "--expr", "w^2*3+w", "--json"]);
    assert_eq!(json_doc(&out)["class"], "limit");

    let out = run(&["ordinal", "--expr", "w+1", "--compare", "w", "--json"]);
    let doc = json_doc(&out);
    assert_eq!(doc["class"], "successor");
    assert_eq!(doc["predecessor"], "w");
    assert_eq!(doc["compare"], "GT");

    let out = run(&["ordinal", "--expr", "w*2", "--fs", "5", "--json"]);
    assert_eq!(json_doc(&out)["fs"], "w+5");

    let out = run(&["ordinal", "--expr", "w+w^2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn json_documents_reparse() {
    for args in [
        vec!["member", "--family", S1, "--set", "[2,3]", "--json"],
        vec!["norm", "--family", S1, "--vec", r#"{"2":"1","3":"1"}"#, "--json"],
        vec!["extseq", "--family", S2, "--n", "2", "--count", "1", "--json"],
        vec!["minpres", "--alpha", "2", "--window", "10", "--json"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let _doc = json_doc(&out);
    }
}
