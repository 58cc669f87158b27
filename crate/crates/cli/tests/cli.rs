use std::process::{Command, Output};

use serde_json::Value;

fn weylb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylb")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn group_orders() {
    let out = weylb(&["group", "--d0", "1", "--tl", "1", "--m", "1", "--d", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["group"]["v_order"], 4);
    assert_eq!(v["group"]["conjugation"].as_array().unwrap().len(), 0);

    let out = weylb(&["group", "--d0", "1", "--tl", "2", "--m", "0", "--d", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["group"]["v_order"], 32);
    assert_eq!(v["group"]["c_order"], 8);
    assert_eq!(v["group"]["p_order"], 4);
    assert_eq!(v["group"]["conjugation"], serde_json::json!([[1, 1, 2], [2, 1, 1]]));
}

#[test]
fn group_rejects_even_d0() {
    let out = weylb(&["group", "--d0", "2", "--tl", "1", "--m", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("odd"));
}

#[test]
fn atlas_n4_q3_ell5() {
    let out = weylb(&["atlas", "--n", "4", "--q", "3", "--ell", "5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["d0"], 2);
    let cases: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["case"].as_u64().unwrap()).collect();
    assert!(cases.contains(&1) && cases.contains(&3));
    assert!(!cases.contains(&2));
    for r in v["rows"].as_array().unwrap() {
        assert_eq!(r["ell_part_identity"], true);
        assert_eq!(r["levi_type"], r["levi_type_computed"]);
    }
}

#[test]
fn atlas_json_round_trips() {
    let out = weylb(&["atlas", "--n", "6", "--q", "4", "--ell", "7", "--format", "json"]);
    let v = json(&out);
    let rows: Vec<weylb::atlas::AtlasEntry> = serde_json::from_value(v["rows"].clone()).unwrap();
    assert!(!rows.is_empty());
    assert_eq!(serde_json::to_value(&rows).unwrap(), v["rows"]);
}

#[test]
fn atlas_rejects_small_ell() {
    let out = weylb(&["atlas", "--n", "2", "--q", "4", "--ell", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_rejects_composite_ell() {
    let out = weylb(&["verify", "--ell", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_rejects_unknown_suite() {
    let out = weylb(&["verify", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn default_sweep_passes_and_is_deterministic() {
    let a = weylb(&["verify"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let b = weylb(&["verify", "--jobs", "1"]);
    assert_eq!(b.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let suites: std::collections::BTreeSet<&str> =
        v["reports"].as_array().unwrap().iter().map(|r| r["suite"].as_str().unwrap()).collect();
    for s in ["cyclo-lemma", "tits-core", "supplement", "commutators", "graph-action", "extmap-hypotheses", "charext", "atlas-ellparts"] {
        assert!(suites.contains(s), "{s} missing");
    }
}

#[test]
fn sign_mutation_fails_with_counterexample() {
    let out = weylb(&["verify", "--suite", "commutators", "--d0", "1", "--tl", "1", "--m", "1", "--d", "odd", "--q", "3", "--mutate", "sign:3:17"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let failed: Vec<&Value> = v["reports"][0]["checks"].as_array().unwrap().iter().filter(|c| c["passed"] == false).collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|c| !c["counterexample"].as_str().unwrap().is_empty()));
}

#[test]
fn cocycle_mutation_fails() {
    let out = weylb(&["verify", "--suite", "tits-core", "--mutate", "cocycle:2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn markdown_output() {
    let out = weylb(&["verify", "--suite", "cyclo-lemma", "--format", "md"]);
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("| suite |"));
    assert!(s.contains("cyclo.lemma_minus"));
}
