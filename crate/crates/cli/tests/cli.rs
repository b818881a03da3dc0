mod common;

use std::process::Command;

use fprod_core::verifier::{self, PropositionReport};
use fprod_core::InstanceFile;

use common::{code, fprod, golden, matches_golden, stable_json, stderr, stdout};

fn ex29() -> String {
    golden("ex29.json").to_string_lossy().into_owned()
}

#[test]
fn verify_p23_matches_golden() {
    let o = fprod(&["verify", "--prop", "P2.3", "--index-size", "2", "--factors", "sierpinski", "--json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    matches_golden("verify_p23.json", &stable_json(&stdout(&o))).unwrap();
}

#[test]
fn verify_text_reports_pair_count() {
    let o = fprod(&["verify", "--prop", "P2.3", "--index-size", "2", "--factors", "sierpinski"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("checked 16 pairs"), "{}", stdout(&o));
}

#[test]
fn check_ex29_matches_golden() {
    let o = fprod(&["check", "--instance", &ex29(), "--prop", "hausdorff"]);
    assert_eq!(code(&o), 0);
    matches_golden("check_ex29_hausdorff.txt", &stdout(&o)).unwrap();
    assert!(stdout(&o).starts_with("hausdorff: false"));
}

#[test]
fn check_json_names_the_pair() {
    let o = fprod(&["check", "--instance", &ex29(), "--prop", "hausdorff", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], false);
    assert_eq!(v["inseparable_pair"], serde_json::json!([["0", "0", "0"], ["1", "0", "0"]]));
}

#[test]
fn check_expect_mismatch_exits_one() {
    let o = fprod(&["check", "--instance", &ex29(), "--prop", "hausdorff", "--expect", "true"]);
    assert_eq!(code(&o), 1);
    let o = fprod(&["check", "--instance", &ex29(), "--prop", "hausdorff", "--expect", "false"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn check_other_predicates() {
    let t1 = fprod(&["check", "--instance", &ex29(), "--prop", "t1"]);
    assert_eq!(stdout(&t1).trim(), "t1: false");

    // Minimal opens leave index 1 free and fix the rest, so a dense set meets all four blocks.
    let dense = fprod(&[
        "check", "--instance", &ex29(), "--prop", "dense", "--set",
        r#"[["0","0","0"],["1","0","1"],["0","1","0"],["1","1","1"]]"#,
    ]);
    assert!(stdout(&dense).starts_with("dense: true"), "{}", stdout(&dense));
    let sparse =
        fprod(&["check", "--instance", &ex29(), "--prop", "dense", "--set", r#"[["0","0","0"],["1","0","0"]]"#]);
    assert!(stdout(&sparse).starts_with("dense: false"));

    let res = fprod(&["check", "--instance", &ex29(), "--prop", "resolvable", "--n", "2"]);
    assert!(stdout(&res).starts_with("resolvable: true"));
    let res3 = fprod(&["check", "--instance", &ex29(), "--prop", "resolvable", "--n", "3"]);
    assert!(stdout(&res3).starts_with("resolvable: false"));

    let proj = fprod(&["check", "--instance", &ex29(), "--prop", "continuous-projections"]);
    let out = stdout(&proj);
    assert!(out.starts_with("continuous-projections: false"));
    assert!(out.contains("projection 1: continuous=false"));
    assert!(out.contains("projection 2: continuous=true"));
}

#[test]
fn check_missing_flag_is_input_error() {
    let o = fprod(&["check", "--instance", &ex29(), "--prop", "dense"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).starts_with("error: code=input "), "{}", stderr(&o));
}

#[test]
fn malformed_instance_is_input_error() {
    let bad = golden("malformed.json");
    let o = fprod(&["check", "--instance", bad.to_str().unwrap(), "--prop", "hausdorff"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("code=input"));
    let missing = fprod(&["check", "--instance", "/nonexistent/x.json", "--prop", "t1"]);
    assert_eq!(code(&missing), 2);
}

#[test]
fn usage_errors_exit_two() {
    let o = fprod(&["verify"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).starts_with("error: code=usage "));
    assert_eq!(code(&fprod(&["frobnicate"])), 2);
}

#[test]
fn unknown_and_out_of_scope_ids() {
    let o = fprod(&["verify", "--prop", "P9.9"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("code=unknown-id"));
    let o = fprod(&["verify", "--prop", "P2.12"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("code=out-of-scope"));
    assert_eq!(code(&fprod(&["search", "--claim", "no-such-claim"])), 2);
}

#[test]
fn budget_exhaustion_exits_three() {
    let o = fprod(&["verify", "--prop", "P2.3", "--budget", "3"]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("INCOMPLETE"));
}

#[test]
fn hypothesis_probe_fails_with_replayable_witness() {
    let o = fprod(&["verify", "--prop", "P2.8", "--filters", "proper", "--ignore-hypotheses", "--json"]);
    assert_eq!(code(&o), 1);
    let r: PropositionReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!r.passed);
    let w = r.witness.expect("failing report carries a witness");
    let again = InstanceFile::parse(&w.instance.to_json()).unwrap();
    assert_eq!(again, w.instance);
    let replay = verifier::replay("P2.8", &w).unwrap();
    assert!(!replay.holds);
    assert!(!replay.in_hypothesis);
}

#[test]
fn search_finds_witness_and_exits_zero() {
    let o = fprod(&["search", "--claim", "hausdorff-for-all-filters", "--json"]);
    assert_eq!(code(&o), 0);
    let r: PropositionReport = serde_json::from_str(&stdout(&o)).unwrap();
    let w = r.witness.unwrap();
    assert_eq!(w.instance.index_filter.generators, vec![vec!["1".to_string()]]);
    assert!(!verifier::replay("hausdorff-for-all-filters", &w).unwrap().holds);

    let alias = fprod(&["search", "--claim", "f-product-of-hausdorff-is-hausdorff-for-all-filters"]);
    assert_eq!(code(&alias), 0);
}

#[test]
fn search_on_true_claim_exits_one() {
    let o = fprod(&["search", "--claim", "equalizer-dense-for-all-filters"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("no counterexample on the grid"));
    let o = fprod(&["search", "--claim", "equalizer-dense-for-all-filters", "--budget", "1"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn enumerate_prints_counts() {
    let o = fprod(&["enumerate", "--what", "topologies", "--size", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().last(), Some("4"));
    let o = fprod(&["enumerate", "--what", "filters", "--size", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 8);
    assert_eq!(v["items"][0], "trivial");
    assert_eq!(code(&fprod(&["enumerate", "--what", "filters", "--size", "9"])), 2);
}

#[test]
fn construct_writes_json() {
    let dir = std::env::temp_dir().join(format!("fprod-construct-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("top.json");
    let o = fprod(&["construct", "--instance", &ex29(), "--what", "f-topology", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["points"], 8);
    // Minimal opens pair points differing only at index 1: 2^4 unions of 4 blocks.
    assert_eq!(v["opens"].as_array().unwrap().len(), 16);
    std::fs::remove_dir_all(&dir).ok();

    // The instance carries no factor filters or uniformities.
    assert_eq!(code(&fprod(&["construct", "--instance", &ex29(), "--what", "f-filter"])), 2);
}

#[test]
fn construct_filter_and_uniformity() {
    let dir = std::env::temp_dir().join(format!("fprod-structs-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("inst.json");
    std::fs::write(
        &path,
        r#"{
            "index_set": ["1", "2"],
            "factors": [
                {"points": ["a", "b"], "filter": [["a"]], "uniformity_base": [[["a","a"],["b","b"]]]},
                {"points": ["a", "b"], "filter": [["b"]], "uniformity_base": [[["a","a"],["b","b"]]]}
            ],
            "index_filter": {"generators": [["1"]]}
        }"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let f = fprod(&["construct", "--instance", p, "--what", "f-filter"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&f)).unwrap();
    // Index 1 must carry the whole factor; index 2 takes the filter core {b}.
    assert_eq!(v["minimal"], serde_json::json!([["a", "b"], ["b", "b"]]));
    let u = fprod(&["construct", "--instance", p, "--what", "f-uniformity"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&u)).unwrap();
    // Core: equal first coordinates; 2 * 4 pairs.
    assert_eq!(v["core"].as_array().unwrap().len(), 8);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn product_cap_can_be_overridden() {
    let run = |cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_fprod"))
            .args(["check", "--instance", &ex29(), "--prop", "t1"])
            .env("FPROD_MAX_PRODUCT", cap)
            .output()
            .unwrap()
    };
    let small = run("4");
    assert_eq!(code(&small), 2);
    assert!(stderr(&small).contains("code=resource"));
    assert_eq!(code(&run("8")), 0);
    assert_eq!(code(&run("lots")), 2);
}

#[test]
fn list_names_every_proposition() {
    let o = fprod(&["list"]);
    let out = stdout(&o);
    for id in verifier::proposition_ids() {
        assert!(out.contains(id));
    }
    assert!(out.contains("out of scope: P2.12"));
}
