use std::process::{Command, Output};

use serde_json::Value;

fn jetfrob(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jetfrob")).args(args).env_remove("JETFROB_THREADS").output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = jetfrob(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    jetfrob(args).status.code().unwrap()
}

const SUBCOMMANDS: [&str; 10] =
    ["jets", "fedder", "fregular", "good-monomial", "fpt", "compare-fpt", "certify", "matrix", "dims", "gen"];

#[test]
fn every_report_carries_the_envelope() {
    let runs: [&[&str]; 10] = [
        &["jets", "--p", "5", "--m", "1", "--f", "x1^2 + x2^2"],
        &["fedder", "--p", "3", "--f", "x1 x2 + x3 x4"],
        &["fregular", "--p", "5", "--f", "x1 x2 + x3 x4", "--panel", "variables"],
        &["good-monomial", "--p", "5", "--m", "1", "--f", "x1^2 + x2^2 + x3^2"],
        &["fpt", "--p", "3", "--emax", "2", "--f", "x1", "--n", "2"],
        &["compare-fpt", "--p", "5", "--m", "0", "--mprime", "1", "--f", "x1", "--n", "2"],
        &["certify", "--d", "2", "--N", "4", "--m", "1", "--p", "5", "--e", "2"],
        &["matrix", "--mode", "C", "--d", "2", "--m", "4"],
        &["dims", "--d", "2", "--N", "4", "--m", "0..3"],
        &["gen", "--d", "2", "--N", "3", "--p", "5", "--seed", "7"],
    ];
    for (args, name) in runs.iter().zip(SUBCOMMANDS) {
        let v = json(args);
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["command"], name);
        assert!(v["inputs"].is_object() && v["result"].is_object(), "{name}");
    }
}

#[test]
fn jets_lists_equations_in_order() {
    let v = json(&["jets", "--p", "5", "--m", "2", "--f", "x1^2"]);
    let eqs = v["result"]["equations"].as_array().unwrap();
    let texts: Vec<&str> = eqs.iter().map(|e| e["text"].as_str().unwrap()).collect();
    assert_eq!(texts, ["1 x1_0^2", "2 x1_0 x1_1", "1 x1_1^2 + 2 x1_0 x1_2"]);
    assert_eq!(v["result"]["degree"], 2);
}

#[test]
fn fedder_verdicts_and_certificates() {
    let v = json(&["fedder", "--p", "7", "--f", "x1^3 + x2^3 + x3^3"]);
    assert_eq!(v["result"]["verdict"], "F-pure");
    assert_eq!(v["result"]["revalidation"]["passed"], true);
    let v = json(&["fedder", "--p", "5", "--f", "x1^3 + x2^3 + x3^3"]);
    assert_eq!(v["result"]["verdict"], "not F-pure");
    assert!(v["result"]["certificate"].is_null());
    let v = json(&["fedder", "--p", "7", "--m", "1", "--general", "2,4,1"]);
    assert_eq!(v["result"]["verdict"], "F-pure");
    assert_eq!(v["inputs"]["general"]["seed"], 1);
}

#[test]
fn asserts_map_to_exit_status() {
    let base = ["fedder", "--p", "5", "--f", "x1^3 + x2^3 + x3^3"];
    assert_eq!(code(&[&base[..], &["--assert", "not-f-pure"]].concat()), 0);
    let out = jetfrob(&[&base[..], &["--assert", "f-pure"]].concat());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("not F-pure"));
    assert_eq!(code(&[&base[..], &["--assert", "no-such-check"]].concat()), 2);
}

#[test]
fn error_classes_have_distinct_codes() {
    assert_eq!(code(&["fedder", "--p", "4", "--f", "x1"]), 4);
    assert_eq!(code(&["fedder", "--p", "5", "--f", "x1 +* 2"]), 3);
    assert_eq!(code(&["fedder", "--p", "5"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["fedder", "--p", "5", "--input", "/nonexistent/f.txt"]), 7);
    assert_eq!(code(&["certify", "--d", "3", "--N", "4", "--p", "7"]), 5);
    assert_eq!(code(&["compare-fpt", "--p", "5", "--m", "1", "--mprime", "0", "--f", "x1"]), 5);
    assert_eq!(code(&["dims", "--d", "2", "--N", "4", "--m", "3..1"]), 2);
    assert_eq!(code(&["fedder", "--p", "17", "--e", "2", "--f", "x1"]), 4);
    assert_eq!(code(&["fedder", "--p", "5", "--n", "1", "--f", "x2"]), 6);
    assert_eq!(code(&["matrix", "--mode", "lp", "--d", "2", "--m", "60"]), 8);
    assert_eq!(code(&["--version"]), 0);
}

#[test]
fn fregular_reports_rejected_elements() {
    let v = json(&["fregular", "--p", "5", "--f", "x1", "--n", "2", "--panel", "none", "--g", "x1", "--g", "x2"]);
    let probes = v["result"]["probes"].as_array().unwrap();
    assert_eq!(probes[0]["verdict"], "rejected");
    assert_eq!(probes[1]["verdict"], "certified-regular-for-g");
}

#[test]
fn fpt_rows_are_exact_strings() {
    let v = json(&["fpt", "--p", "3", "--emax", "2", "--f", "x1^2 + x2^2"]);
    let ratios: Vec<&str> = v["result"]["rows"].as_array().unwrap().iter().map(|r| r["ratio"].as_str().unwrap()).collect();
    assert_eq!(ratios, ["0/3", "0/9"]);
    let v = json(&["fpt", "--p", "5", "--m", "1", "--f", "x1", "--n", "2"]);
    assert_eq!(v["result"]["rows"][0]["ratio"], "8/5");
    let v = json(&["fpt", "--p", "5", "--m", "1", "--center", "trivial-jet:0", "--f", "x1", "--n", "2"]);
    assert_eq!(v["result"]["rows"][0]["r_q"], 4);
    assert_eq!(code(&["fpt", "--p", "5", "--center", "bogus", "--f", "x1"]), 2);
}

#[test]
fn compare_fpt_checks_the_inequality() {
    let v = json(&["compare-fpt", "--p", "7", "--m", "0", "--mprime", "1", "--emax", "1", "--f", "x1^2+x2^2+x3^2+x4^2", "--assert", "inequality-holds"]);
    let row = &v["result"]["rows"][0];
    assert_eq!(row["q"], 7);
    assert!(row["r_prime_q"].as_u64().unwrap() + 6 <= row["r_q"].as_u64().unwrap());
}

#[test]
fn certify_reports_headroom_and_membership() {
    let v = json(&["certify", "--d", "2", "--N", "4", "--m", "1", "--p", "5", "--e", "2"]);
    assert_eq!(v["result"]["headroom"]["positive_weight_max"], 24);
    assert_eq!(v["result"]["valuation"], 0);
    assert!(v["result"]["membership"].is_null());
    let v = json(&["certify", "--d", "2", "--N", "4", "--p", "5", "--e", "2", "--verify", "--seed", "5", "--seeds", "2"]);
    let m = v["result"]["membership"].as_array().unwrap();
    assert_eq!(m.len(), 2);
    assert_eq!(m[0]["seed"], 5);
    assert_eq!(code(&["certify", "--d", "2", "--N", "4", "--m", "3", "--p", "5"]), 5);
}

#[test]
fn matrix_modes() {
    let v = json(&["matrix", "--mode", "lp", "--d", "2", "--m", "2", "--p", "7"]);
    assert_eq!(v["result"]["optimum"], "3");
    assert_eq!(v["result"]["grid"]["optimum"], "3");
    let v = json(&["matrix", "--mode", "C", "--d", "2", "--m", "4"]);
    assert_eq!(v["result"]["gamma"], serde_json::json!(["3", "4", "3", "0", "0"]));
    let v = json(&["matrix", "--mode", "A", "--p", "7", "--m", "1", "--general", "2,4,1", "--assert", "conditions-hold"]);
    assert_eq!(v["result"]["matrix"]["role"], "a-extracted");
    assert_eq!(code(&["matrix", "--mode", "A", "--m", "1", "--f", "x1"]), 2);
}

#[test]
fn dims_range_and_flags() {
    let v = json(&["dims", "--d", "3", "--N", "3", "--m", "2"]);
    assert_eq!(v["result"]["levels"][0]["verdict"], "not-irreducible");
    let v = json(&["dims", "--d", "2", "--N", "4", "--m", "1", "--isolated", "false"]);
    assert_eq!(v["result"]["levels"][0]["verdict"], "inconclusive");
}

#[test]
fn gen_is_reproducible_and_threads_do_not_matter() {
    let a = jetfrob(&["gen", "--d", "2", "--N", "4", "--p", "7", "--seeds", "5", "--format", "json", "--threads", "1"]);
    let b = jetfrob(&["gen", "--d", "2", "--N", "4", "--p", "7", "--seeds", "5", "--format", "json", "--threads", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["result"]["collisions"], 0);
    let c = Command::new(env!("CARGO_BIN_EXE_jetfrob"))
        .args(["gen", "--d", "2", "--N", "4", "--p", "7", "--seeds", "5", "--format", "json"])
        .env("JETFROB_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(a.stdout, c.stdout);
    assert_eq!(code(&["gen", "--d", "2", "--N", "4", "--p", "7", "--threads", "0"]), 2);
}

#[test]
fn output_and_input_files() {
    let dir = std::env::temp_dir().join(format!("jetfrob-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("f.txt");
    std::fs::write(&input, "x1 x2;\n x3 x4 - x1 x2 + x3 x4\n").unwrap();
    let out = dir.join("report.json");
    let o = jetfrob(&["jets", "--p", "5", "--input", input.to_str().unwrap(), "--format", "json", "--output", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["inputs"]["f"].as_array().unwrap().len(), 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn readme_maps_every_subcommand() {
    let readme = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../README.md")).unwrap();
    for name in SUBCOMMANDS {
        let needle = format!("`jetfrob {name}");
        assert!(
            readme.lines().any(|l| l.trim_start().starts_with('|') && l.contains(&needle)),
            "README table lacks {name}"
        );
    }
}
