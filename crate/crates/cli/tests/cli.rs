use std::process::{Command, Output};

use serde_json::Value;

fn zmeasure(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zmeasure")).args(args).output().expect("spawn zmeasure")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = zmeasure(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad json from {args:?}: {e}"));
    (out.status.code().unwrap(), v)
}

#[test]
fn measure_degree_two_values() {
    let out = zmeasure(&["measure", "--z", "4", "--zprime", "3", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("(2),2,20/21,1,"), "{text}");
    assert!(text.contains("\"(1,1)\",2,1/21,1,"), "{text}");
}

#[test]
fn measure_plancherel_and_empty() {
    let out = zmeasure(&["measure", "--plancherel", "--theta", "2", "--n", "2"]);
    let text = stdout(&out);
    assert!(text.contains("(2),2,2/3,"), "{text}");
    assert!(text.contains("\"(1,1)\",2,1/3,"), "{text}");

    let (code, v) = json(&["measure", "--z", "4", "--zprime", "3", "--n", "0", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "zmeasure.measure/1");
    assert_eq!(v["rows"][0]["value"], "1/1");
    assert_eq!(v["rows"][0]["partition"], Value::Array(vec![]));
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "--suite", "normalization", "--max-n", "8"][..],
        &["verify", "--suite", "pfaffian", "--max-size", "6", "--random", "20"][..],
        &["verify", "--suite", "theorems", "--max-size", "6"][..],
    ] {
        let (code, v) = json(args);
        assert_eq!(code, 0, "{args:?}: {v}");
        assert_eq!(v["schema"], "zmeasure.verify/1");
        assert_eq!(v["passed"], true);
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(zmeasure(&["measure", "--n", "2"]).status.code(), Some(2));
    assert_eq!(zmeasure(&["measure", "--z", "1", "--zprime", "1", "--xi", "2", "--max-size", "2"]).status.code(), Some(2));
    assert_eq!(zmeasure(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(zmeasure(&["frobnicate"]).status.code(), Some(2));
    // outside the positivity range the sampler refuses to run
    assert_eq!(zmeasure(&["sample", "--z", "1/3", "--zprime", "5/3", "--n", "4"]).status.code(), Some(2));
}

#[test]
fn sample_is_reproducible() {
    let args = ["sample", "--z", "1+i", "--zprime", "1-i", "--xi", "1/3", "--max-size", "10", "--count", "50", "--seed", "99"];
    let a = zmeasure(&args);
    let b = zmeasure(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("# algorithm=chacha8-u64-inverse-cdf/v1 seed=99"), "{text}");
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 51);

    let other = zmeasure(&["sample", "--z", "1+i", "--zprime", "1-i", "--xi", "1/3", "--max-size", "10", "--count", "50", "--seed", "100"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn sample_json_schema() {
    let (code, v) = json(&["sample", "--plancherel", "--theta", "1/2", "--n", "6", "--count", "5", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "zmeasure.sample/1");
    let samples = v["samples"].as_array().unwrap();
    assert_eq!(samples.len(), 5);
    for s in samples {
        let total: u64 = s.as_array().unwrap().iter().map(|p| p.as_u64().unwrap()).sum();
        assert_eq!(total, 6);
    }
}

#[test]
fn ensemble_pf_and_prob_agree() {
    let (code, v) = json(&["ensemble", "pf", "--z", "4", "--zprime", "3", "--xi", "1/16", "--partition", "2,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "zmeasure.ensemble.pf/1");
    assert_eq!(v["equal"], true);
    assert_eq!(v["admissible"], true);

    let (code, v) = json(&["ensemble", "prob", "--plancherel", "--eta", "1/2", "--theta", "1/2", "--partition", "3,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "zmeasure.ensemble.prob/1");
    assert_eq!(v["equal"], true);
    assert_eq!(v["partition"], serde_json::json!([3, 1]));
}

#[test]
fn kernel_exact_window() {
    let (code, v) = json(&["kernel", "--plancherel", "--eta", "1/2", "--radius", "5", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "zmeasure.kernel/1");
    assert_eq!(v["exact"], true);
    assert_eq!(v["inverse_exact"], true);
    // radius 5/2 covers ±1/2, ±3/2, ±5/2: 6 points, 36 blocks
    assert_eq!(v["rows"].as_array().unwrap().len(), 36);
}

#[test]
fn convergence_partial_sums() {
    let (code, v) = json(&["convergence", "--plancherel", "--eta", "1/2", "--max-size", "10"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "zmeasure.convergence/1");
    assert_eq!(v["all_equal"], true);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows[0]["degree_sum"], "1/1");
    let last = rows.last().unwrap()["residual"].as_f64().unwrap();
    assert!(last < 1e-9, "residual {last}");
}
