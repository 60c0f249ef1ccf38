//! End-to-end tests of the `vsc` binary: output schemas, exit codes,
//! determinism, and diagnostics.

use std::process::{Command, Output};

fn vsc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vsc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn vsc_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vsc"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn hypersurface_both_pipelines_agree() {
    let out = vsc(&["hypersurface", "--N", "5", "--k", "3", "--dmax", "2"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let doc = json_of(&out);
    assert_eq!(doc["command"], "hypersurface");
    assert_eq!(doc["mode"], "both");
    assert_eq!(doc["modes_agree"], true);
    assert_eq!(doc["tables"][0]["d"], 1);
    assert_eq!(doc["tables"][0]["L"], serde_json::json!(["6", "15", "6"]));
    assert_eq!(doc["tables"][1]["L"], serde_json::json!(["36"]));
}

#[test]
fn hypersurface_csv_has_the_documented_columns() {
    let out = vsc(&[
        "hypersurface",
        "--N",
        "5",
        "--k",
        "3",
        "--dmax",
        "2",
        "--out",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let expected = "N,k,d,n,coefficient\n5,3,1,0,6\n5,3,1,1,15\n5,3,1,2,6\n5,3,2,0,36\n";
    assert_eq!(String::from_utf8_lossy(&out.stdout), expected);
}

#[test]
fn reruns_are_byte_identical() {
    let args = ["hypersurface", "--N", "5", "--k", "5", "--dmax", "2"];
    let first = vsc(&args);
    let second = vsc(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);

    let margs = [
        "mirror", "--N", "2", "--bundles", "1:t:z,-3:t", "--order", "2",
    ];
    let mfirst = vsc(&margs);
    let msecond = vsc(&margs);
    assert_eq!(mfirst.status.code(), Some(0), "stderr: {}", stderr_of(&mfirst));
    assert_eq!(mfirst.stdout, msecond.stdout);
}

#[test]
fn local_euler_pair_table_is_reciprocal_degrees() {
    let out = vsc(&[
        "local",
        "--N",
        "2",
        "--bundles",
        "-1:e,-1:e",
        "--dmax",
        "3",
        "--insertions",
        "1,1",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let doc = json_of(&out);
    assert_eq!(doc["geometry"], "O(-1)+O(-1) over CP^1");
    assert_eq!(doc["insertions"], serde_json::json!([1, 1]));
    let entries = doc["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 3);
    for (i, want) in ["1", "1/2", "1/3"].iter().enumerate() {
        assert_eq!(entries[i]["d"], (i + 1) as u64);
        assert_eq!(entries[i]["poly"], serde_json::json!([[want, 0]]));
    }
}

#[test]
fn mirror_emits_the_requested_series() {
    let out = vsc(&[
        "mirror", "--N", "2", "--bundles", "1:t:z,-3:t", "--order", "2", "--emit", "yukawa",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let doc = json_of(&out);
    assert!(doc.get("map").is_none());
    assert!(doc.get("tables").is_none());
    let yukawa = doc["yukawa"].as_array().unwrap();
    assert_eq!(yukawa[0]["poly"], serde_json::json!([["1", 0]]));
    assert_eq!(
        yukawa[1]["poly"],
        serde_json::json!([["3", 0], ["-3", 1], ["1", 2]])
    );

    let all = vsc(&[
        "mirror", "--N", "2", "--bundles", "1:t:z,-3:t", "--order", "1",
    ]);
    assert_eq!(all.status.code(), Some(0));
    let doc = json_of(&all);
    assert_eq!(
        doc["map"]["t_minus_x"][0]["poly"],
        serde_json::json!([["14", 0], ["6", 1]])
    );
    assert_eq!(doc["metric_eta00"], serde_json::json!([["3", 0], ["-1", 1]]));
}

#[test]
fn verify_conjecture_reports_and_exits_zero_on_match() {
    let out = vsc(&["verify-conjecture", "--N", "5", "--k", "5", "--dmax", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["all_match"], true);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 2);
    // Timings go to stderr, keeping stdout reproducible.
    assert!(stderr_of(&out).contains("degree 1"));
}

#[test]
fn verify_theorem_passes_and_rejects_nonnef_degrees() {
    let out = vsc(&["verify-theorem", "--N", "6", "--k", "4", "--D", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["pass"], true);
    assert_eq!(doc["beta"], 0);

    let nonnef = vsc(&["verify-theorem", "--N", "5", "--k", "7", "--D", "2"]);
    assert_eq!(nonnef.status.code(), Some(2));
}

#[test]
fn missing_required_flag_is_a_usage_error() {
    let out = vsc(&["hypersurface", "--N", "5", "--dmax", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_bundle_grammar_is_a_usage_error() {
    let out = vsc(&["local", "--N", "2", "--bundles", "2:x", "--dmax", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("k:e, k:t, or k:t:<param>"));
}

#[test]
fn term_budget_failures_name_the_composition() {
    let out = vsc_with_env(
        &[
            "hypersurface", "--N", "5", "--k", "5", "--dmax", "2", "--mode", "residue",
        ],
        "VSC_MAX_TERMS",
        "2",
    );
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_of(&out);
    assert!(err.contains("composition"), "stderr: {err}");
    assert!(err.contains("(1,1)"), "stderr: {err}");
}

#[test]
fn thread_knob_does_not_change_output() {
    let single = vsc(&[
        "hypersurface", "--N", "6", "--k", "8", "--dmax", "2", "--threads", "1",
    ]);
    let many = vsc(&[
        "hypersurface", "--N", "6", "--k", "8", "--dmax", "2", "--threads", "4",
    ]);
    assert_eq!(single.status.code(), Some(0));
    assert_eq!(single.stdout, many.stdout);
}
