//! End-to-end tests of the foldkappa binary: flags, exit codes, JSON report
//! shape against the shipped schema, CSV output, and reproducibility.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_foldkappa");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("FOLDKAPPA_WORKERS")
        .output()
        .expect("binary runs")
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("FOLDKAPPA_WORKERS")
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn json_lines(out: &Output) -> Vec<Value> {
    stdout_str(out)
        .lines()
        .map(|l| serde_json::from_str(l).expect("each stdout line is JSON"))
        .collect()
}

/// Minimal validator for the shipped draft-07 schema: required fields,
/// closed property set, verdict enum, field types.
fn assert_matches_schema(report: &Value) {
    let schema_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../report.schema.json");
    let schema: Value =
        serde_json::from_str(&std::fs::read_to_string(schema_path).expect("schema file ships"))
            .expect("schema is JSON");
    let obj = report.as_object().expect("report is an object");
    for req in schema["required"].as_array().unwrap() {
        assert!(
            obj.contains_key(req.as_str().unwrap()),
            "missing required field {req} in {report}"
        );
    }
    let allowed: BTreeSet<&str> = schema["properties"]
        .as_object()
        .unwrap()
        .keys()
        .map(|k| k.as_str())
        .collect();
    for key in obj.keys() {
        assert!(allowed.contains(key.as_str()), "unexpected field {key}");
    }
    let verdicts: BTreeSet<&str> = schema["properties"]["verdict"]["enum"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert!(verdicts.contains(report["verdict"].as_str().unwrap()));
    assert!(report["claim_id"].as_str().is_some_and(|s| !s.is_empty()));
    assert!(report["parameters"].is_object());
    assert!(report["elapsed_ms"].is_u64());
    assert!(report["tool_version"].is_string());
    if let Some(seed) = obj.get("seed") {
        assert!(seed.is_u64());
    }
}

#[test]
fn gen_edge_counts_match_the_families() {
    let out = run(&["gen", "--kind", "fq", "--n", "4"]);
    assert_eq!(code(&out), 0);
    let text = stdout_str(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# kind=fq n=4"));
    assert_eq!(lines.count(), 40);

    let out = run(&["gen", "--kind", "q", "--n", "3", "--format", "edgelist"]);
    let text = stdout_str(&out);
    assert_eq!(text.lines().count(), 1 + 12);
}

#[test]
fn gen_json_format_is_valid_json() {
    let out = run(&["gen", "--kind", "fq", "--n", "3", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["kind"], "fq");
    assert_eq!(doc["n"], 3);
    assert_eq!(doc["degree"], 4);
    let adjacency = doc["adjacency"].as_array().unwrap();
    assert_eq!(adjacency.len(), 8);
    assert_eq!(adjacency[0], serde_json::json!([1, 2, 4, 7]));
}

#[test]
fn gen_rejects_bad_dimension_with_usage_exit() {
    assert_eq!(code(&run(&["gen", "--kind", "fq", "--n", "0"])), 2);
    assert_eq!(code(&run(&["gen", "--kind", "fq", "--n", "1"])), 2);
    assert_eq!(code(&run(&["gen", "--kind", "zz", "--n", "4"])), 2);
}

#[test]
fn gen_unwritable_output_is_an_io_error() {
    let out = run(&[
        "gen",
        "--kind",
        "q",
        "--n",
        "3",
        "--out",
        "/nonexistent-dir/sub/edges.txt",
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn gen_writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fq4.edges");
    let out = run(&["gen", "--kind", "fq", "--n", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout_str(&out).is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    assert_eq!(body.lines().count(), 41);
}

#[test]
fn theta_exact_disagreement_fails_with_witness() {
    let out = run(&["theta", "--kind", "fq", "--n", "5", "--g", "3", "--mode", "exact"]);
    assert_eq!(code(&out), 1);
    let reports = json_lines(&out);
    assert_eq!(reports.len(), 1);
    let r = &reports[0];
    assert_matches_schema(r);
    assert_eq!(r["verdict"], "FAIL");
    assert_eq!(r["computed"], 12);
    assert_eq!(r["expected"], 13);
    assert_eq!(r["witness"]["set"], serde_json::json!([0, 3, 12]));
}

#[test]
fn theta_exact_agreement_passes() {
    let out = run(&["theta", "--kind", "fq", "--n", "6", "--g", "3", "--mode", "exact"]);
    assert_eq!(code(&out), 0);
    let r = &json_lines(&out)[0];
    assert_matches_schema(r);
    assert_eq!(r["verdict"], "PASS");
    assert_eq!(r["computed"], 16);
}

#[test]
fn theta_star_mode_reports_an_upper_bound() {
    let out = run(&["theta", "--kind", "fq", "--n", "8", "--g", "9", "--mode", "star"]);
    assert_eq!(code(&out), 0);
    let r = &json_lines(&out)[0];
    assert_matches_schema(r);
    assert_eq!(r["verdict"], "UPPER_BOUND_ONLY");
    assert_eq!(r["computed"], 37);
}

#[test]
fn theta_formula_mode_covers_both_hypercube_branches() {
    let out = run(&["theta", "--kind", "q", "--n", "4", "--g", "6", "--mode", "formula"]);
    assert_eq!(code(&out), 0);
    let r = &json_lines(&out)[0];
    assert_eq!(r["computed"], 7);
    assert_eq!(r["parameters"]["branch"], "high");

    let out = run(&["theta", "--kind", "q", "--n", "4", "--g", "99", "--mode", "formula"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn ckappa_exact_small_cases_and_exit_codes() {
    let out = run(&["ckappa", "--kind", "fq", "--n", "4", "--g", "1", "--mode", "exact"]);
    assert_eq!(code(&out), 0);
    let r = &json_lines(&out)[0];
    assert_matches_schema(r);
    assert_eq!(r["computed"], 5);
    assert_eq!(r["verdict"], "FINDING");

    let out = run(&["ckappa", "--kind", "fq", "--n", "5", "--g", "2", "--mode", "exact"]);
    assert_eq!(code(&out), 0);
    let r = &json_lines(&out)[0];
    assert_eq!(r["computed"], 10);
    assert_eq!(r["verdict"], "FINDING");
    assert_eq!(r["parameters"]["exhaustive"], true);
}

#[test]
fn ckappa_upper_mode_star_cut_at_theorem_scale() {
    let out = run(&["ckappa", "--kind", "fq", "--n", "8", "--g", "3", "--mode", "upper"]);
    assert_eq!(code(&out), 0);
    let r = &json_lines(&out)[0];
    assert_matches_schema(r);
    assert_eq!(r["verdict"], "UPPER_BOUND_ONLY");
    assert_eq!(r["computed"]["cut_size"], 22);
    assert_eq!(r["parameters"]["certified"], true);
    assert!(r["computed"]["component_count"].as_u64().unwrap() >= 4);
}

#[test]
fn ckappa_formula_mode_rejects_out_of_domain_with_usage_exit() {
    let out = run(&["ckappa", "--kind", "q", "--n", "6", "--g", "7", "--mode", "formula"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json_lines(&out)[0]["computed"], 19);

    assert_eq!(
        code(&run(&["ckappa", "--kind", "q", "--n", "4", "--g", "9", "--mode", "formula"])),
        2
    );
}

#[test]
fn verify_lemmas_at_n4_is_clean_and_schema_valid() {
    let out = run(&["verify", "--suite", "lemmas", "--n", "4..4"]);
    assert_eq!(code(&out), 0);
    let reports = json_lines(&out);
    assert!(!reports.is_empty());
    for r in &reports {
        assert_matches_schema(r);
        assert_ne!(r["verdict"], "FAIL", "{r}");
    }
}

#[test]
fn verify_accepts_single_dimension_syntax() {
    let out = run(&["verify", "--suite", "structure", "--n", "4"]);
    assert_eq!(code(&out), 0);
    assert!(!json_lines(&out).is_empty());
}

#[test]
fn verify_theta_suite_at_n5_reports_the_failures() {
    let out = run(&["verify", "--suite", "theta", "--n", "5"]);
    assert_eq!(code(&out), 1);
    let reports = json_lines(&out);
    let fails: Vec<&Value> = reports
        .iter()
        .filter(|r| r["verdict"] == "FAIL")
        .collect();
    assert_eq!(fails.len(), 4);
    for r in &fails {
        assert!(r["witness"].is_object(), "FAIL must carry a witness: {r}");
    }
}

#[test]
fn verify_rejects_bad_ranges() {
    assert_eq!(code(&run(&["verify", "--suite", "all", "--n", "6..4"])), 2);
    assert_eq!(code(&run(&["verify", "--suite", "all", "--n", "abc"])), 2);
    assert_eq!(code(&run(&["verify", "--suite", "nope", "--n", "4"])), 2);
}

#[test]
fn verify_stdout_is_reproducible_across_worker_counts() {
    let strip = |s: String| -> String {
        let re_free: String = s
            .lines()
            .map(|l| {
                let v: Value = serde_json::from_str(l).unwrap();
                let mut v = v;
                v.as_object_mut().unwrap().remove("elapsed_ms");
                serde_json::to_string(&v).unwrap()
            })
            .collect::<Vec<_>>()
            .join("\n");
        re_free
    };
    let a = run_env(
        &["verify", "--suite", "lemmas", "--n", "4..5", "--seed", "9"],
        "FOLDKAPPA_WORKERS",
        "1",
    );
    let b = run(&["verify", "--suite", "lemmas", "--n", "4..5", "--seed", "9", "--workers", "4"]);
    assert_eq!(code(&a), code(&b));
    assert_eq!(strip(stdout_str(&a)), strip(stdout_str(&b)));
}

#[test]
fn bad_workers_env_is_a_usage_error() {
    let out = run_env(&["verify", "--suite", "structure", "--n", "4"], "FOLDKAPPA_WORKERS", "abc");
    assert_eq!(code(&out), 2);
    let out = run(&["verify", "--suite", "structure", "--n", "4", "--workers", "0"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn pretty_flag_mirrors_to_stderr_without_touching_stdout() {
    let plain = run(&["theta", "--kind", "fq", "--n", "4", "--g", "2", "--mode", "exact"]);
    let pretty = run(&["theta", "--kind", "fq", "--n", "4", "--g", "2", "--mode", "exact", "--pretty"]);
    let strip = |s: String| -> String {
        s.lines()
            .map(|l| {
                let mut v: Value = serde_json::from_str(l).unwrap();
                v.as_object_mut().unwrap().remove("elapsed_ms");
                serde_json::to_string(&v).unwrap()
            })
            .collect()
    };
    assert_eq!(strip(stdout_str(&plain)), strip(stdout_str(&pretty)));
    assert!(plain.stderr.is_empty());
    let err = String::from_utf8(pretty.stderr.clone()).unwrap();
    assert!(err.contains("theta/exact-vs-closed-form/kind=fq/n=4/g=2"));
}

#[test]
fn faultsim_csv_on_stdout_has_the_documented_columns() {
    let out = run(&["faultsim", "--kind", "fq", "--n", "6", "--faults", "7", "--trials", "300", "--seed", "5"]);
    assert_eq!(code(&out), 0);
    let text = stdout_str(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,kind,fault_count,trials,seed,g,prob_geq_g_components,largest_p50,largest_p99"
    );
    let rows: Vec<&str> = lines.collect();
    assert!(!rows.is_empty());
    for row in rows {
        assert_eq!(row.split(',').count(), 9);
        assert!(row.starts_with("6,fq,7,300,5,"));
    }
}

#[test]
fn faultsim_below_connectivity_never_disconnects() {
    let out = run(&["faultsim", "--kind", "fq", "--n", "8", "--faults", "8", "--trials", "1000", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    let text = stdout_str(&out);
    for row in text.lines().skip(1) {
        let cells: Vec<&str> = row.split(',').collect();
        let g: u32 = cells[5].parse().unwrap();
        let p: f64 = cells[6].parse().unwrap();
        if g >= 2 {
            assert_eq!(p, 0.0, "8 faults can never disconnect FQ_8: {row}");
        } else {
            assert_eq!(p, 1.0);
        }
    }
}

#[test]
fn faultsim_csv_file_plus_stats_json_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let out = run(&[
        "faultsim", "--kind", "fq", "--n", "5", "--faults", "6", "--trials", "200", "--seed", "3",
        "--csv", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let stats: Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(stats["n"], 5);
    assert_eq!(stats["kind"], "fq");
    assert_eq!(stats["fault_count"], 6);
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("n,kind,fault_count,trials,seed,"));
    assert!(csv.lines().count() >= 2);
}

#[test]
fn faultsim_threshold_table_mode_emits_a_report() {
    let out = run(&["faultsim", "--kind", "fq", "--n", "5", "--g-max", "2", "--trials", "100", "--seed", "1"]);
    assert_eq!(code(&out), 0);
    let r = &json_lines(&out)[0];
    assert_matches_schema(r);
    assert_eq!(r["verdict"], "FINDING");
    assert_eq!(r["seed"], 1);
}

#[test]
fn faultsim_requires_faults_or_gmax_and_validates_counts() {
    assert_eq!(code(&run(&["faultsim", "--kind", "fq", "--n", "5"])), 2);
    assert_eq!(
        code(&run(&["faultsim", "--kind", "fq", "--n", "4", "--faults", "16", "--trials", "10"])),
        2
    );
}

#[test]
fn faultsim_rerun_is_byte_identical() {
    let args = ["faultsim", "--kind", "fq", "--n", "6", "--faults", "10", "--trials", "400", "--seed", "99"];
    let a = run(&args);
    let b = run_env(&args, "FOLDKAPPA_WORKERS", "1");
    assert_eq!(stdout_str(&a), stdout_str(&b));
}
