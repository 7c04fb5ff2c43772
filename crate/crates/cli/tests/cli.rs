//! End-to-end tests of the binary: exit codes, report determinism, and
//! the construct -> verify round trip through files.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mrcode"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn construct_pmr_split_passes_with_exit_zero() {
    let out = run(&[
        "construct",
        "pmr-split",
        "--m",
        "2",
        "--r",
        "3",
        "--delta",
        "2",
        "--field",
        "11",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = stdout_json(&out);
    assert_eq!(report["code"]["n"], 8);
    assert_eq!(report["code"]["k"], 4);
    let certs = report["certificates"].as_array().unwrap();
    assert!(certs.iter().all(|c| c["pass"] == true));
    assert!(certs.iter().any(|c| c["name"] == "pmr"));
}

#[test]
fn bound_dmin_value() {
    let out = run(&["bound", "dmin", "--n", "15", "--k", "5", "--r", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["derived"]["bound"], 9);
}

#[test]
fn bound_comparison_flags_discrepancy() {
    let out = run(&["bound", "thm5", "--N", "15", "--D", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let derived = &stdout_json(&out)["derived"];
    assert_eq!(derived["thm5"], 337);
    assert_eq!(derived["cited_bound"], 499);
    assert_eq!(derived["chen"], 1001);
    assert_eq!(derived["matches_cited"], false);
    assert_eq!(derived["gopalan_cited"], 16384);
}

#[test]
fn usage_errors_exit_two() {
    // invalid parameters
    let out = run(&[
        "construct",
        "pmr-split",
        "--m",
        "2",
        "--r",
        "3",
        "--delta",
        "9",
        "--field",
        "11",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // unknown flag (clap's own exit code)
    let out = run(&["bound", "dmin", "--wat", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn resource_guard_exits_three() {
    let out = run(&[
        "--max-subsets",
        "2",
        "--max-codewords",
        "2",
        "construct",
        "mr-coset",
        "--N",
        "9",
        "--D",
        "2",
        "--q",
        "19",
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn failed_search_exits_one_with_witness() {
    let out = run(&[
        "search", "thm4", "--m", "2", "--r", "2", "--delta", "1", "--q", "2",
        "--strategy", "exhaustive",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    assert_eq!(report["certificates"][0]["name"], "assignment_found");
    assert_eq!(report["certificates"][0]["pass"], false);
    assert!(report["derived"]["best_partial"]["witness"].is_array());
}

#[test]
fn reports_are_deterministic_modulo_timings() {
    let args = [
        "experiment",
        "abc-scan",
        "--delta",
        "3",
        "--r",
        "3",
        "--n",
        "8",
        "--base-field",
        "2^4",
        "--seed",
        "42",
    ];
    let mut a = stdout_json(&run(&args));
    let mut b = stdout_json(&run(&args));
    a.as_object_mut().unwrap().remove("timings_ms");
    b.as_object_mut().unwrap().remove("timings_ms");
    assert_eq!(a, b);
}

#[test]
fn construct_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("report.json");
    let out = run(&[
        "--out",
        report_path.to_str().unwrap(),
        "construct",
        "mr-coset",
        "--N",
        "9",
        "--D",
        "2",
        "--q",
        "19",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();

    // split out the code and topology for the verify subcommands
    let code_path = dir.path().join("code.json");
    std::fs::write(&code_path, report["code"].to_string()).unwrap();
    let h0 = report["matrices"]["h0"].as_array().unwrap();
    let field = &report["field"];
    let desc = if field["m"] == 1 {
        field["p"].to_string()
    } else {
        format!("{}^{}", field["p"], field["m"])
    };
    let mut h0_text = format!("{} {} {}\n", h0.len(), h0[0].as_array().unwrap().len(), desc);
    for row in h0 {
        let vals: Vec<String> = row.as_array().unwrap().iter().map(|v| v.to_string()).collect();
        h0_text.push_str(&vals.join(" "));
        h0_text.push('\n');
    }
    let h0_path = dir.path().join("h0.txt");
    std::fs::write(&h0_path, h0_text).unwrap();

    let verify = run(&[
        "verify",
        "mr",
        "--code",
        code_path.to_str().unwrap(),
        "--h0",
        h0_path.to_str().unwrap(),
    ]);
    assert_eq!(verify.status.code(), Some(0), "{}", String::from_utf8_lossy(&verify.stderr));

    let verify = run(&["verify", "locality", "--code", code_path.to_str().unwrap()]);
    assert_eq!(verify.status.code(), Some(0));

    // a [9,5] locality-2 code is not MDS: exit 1 with the verdict recorded
    let verify = run(&["verify", "mds", "--code", code_path.to_str().unwrap()]);
    assert_eq!(verify.status.code(), Some(1));
}

#[test]
fn verify_rejects_corrupted_code_files(){
    let dir = tempfile::tempdir().unwrap();
    let code_path = dir.path().join("bad.json");
    // generator and parity that are not orthogonal
    std::fs::write(
        &code_path,
        serde_json::json!({
            "n": 3, "k": 1,
            "field": {"p": 2, "m": 1, "modulus": [1, 0]},
            "generator": [[1, 1, 1]],
            "parity": [[1, 0, 0], [0, 1, 0]],
        })
        .to_string(),
    )
    .unwrap();
    let out = run(&["verify", "mds", "--code", code_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!Path::new(&code_path).to_str().unwrap().is_empty());
}
