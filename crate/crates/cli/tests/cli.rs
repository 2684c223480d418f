//! End-to-end tests of the command-line interface: subcommands, exit
//! codes, report shapes and determinism.

use std::process::{Command, Output};

fn gitfan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gitfan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn gkz_single_chamber_for_equal_weights() {
    let report = json_of(&gitfan(&["gkz", "--inline", "1 1"]));
    let chambers = report["chambers"].as_array().unwrap();
    assert_eq!(chambers.len(), 1);
    assert_eq!(chambers[0]["fan"]["rays"], serde_json::json!([[-1], [1]]));
    assert_eq!(chambers[0]["ideal_generators"], serde_json::json!([[0], [1]]));
    assert_eq!(report["manifest"]["command"], "gkz");
    assert_eq!(report["manifest"]["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn gkz_reads_weight_files() {
    let dir = std::env::temp_dir().join(format!("gitfan-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("weights.txt");
    std::fs::write(&path, "3 4\n1 1 0 0\n0 0 1 1\n0 1 0 1\n").unwrap();
    let out_path = dir.join("report.json");
    let report = json_of(&gitfan(&[
        "gkz",
        "--weights",
        path.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]));
    assert_eq!(report["chambers"].as_array().unwrap().len(), 4);
    let written: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(written, report);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn gkz_rejects_non_projective_when_required() {
    let out = gitfan(&["gkz", "--inline", "1 -1", "--require-projective"]);
    assert_eq!(exit_code(&out), 4);
    // without the flag the decomposition is fine: two chambers
    let report = json_of(&gitfan(&["gkz", "--inline", "1 -1"]));
    assert_eq!(report["chambers"].as_array().unwrap().len(), 2);
}

#[test]
fn gkz_output_independent_of_parallelism() {
    let base = gitfan(&["gkz", "--inline", "1 1 0 0; 0 0 1 1; 0 1 0 1"]);
    let para = gitfan(&["gkz", "--inline", "1 1 0 0; 0 0 1 1; 0 1 0 1", "--jobs", "4"]);
    let mut a = json_of(&base);
    let mut b = json_of(&para);
    // the manifest records the parallelism degree; everything else is
    // byte-identical
    a.as_object_mut().unwrap().remove("manifest");
    b.as_object_mut().unwrap().remove("manifest");
    assert_eq!(
        serde_json::to_string_pretty(&a).unwrap(),
        serde_json::to_string_pretty(&b).unwrap()
    );
    // identical invocations are byte-identical wholesale
    let again = gitfan(&["gkz", "--inline", "1 1 0 0; 0 0 1 1; 0 1 0 1"]);
    assert_eq!(base.stdout, again.stdout);
}

#[test]
fn quotient_reports_chamber_data() {
    let report = json_of(&gitfan(&["quotient", "--inline", "1 1", "--character", "1"]));
    assert_eq!(report["chamber"]["fan"]["rays"], serde_json::json!([[-1], [1]]));
    assert_eq!(report["chamber"]["ideal_generators"], serde_json::json!([[0], [1]]));
    assert_eq!(report["chamber"]["i_empty"], serde_json::json!([]));
}

#[test]
fn quotient_wall_character_exits_five() {
    let out = gitfan(&["quotient", "--inline", "1 1", "--character", "0"]);
    assert_eq!(exit_code(&out), 5);
}

#[test]
fn quotient_outside_cone_exits_five() {
    let out = gitfan(&["quotient", "--inline", "1 1", "--character", "-1"]);
    assert_eq!(exit_code(&out), 5);
    assert!(String::from_utf8_lossy(&out.stderr).contains("semistable"));
}

#[test]
fn parse_errors_exit_two() {
    assert_eq!(exit_code(&gitfan(&["gkz", "--inline", "1 x"])), 2);
    assert_eq!(exit_code(&gitfan(&["gkz", "--inline", "1 1; 2"])), 2);
    assert_eq!(exit_code(&gitfan(&["quotient", "--inline", "1 1", "--character", "1,2"])), 2);
}

#[test]
fn not_surjective_exits_three() {
    assert_eq!(exit_code(&gitfan(&["gkz", "--inline", "2 2"])), 3);
}

#[test]
fn pgl2_verify_n4() {
    let report = json_of(&gitfan(&["pgl2", "--n", "4", "--pair", "1,2", "verify"]));
    let r = &report["report"];
    assert_eq!(r["counts"]["pgl2"], 4);
    assert_eq!(r["counts"]["gkz"], 4);
    assert_eq!(r["counts_match"], true);
    assert!(!r["matching"].is_null());
    assert_eq!(r["quotient_fans"].as_array().unwrap().len(), 4);
}

#[test]
fn pgl2_chambers_n3_single() {
    let report = json_of(&gitfan(&["pgl2", "--n", "3", "--pair", "1,2", "chambers"]));
    assert_eq!(report["report"]["chambers"].as_array().unwrap().len(), 1);
}

#[test]
fn pgl2_hm_table_over_all_profiles() {
    let report = json_of(&gitfan(&["pgl2", "--n", "4", "hm", "--weights", "1,1,1,1"]));
    let profiles = report["profiles"].as_array().unwrap();
    assert_eq!(profiles.len(), 15); // Bell(4)
    let find = |blocks: &serde_json::Value| {
        profiles
            .iter()
            .find(|p| &p["blocks"] == blocks)
            .unwrap_or_else(|| panic!("profile {blocks} missing"))["class"]
            .clone()
    };
    assert_eq!(find(&serde_json::json!([[1, 2], [3], [4]])), "strictly_semistable");
    assert_eq!(find(&serde_json::json!([[1, 2, 3], [4]])), "unstable");
    assert_eq!(find(&serde_json::json!([[1], [2], [3], [4]])), "stable");
    // odd weight sums carry no linearization
    let out = gitfan(&["pgl2", "--n", "4", "hm", "--weights", "1,1,1,2"]);
    assert_eq!(exit_code(&out), 3);
}

#[test]
fn oracle_sampling_and_supports() {
    let report = json_of(&gitfan(&[
        "oracle",
        "sample-chambers",
        "--inline",
        "1 1 0 0; 0 0 1 1; 0 1 0 1",
        "--seed",
        "5",
    ]));
    assert_eq!(report["chamber_count"], 4);
    let again = json_of(&gitfan(&[
        "oracle",
        "sample-chambers",
        "--inline",
        "1 1 0 0; 0 0 1 1; 0 1 0 1",
        "--seed",
        "5",
    ]));
    assert_eq!(report, again);
    let supports = json_of(&gitfan(&[
        "oracle",
        "ss-supports",
        "--inline",
        "1 1",
        "--character",
        "1",
    ]));
    assert_eq!(supports["supports"].as_array().unwrap().len(), 3);
}

#[test]
fn table_format_renders_text() {
    let out = gitfan(&["pgl2", "--n", "4", "--pair", "1,2", "verify", "--format", "table"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("counts match: true"));
}
