//! End-to-end tests of the `radai` binary: exit codes, report shapes,
//! scaffolding, and output stability.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/mobility")
}

fn radai(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_radai"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn radai_in(dir: &std::path::Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_radai"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).expect("stdout is one JSON object")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

/// Run a subcommand against the mobility fixture: the directory path is
/// spliced in right after the subcommand name.
fn fixture(args: &[&str]) -> Output {
    let dir = fixture_dir().display().to_string();
    let mut full: Vec<&str> = vec![args[0], &dir];
    full.extend(&args[1..]);
    radai(&full)
}

// -- lint -------------------------------------------------------------------

#[test]
fn lint_clean_fixture_exits_zero() {
    let out = fixture(&["lint"]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("0 error(s), 0 warning(s)"));
}

#[test]
fn lint_json_reports_empty_diagnostics_for_clean_input() {
    let out = fixture(&["lint", "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["diagnostics"].as_array().unwrap().len(), 0);
    assert_eq!(v["counts"]["error"], 0);
    assert_eq!(v["counts"]["warning"], 0);
}

#[test]
fn lint_errors_exit_two_with_flat_json_findings() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("doc.radl"),
        "# radl 1\n\n[e2.model \"bare\"]\nversion = \"1\"\n",
    )
    .unwrap();
    let out = radai(&["lint", dir.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&out), 2);
    let v = json(&out);
    let diags = v["diagnostics"].as_array().unwrap();
    assert!(!diags.is_empty());
    for d in diags {
        for key in ["rule", "severity", "message", "file", "line", "col", "subject"] {
            assert!(d.get(key).is_some(), "diagnostic missing `{key}`: {d}");
        }
    }
    assert!(diags.iter().any(|d| d["rule"] == "E2-001"));
}

#[test]
fn strict_promotes_warnings_to_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("doc.radl"),
        "# radl 1\n\n[c4.element \"a\"]\nname = \"A\"\ndeterministic = true\nx-custom = 1\n",
    )
    .unwrap();
    let path = dir.path().to_str().unwrap();

    let relaxed = radai(&["lint", path]);
    assert_eq!(code(&relaxed), 0);
    assert!(stdout(&relaxed).contains("1 warning(s)"));

    let strict = radai(&["lint", path, "--strict"]);
    assert_eq!(code(&strict), 1);
}

#[test]
fn unparseable_input_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("doc.radl"), "not radl at all\n").unwrap();
    let out = radai(&["lint", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert!(!out.stderr.is_empty());
}

#[test]
fn missing_path_exits_three() {
    let out = radai(&["lint", "definitely/not/here"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn explicit_file_list_matches_directory_input() {
    let dir = fixture_dir();
    let mut files: Vec<PathBuf> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "radl"))
        .collect();
    files.sort();
    let mut args: Vec<&str> = vec!["lint", "--format", "json"];
    let rendered: Vec<String> = files.iter().map(|p| p.display().to_string()).collect();
    args.extend(rendered.iter().map(String::as_str));

    let from_files = radai(&args);
    let from_dir = fixture(&["lint", "--format", "json"]);
    assert_eq!(json(&from_files)["counts"], json(&from_dir)["counts"]);
}

#[test]
fn piped_text_output_carries_no_ansi_codes() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("doc.radl"),
        "# radl 1\n\n[e2.model \"bare\"]\n",
    )
    .unwrap();
    let out = radai(&["lint", dir.path().to_str().unwrap()]);
    assert!(!stdout(&out).contains('\x1b'));
}

// -- score ------------------------------------------------------------------

#[test]
fn profile_score_json_has_labeled_basis() {
    let out = radai(&["score", "--profile", "std_arc42", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["mode"], "profile");
    assert_eq!(v["profile"], "std_arc42");
    assert_eq!(v["basis"], "modal");
    assert_eq!(v["total"], 7);
    assert_eq!(v["percent"], 35);
    assert_eq!(v["categories"].as_array().unwrap().len(), 10);
}

#[test]
fn document_score_flags_the_training_gap() {
    let out = fixture(&["score", "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["mode"], "document");
    assert_eq!(v["total"], 19);
    assert_eq!(v["percent"], 95);
    let cat5 = &v["categories"][4];
    assert_eq!(cat5["score"], 1);
    assert_eq!(cat5["missing"][0], "attach:supplementary_training");
}

#[test]
fn min_percent_gates_the_exit_code() {
    assert_eq!(code(&fixture(&["score", "--min-percent", "95"])), 0);
    assert_eq!(code(&fixture(&["score", "--min-percent", "96"])), 2);
}

#[test]
fn raters_csv_reports_modal_and_mean_separately() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("panel.csv");
    // Two raters who always agree: modal == each column, stddev 0.
    let mut rows = String::from("alice,bob\n");
    for score in [2, 2, 2, 2, 1, 2, 2, 2, 2, 2] {
        rows.push_str(&format!("{score},{score}\n"));
    }
    fs::write(&csv, rows).unwrap();

    let out = radai(&["score", "--raters", csv.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["mode"], "raters");
    assert_eq!(v["modal"]["basis"], "modal");
    assert_eq!(v["modal"]["total"], 19);
    assert_eq!(v["modal"]["percent"], 95);
    assert_eq!(v["mean"]["basis"], "mean");
    assert_eq!(v["mean"]["mean_total"], 19.0);
    assert_eq!(v["mean"]["stddev_total"], 0.0);
    assert_eq!(v["mean"]["percent"], 95);
    assert_eq!(v["kappa"]["degenerate"], false);

    let text = radai(&["score", "--raters", csv.to_str().unwrap()]);
    let body = stdout(&text);
    assert!(body.contains("basis: modal"));
    assert!(body.contains("basis: mean"));
}

#[test]
fn short_rater_csv_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("panel.csv");
    fs::write(&csv, "a,b\n2,2\n1,1\n").unwrap();
    let out = radai(&["score", "--raters", csv.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
}

// -- concerns ---------------------------------------------------------------

#[test]
fn concern_counts_depend_on_the_notation_profile() {
    let radai_mode = json(&fixture(&["concerns", "--format", "json"]));
    assert_eq!(radai_mode["profile"], "radai");
    assert_eq!(radai_mode["counts"]["full"], 8);
    assert_eq!(radai_mode["counts"]["partial"], 2);

    let standard = json(&fixture(&["concerns", "--format", "json", "--profile", "standard"]));
    assert_eq!(standard["counts"]["full"], 0);
    assert_eq!(standard["counts"]["partial"], 2);
    assert_eq!(standard["counts"]["none"], 8);
}

// -- lineage ----------------------------------------------------------------

#[test]
fn impact_lists_downstream_nodes() {
    let out = fixture(&["lineage", "--impact", "anomaly-detection", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let ids: Vec<&str> = v["impact"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    assert!(ids.contains(&"route-optimization"));
}

#[test]
fn crossings_list_both_dashboard_interfaces() {
    let v = json(&fixture(&["lineage", "--crossings", "--format", "json"]));
    let pairs: Vec<(String, String)> = v["crossings"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["from"].as_str().unwrap().into(), c["to"].as_str().unwrap().into()))
        .collect();
    assert_eq!(pairs.len(), 2);
    assert!(pairs.iter().all(|(from, _)| from == "operator-dashboard"));
}

#[test]
fn unknown_impact_node_exits_three() {
    let out = fixture(&["lineage", "--impact", "no-such-node"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn cycles_report_is_complete_and_untruncated() {
    let v = json(&fixture(&["lineage", "--cycles", "--format", "json"]));
    assert_eq!(v["cycles"].as_array().unwrap().len(), 0);
    assert_eq!(v["truncated"], false);
}

#[test]
fn cycles_surface_feedback_loops() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("loop.radl"),
        "# radl 1\n\n\
         [c4.element \"scorer\"]\nname = \"Scorer\"\ndeterministic = false\n\n\
         [c4.element \"telemetry\"]\nname = \"Telemetry\"\ndeterministic = false\n\n\
         [c4.lineage]\nfrom = scorer\nto = telemetry\n\n\
         [c4.lineage]\nfrom = telemetry\nto = scorer\n",
    )
    .unwrap();
    let out = radai(&["lineage", dir.path().to_str().unwrap(), "--cycles", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["cycles"].as_array().unwrap().len(), 1);
    let cycle = v["cycles"][0].as_array().unwrap();
    assert_eq!(cycle.len(), 2);
}

// -- diagram ----------------------------------------------------------------

#[test]
fn diagram_writes_the_requested_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("boundary.puml");
    let out = fixture(&[
        "diagram",
        "--view",
        "boundary",
        "--format",
        "puml",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&target).unwrap();
    assert!(text.starts_with("' generated by radai (radl 1)\n@startuml\n"));
    assert!(text.trim_end().ends_with("@enduml"));
}

#[test]
fn dot_diagram_streams_to_stdout() {
    let out = fixture(&["diagram", "--view", "lineage", "--format", "dot"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("// generated by radai (radl 1)\ndigraph"));
    assert_eq!(text.matches("style=dotted").count(), 8);
}

// -- init -------------------------------------------------------------------

#[test]
fn init_scaffold_parses_resolves_and_lints_clean() {
    let dir = tempfile::tempdir().unwrap();
    let out = radai_in(dir.path(), &["init", "docs"]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));

    let docs = dir.path().join("docs");
    assert_eq!(fs::read_dir(&docs).unwrap().count(), 14);

    let lint = radai_in(dir.path(), &["lint", "docs", "--strict"]);
    assert_eq!(code(&lint), 0, "scaffold findings: {}", stdout(&lint));

    let score = json(&radai_in(dir.path(), &["score", "docs", "--format", "json"]));
    assert_eq!(score["total"], 19);
}

#[test]
fn init_refuses_to_overwrite() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&radai_in(dir.path(), &["init", "docs"])), 0);
    let again = radai_in(dir.path(), &["init", "docs"]);
    assert_eq!(code(&again), 3);
    assert!(String::from_utf8_lossy(&again.stderr).contains("refusing to overwrite"));
}

// -- usage ------------------------------------------------------------------

#[test]
fn usage_errors_exit_sixty_four() {
    assert_eq!(code(&radai(&[])), 64);
    assert_eq!(code(&radai(&["frobnicate"])), 64);
    assert_eq!(code(&radai(&["lint"])), 64);
    assert_eq!(code(&radai(&["score"])), 64);
    assert_eq!(code(&radai(&["lineage", "x.radl"])), 64);
    assert_eq!(code(&radai(&["lineage", "x.radl", "--cycles", "--crossings"])), 64);
    assert_eq!(code(&radai(&["score", "--profile", "nonsense"])), 64);
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&radai(&["--help"])), 0);
    assert_eq!(code(&radai(&["--version"])), 0);
    assert_eq!(code(&radai(&["score", "--help"])), 0);
}
