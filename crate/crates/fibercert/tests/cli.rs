//! End-to-end tests of the command-line interface: exit codes, file
//! round-trips, and output determinism.

use std::path::Path;
use std::process::{Command, Output};

fn fibercert(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fibercert"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn build_verify_link_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = fibercert(dir.path(), &["build", "cell24"]);
    assert!(out.status.success());
    assert!(dir.path().join("cell24.graph.json").exists());
    assert!(dir.path().join("cell24.system.json").exists());

    // Build output feeds straight back into verify and link.
    let out = fibercert(
        dir.path(),
        &[
            "verify",
            "cell24.system.json",
            "--graph",
            "cell24.graph.json",
            "--mode",
            "lemma31",
        ],
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout(&out).contains("verdict (mode lemma31): PASS"));

    let out = fibercert(
        dir.path(),
        &[
            "link",
            "cell24.system.json",
            "--graph",
            "cell24.graph.json",
            "--coords",
            "110",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("faces [12, 24, 12, 0]"));
    assert!(text.contains("betti [1, 1, 0]"));
}

#[test]
fn exit_code_matrix() {
    let dir = tempfile::tempdir().unwrap();

    // 0: certificate holds.
    let ok = fibercert(dir.path(), &["verify", "cell24", "--mode", "lemma31"]);
    assert_eq!(ok.status.code(), Some(0));

    // 1: certificate fails, witness on stderr.
    let bad_system =
        r#"{"moves": [[0], [1], [2], [3]], "assignment": [0, 1, 2, 3], "start": [0, 2]}"#;
    let bad_graph = r#"{"n": 4, "edges": [[0, 1], [1, 2], [2, 3]]}"#;
    std::fs::write(dir.path().join("bad.system.json"), bad_system).unwrap();
    std::fs::write(dir.path().join("path.graph.json"), bad_graph).unwrap();
    let fail = fibercert(
        dir.path(),
        &["verify", "bad.system.json", "--graph", "path.graph.json"],
    );
    assert_eq!(fail.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&fail.stderr);
    assert!(stderr.contains("first illegal state"), "stderr: {stderr}");

    // 2: usage and input errors.
    let missing_graph = fibercert(dir.path(), &["verify", "bad.system.json"]);
    assert_eq!(missing_graph.status.code(), Some(2));
    let unknown_flag = fibercert(dir.path(), &["verify", "cell24", "--format", "yaml"]);
    assert_eq!(unknown_flag.status.code(), Some(2));
    let no_file = fibercert(
        dir.path(),
        &["verify", "nope.json", "--graph", "also-nope.json"],
    );
    assert_eq!(no_file.status.code(), Some(2));
    let bad_coords = fibercert(dir.path(), &["link", "cell24", "--coords", "10x"]);
    assert_eq!(bad_coords.status.code(), Some(2));
    let bad_state = fibercert(dir.path(), &["link", "cell24", "--state", "1,banana"]);
    assert_eq!(bad_state.status.code(), Some(2));
    let no_selector = fibercert(dir.path(), &["link", "cell24"]);
    assert_eq!(no_selector.status.code(), Some(2));
}

#[test]
fn certificates_are_byte_identical_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let run = |workers: &str, out: &str| {
        let result = fibercert(
            dir.path(),
            &["verify", "cell24", "--workers", workers, "--out", out],
        );
        assert_eq!(result.status.code(), Some(0));
        std::fs::read(dir.path().join(out)).unwrap()
    };
    let one = run("1", "one.json");
    let four = run("4", "four.json");
    assert_eq!(one, four);
}

#[test]
fn orbit_dump_lists_every_state() {
    let dir = tempfile::tempdir().unwrap();
    let out = fibercert(dir.path(), &["orbit", "cell24"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 8);
    assert!(text.lines().all(|l| l.contains("\"legal\":true")));
    let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(first["coords"], "000");
    assert_eq!(first["state"].as_array().unwrap().len(), 12);
}

#[test]
fn export_dot_is_parseable_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = fibercert(dir.path(), &["export-dot", "fourcube"]);
    let b = fibercert(dir.path(), &["export-dot", "fourcube"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let text = stdout(&a);
    assert!(text.starts_with("graph {"));
    assert_eq!(text.matches(" -- ").count(), 32);

    // Round-trip: exported graph JSON feeds export-dot.
    let build = fibercert(dir.path(), &["build", "fourcube"]);
    assert!(build.status.success());
    let from_file = fibercert(dir.path(), &["export-dot", "fourcube.graph.json"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(stdout(&from_file), text);
}

#[test]
fn build_cell600_grid_emits_labeling() {
    let dir = tempfile::tempdir().unwrap();
    let out = fibercert(dir.path(), &["build", "cell600-grid"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    for file in [
        "cell600-grid.graph.json",
        "cell600-grid.system.json",
        "cell600-grid.labeling.json",
    ] {
        assert!(dir.path().join(file).exists(), "{file} missing");
    }
    // A rejected variant (flipped skips) exits 1 with a defect report.
    let bad = fibercert(dir.path(), &["build", "cell600-grid", "--variant", "3"]);
    assert_eq!(bad.status.code(), Some(1));
    // An out-of-range variant index is a usage error.
    let usage = fibercert(dir.path(), &["build", "cell600-grid", "--variant", "12"]);
    assert_eq!(usage.status.code(), Some(2));
}

#[test]
fn link_accepts_explicit_vertex_lists() {
    let dir = tempfile::tempdir().unwrap();
    let out = fibercert(
        dir.path(),
        &["link", "cell600", "--state", "start", "--format", "csv"],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.contains("desc,60,150,75,0,-15,1,16,0,true"),
        "got: {text}"
    );

    let out = fibercert(
        dir.path(),
        &["link", "cell24", "--state", "0,1,2", "--format", "json"],
    );
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["state"], serde_json::json!([0, 1, 2]));
}
