use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use stargenus::fixtures;
use stargenus::graph::{find_source_sink_orientation, parse_stg, to_stg};
use tempfile::TempDir;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["stargenus"];
    full.extend_from_slice(args);
    let code = stargenus_cli::run(full, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p: PathBuf = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn fixture_file(dir: &Path, name: &str) -> String {
    write(
        dir,
        &format!("{name}.stg"),
        &to_stg(&fixtures::by_name(name).unwrap()),
    )
}

fn json(s: &str) -> Value {
    serde_json::from_str(s.trim()).unwrap()
}

#[test]
fn genus_json_for_g8() {
    let dir = TempDir::new().unwrap();
    let p = fixture_file(dir.path(), "g8");
    let (code, out, _) = run(&["genus", &p, "--json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["min_genus"], 0);
    assert_eq!(v["source_sink"], true);
    assert_eq!(v["n_vertices"], 1);
    assert_eq!(v["n_chords"], 1);
    assert_eq!(v["ranks"], serde_json::json!([0, 0]));
    assert_eq!(v["witness"], serde_json::json!({"0": "W"}));
}

#[test]
fn genus_values_of_fixtures() {
    let dir = TempDir::new().unwrap();
    for (name, genus) in [
        ("g8", 0),
        ("ghopf", 0),
        ("gt3f", 0),
        ("gt3c", 1),
        ("chain(4)", 0),
    ] {
        let p = fixture_file(dir.path(), name);
        let (code, out, _) = run(&["--json", "genus", &p]);
        assert_eq!(code, 0, "{name}");
        assert_eq!(json(&out)["min_genus"], genus, "{name}");
        let (code, out, _) = run(&["--json", "oracle", &p]);
        assert_eq!(code, 0);
        let v = json(&out);
        assert_eq!(v["min_genus"], genus, "{name}");
        assert_eq!(v["method"], "bruteforce");
    }
}

#[test]
fn planar_gt3c_reports_conflict() {
    let dir = TempDir::new().unwrap();
    let p = fixture_file(dir.path(), "gt3c");
    let (code, out, _) = run(&["planar", &p]);
    assert_eq!(code, 1);
    assert_eq!(out, "not planar\nconflict: 0 1\n");
    let (code, out, _) = run(&["planar", &p, "--json"]);
    assert_eq!(code, 1);
    assert_eq!(
        json(&out),
        serde_json::json!({"planar": false, "conflict": [0, 1]})
    );
}

#[test]
fn planar_ghopf_witness() {
    let dir = TempDir::new().unwrap();
    let p = fixture_file(dir.path(), "ghopf");
    let (code, out, _) = run(&["--json", "planar", &p]);
    assert_eq!(code, 0);
    assert_eq!(
        json(&out),
        serde_json::json!({"planar": true, "witness": {"0": "W", "1": "B"}})
    );
}

#[test]
fn orient_gx_needs_cover() {
    let dir = TempDir::new().unwrap();
    let p = fixture_file(dir.path(), "gx");
    let (code, out, _) = run(&["orient", &p]);
    assert_eq!(code, 1);
    assert_eq!(out, "not source-sink; run `cover`\n");
    for cmd in ["genus", "circuit", "diagram", "planar", "oracle"] {
        let (code, out, _) = run(&["--json", cmd, &p]);
        assert_eq!(code, 1, "{cmd}");
        assert_eq!(json(&out)["source_sink"], false);
    }
}

#[test]
fn cover_writes_a_source_sink_graph() {
    let dir = TempDir::new().unwrap();
    let p = fixture_file(dir.path(), "gx");
    let out_path = dir.path().join("gx2.stg");
    let (code, _, _) = run(&["cover", &p, "-o", out_path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let cover = parse_stg(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(cover.vertex_count(), 2);
    find_source_sink_orientation(&cover).unwrap();
    let (code, out, _) = run(&["orient", out_path.to_str().unwrap()]);
    assert_eq!((code, out.lines().next()), (0, Some("source-sink")));

    let (code, out, _) = run(&["cover", &p]);
    assert_eq!(code, 0);
    assert_eq!(parse_stg(&out).unwrap(), cover);
}

#[test]
fn parse_errors_exit_two_with_line_number() {
    let dir = TempDir::new().unwrap();
    let p = write(
        dir.path(),
        "bad.stg",
        "stargraph 1 2\nvertex 0 4\nedge 0 0.0 0.x\nedge 1 0.2 0.3\n",
    );
    for cmd in ["validate", "orient", "genus", "planar", "oracle", "check"] {
        let (code, _, err) = run(&[cmd, &p]);
        assert_eq!(code, 2, "{cmd}");
        assert!(err.contains("line 3"), "{err}");
    }
    let (code, _, _) = run(&["genus", "/nonexistent/file.stg"]);
    assert_eq!(code, 2);
}

#[test]
fn validate_reports_violations() {
    let dir = TempDir::new().unwrap();
    let dup = write(
        dir.path(),
        "dup.stg",
        "stargraph 1 2\nvertex 0 4\nedge 0 0.0 0.1\nedge 1 0.0 0.1\n",
    );
    let (code, out, _) = run(&["validate", &dup]);
    assert_eq!(code, 1);
    assert!(out.contains("slot 0.0 covered twice"), "{out}");
    let two = write(
        dir.path(),
        "two.stg",
        "stargraph 2 4\nvertex 0 4\nvertex 1 4\nedge 0 0.0 0.1\nedge 1 0.2 0.3\nedge 2 1.0 1.1\nedge 3 1.2 1.3\n",
    );
    let (code, out, _) = run(&["--json", "validate", &two]);
    assert_eq!(code, 1);
    let v = json(&out);
    assert_eq!(v["valid"], false);
    assert!(v["violations"][0]
        .as_str()
        .unwrap()
        .starts_with("disconnected"));
    // invalid graphs are input errors for the other commands
    let (code, _, err) = run(&["genus", &two]);
    assert_eq!(code, 2);
    assert!(err.contains("disconnected"));
    let g8 = fixture_file(dir.path(), "g8");
    assert_eq!(run(&["validate", &g8]).0, 0);
}

#[test]
fn circuit_and_diagram_text() {
    let dir = TempDir::new().unwrap();
    let p = fixture_file(dir.path(), "ghopf");
    assert_eq!(
        run(&["circuit", &p]).1,
        "circuit: e0 e1 e2 e3\nclass: 0 rotating4\nclass: 1 rotating4\n"
    );
    assert_eq!(run(&["diagram", &p]).1, "circle: 4\nchord 0 2\nchord 1 3\n");
    let p = fixture_file(dir.path(), "gt3c");
    assert_eq!(run(&["diagram", &p]).1, "circle: 3\ntriad 0 1 2 crossed\n");
    let (_, out, _) = run(&["--json", "diagram", &p]);
    let v = json(&out);
    assert_eq!(v["matrix"], serde_json::json!([[0, 1], [1, 0]]));
    assert_eq!(v["surgery_circles"], 1);
}

#[test]
fn oracle_cap_flag_and_env() {
    let dir = TempDir::new().unwrap();
    let p = fixture_file(dir.path(), "chain(6)");
    let (code, _, err) = run(&["oracle", &p, "--cap", "5"]);
    assert_eq!(code, 2);
    assert!(err.contains("cap exceeded"), "{err}");
    assert_eq!(run(&["oracle", &p, "--cap", "6"]).0, 0);

    // the environment variable is read only when no flag is given
    let bin = env!("CARGO_BIN_EXE_stargenus");
    let status = Command::new(bin)
        .args(["oracle", &p])
        .env("STARGENUS_ORACLE_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
    let status = Command::new(bin)
        .args(["oracle", &p, "--cap", "8"])
        .env("STARGENUS_ORACLE_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
}

#[test]
fn check_agrees_on_fixtures() {
    let dir = TempDir::new().unwrap();
    let paths: Vec<String> = ["g8", "gx", "ghopf", "gt3f", "gt3c", "random-ss(3,3,2)"]
        .iter()
        .map(|n| fixture_file(dir.path(), n))
        .collect();
    let mut args = vec!["check", "--all-partitions"];
    args.extend(paths.iter().map(String::as_str));
    let (code, out, _) = run(&args);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().count(), paths.len());
    assert!(out.lines().all(|l| l.ends_with(" agree")));
    assert!(out.lines().nth(1).unwrap().contains("(double cover)"));

    args.insert(0, "--json");
    let (code, out, _) = run(&args);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["agree"], true);
    assert_eq!(v["graphs"][2]["partitions_checked"], 4);
}

#[test]
fn fixture_command() {
    let (code, out, _) = run(&["fixture", "g8"]);
    assert_eq!(code, 0);
    assert_eq!(out, to_stg(&fixtures::g8()));
    let (code, out, _) = run(&["fixture", "chain(3)"]);
    assert_eq!(code, 0);
    let g = parse_stg(&out).unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (3, 6));
    let (code, out, _) = run(&["fixture", "random(7, 4, 2)"]);
    assert_eq!(code, 0);
    assert!(stargenus::graph::validate(&parse_stg(&out).unwrap()).is_empty());
    assert_eq!(run(&["fixture", "g9"]).0, 2);
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = TempDir::new().unwrap();
    let p = fixture_file(dir.path(), "random-ss(11,4,4)");
    let base = run(&["--json", "genus", &p]);
    for t in ["1", "2", "3", "8"] {
        assert_eq!(run(&["--json", "--threads", t, "genus", &p]), base);
        assert_eq!(run(&["--threads", t, "oracle", &p]), run(&["oracle", &p]));
    }
}

#[test]
fn binary_exit_codes() {
    let dir = TempDir::new().unwrap();
    let bin = env!("CARGO_BIN_EXE_stargenus");
    let gt3c = fixture_file(dir.path(), "gt3c");
    let g8 = fixture_file(dir.path(), "g8");
    let code = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(code(&["planar", &gt3c]), Some(1));
    assert_eq!(code(&["planar", &g8]), Some(0));
    assert_eq!(code(&["nonsense"]), Some(2));
    assert_eq!(code(&["--help"]), Some(0));
}
