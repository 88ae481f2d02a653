use std::fs;
use std::path::Path;
use std::process::Command;

fn run(dir: &Path, args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_heroes"));
    cmd.args(args).current_dir(dir);
    for key in ["HEROES_NODE_CAP", "HEROES_SET_CAP", "HEROES_VERTEX_CAP", "HEROES_TIME_CAP"] {
        cmd.env_remove(key);
    }
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn heroes(dir: &Path, args: &[&str]) -> (i32, String, String) {
    run(dir, args, &[])
}

fn write(dir: &Path, name: &str, text: &str) {
    fs::write(dir.join(name), text).unwrap();
}

const C4: &str = "4 4\n0 1\n1 2\n2 3\n3 0\n";
const C3: &str = "3 3\n0 1\n1 2\n2 0\n";

#[test]
fn generate_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [a.path(), b.path()] {
        assert_eq!(heroes(dir, &["generate", "random-chordal", "25", "--seed", "7"]).0, 0);
        assert_eq!(heroes(dir, &["generate", "delta122", "3"]).0, 0);
    }
    for f in ["random-chordal-25.graph", "random-chordal-25.report.json", "delta122-3.report.json", "delta122-3.col"] {
        assert_eq!(fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap(), "{f}");
    }
    let (_, s1, _) = heroes(a.path(), &["generate", "cograph", "3", "--format", "json"]);
    let (_, s2, _) = heroes(b.path(), &["generate", "cograph", "3", "--format", "json"]);
    assert_eq!(s1, s2);
}

#[test]
fn generate_avoid_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let (code, _, _) = heroes(p, &["generate", "random-chordal", "30", "--avoid", "TT3", "--out", "r.graph"]);
    assert_eq!(code, 0);
    assert_eq!(heroes(p, &["check", "r.graph", "free:TT3"]).0, 0);
    assert_eq!(heroes(p, &["generate", "delta122", "2", "--avoid", "TT3"]).0, 2);
    assert_eq!(heroes(p, &["generate", "nonsense", "2"]).0, 2);
    let (code, _, err) = heroes(p, &["generate", "delta122", "6", "--vertex-cap", "1000"]);
    assert_eq!(code, 2, "{err}");
    assert_eq!(heroes(p, &["generate", "c3k1", "3", "--set-cap", "5"]).0, 2);
}

#[test]
fn check_reports_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    write(p, "c4.graph", C4);
    write(p, "c3.graph", C3);
    let (code, out, _) = heroes(p, &["check", "c4.graph", "chordal"]);
    assert_eq!(code, 1);
    assert!(out.contains("hole"));
    assert_eq!(heroes(p, &["check", "c3.graph", "chordal"]).0, 0);
    write(p, "p4.graph", "4 3\n0 1\n2 1\n2 3\n");
    assert_eq!(heroes(p, &["check", "p4.graph", "p4-free"]).0, 1);
    assert_eq!(heroes(p, &["check", "c4.graph", "p4-free"]).0, 0);
    assert_eq!(heroes(p, &["check", "c3.graph", "free:C3"]).0, 1);
    assert_eq!(heroes(p, &["check", "c3.graph", "free:TT3"]).0, 0);
    assert_eq!(heroes(p, &["check", "c3.graph", "free:c4.graph"]).0, 0);

    write(p, "mono.col", "0 0\n1 0\n2 0\n");
    write(p, "good.col", "0 0\n1 0\n2 1\n");
    write(p, "partial.col", "0 0\n1 0\n");
    let (code, out, _) = heroes(p, &["check", "c3.graph", "dicoloring:mono.col"]);
    assert_eq!(code, 1);
    assert!(out.contains("cycle"));
    assert_eq!(heroes(p, &["check", "c3.graph", "dicoloring:good.col"]).0, 0);
    assert_eq!(heroes(p, &["check", "c3.graph", "dicoloring:partial.col"]).0, 2);
    assert_eq!(heroes(p, &["check", "c3.graph", "dicoloring:missing.col"]).0, 2);
    assert_eq!(heroes(p, &["check", "c3.graph", "planar"]).0, 2);
    assert_eq!(heroes(p, &["check", "absent.graph", "chordal"]).0, 2);
}

#[test]
fn unit_interval_check_and_color() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    write(p, "path.graph", "3 2\n0 1\n1 2\n");
    write(p, "ok.intervals", "0 0.1\n1 0.7\n2 1.3\n");
    write(p, "bad.intervals", "0 0.1\n1 0.7\n2 0.9\n");
    assert_eq!(heroes(p, &["check", "path.graph", "unit-interval:ok.intervals"]).0, 0);
    assert_eq!(heroes(p, &["check", "path.graph", "unit-interval:bad.intervals"]).0, 1);
    let (code, out, _) = heroes(p, &["color", "path.graph", "unit-interval", "--rep", "ok.intervals"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(heroes(p, &["check", "path.graph", "dicoloring:path.col"]).0, 0);
    assert_eq!(heroes(p, &["color", "path.graph", "unit-interval", "--rep", "bad.intervals"]).0, 1);
    assert_eq!(heroes(p, &["color", "path.graph", "unit-interval"]).0, 2);
}

#[test]
fn color_methods_and_preconditions() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert_eq!(heroes(p, &["generate", "delta122", "3", "--out", "d.graph"]).0, 0);
    let (code, out, _) = heroes(p, &["color", "d.graph", "exact", "--out", "x.col"]);
    assert_eq!(code, 0);
    assert!(out.contains("colors: 3"));
    assert_eq!(heroes(p, &["check", "d.graph", "dicoloring:x.col"]).0, 0);
    let (_, par, _) = heroes(p, &["color", "d.graph", "exact", "--parallel", "--out", "y.col"]);
    assert!(par.contains("colors: 3"));

    // The level-3 witness contains D(1,1,2) and TT_3.
    let (code, out, _) = heroes(p, &["color", "d.graph", "delta-free"]);
    assert_eq!(code, 1);
    assert!(out.contains("precondition"));
    assert_eq!(heroes(p, &["color", "d.graph", "ttk-free"]).0, 1);
    assert_eq!(heroes(p, &["color", "d.graph", "ttk-free", "--k", "4"]).0, 0);
    write(p, "c4.graph", C4);
    let (code, out, _) = heroes(p, &["color", "c4.graph", "delta-free"]);
    assert_eq!(code, 1);
    assert!(out.contains("hole"));
    assert_eq!(heroes(p, &["color", "d.graph", "greedy"]).0, 2);

    let (code, _, err) = heroes(p, &["color", "d.graph", "exact", "--node-cap", "1"]);
    assert_eq!(code, 3, "{err}");
}

#[test]
fn classify_table() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let (code, out, _) = heroes(p, &["classify", "D 1 1 3"]);
    assert_eq!(code, 0);
    assert!(out.contains("hero in tournaments: yes"));
    assert!(out.contains("hero in chordal orientations: yes"));
    let (_, out, _) = heroes(p, &["classify", "K1=>C3"]);
    assert!(out.contains("hero in chordal orientations: no"));
    assert!(out.contains("contains K1=>C3"));
    write(p, "c4.graph", C4);
    assert_eq!(heroes(p, &["classify", "c4.graph"]).0, 2);
    assert_eq!(heroes(p, &["classify", "nonsense"]).0, 2);
}

#[test]
fn verify_saves_results_and_honors_caps() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let (code, out, _) = heroes(p, &["verify", "list"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 9);
    let (code, _, _) = heroes(p, &["verify", "trichotomy", "--n", "5", "--results-dir", "res"]);
    assert_eq!(code, 0);
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(p.join("res/trichotomy/result.json")).unwrap()).unwrap();
    assert_eq!(json["status"], "holds");
    assert_eq!(heroes(p, &["verify", "triangle-degree-bound", "--n", "5"]).0, 0);
    assert_eq!(heroes(p, &["verify", "re"]).0, 2, "ambiguous prefix");
    assert_eq!(heroes(p, &["verify", "unknown"]).0, 2);
    assert_eq!(heroes(p, &["verify", "stearns", "--n", "5", "--instance-cap", "10"]).0, 3);
    assert_eq!(heroes(p, &["verify", "trichotomy", "--n", "9"]).0, 2);
}

#[test]
fn budget_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert_eq!(heroes(p, &["generate", "delta122", "3", "--out", "d.graph"]).0, 0);
    write(p, "tight.toml", "node_cap = 1\n");
    write(p, "loose.toml", "node_cap = 1000000\n");
    let color = ["color", "d.graph", "exact"];
    assert_eq!(run(p, &color, &[("HEROES_NODE_CAP", "1")]).0, 3);
    assert_eq!(run(p, &[&color[..], &["--config", "loose.toml"]].concat(), &[("HEROES_NODE_CAP", "1")]).0, 0);
    assert_eq!(heroes(p, &[&color[..], &["--config", "tight.toml"]].concat()).0, 3);
    assert_eq!(heroes(p, &[&color[..], &["--config", "tight.toml", "--node-cap", "1000000"]].concat()).0, 0);
    assert_eq!(run(p, &color, &[("HEROES_NODE_CAP", "lots")]).0, 2);
    write(p, "bad.toml", "node_cap = \"x\"\n");
    assert_eq!(heroes(p, &[&color[..], &["--config", "bad.toml"]].concat()).0, 2);
    assert_eq!(heroes(p, &[&color[..], &["--config", "none.toml"]].concat()).0, 2);
}

#[test]
fn export_dot_writes_clusters() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    write(p, "c3.graph", C3);
    write(p, "good.col", "0 0\n1 0\n2 1\n");
    let (code, out, _) = heroes(p, &["export-dot", "c3.graph", "--coloring", "good.col", "--parts", "good.col"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph"));
    assert!(out.contains("subgraph cluster_"));
    assert_eq!(heroes(p, &["export-dot", "c3.graph", "--out", "c3.dot"]).0, 0);
    assert!(fs::read_to_string(p.join("c3.dot")).unwrap().contains("0 -> 1"));
}
