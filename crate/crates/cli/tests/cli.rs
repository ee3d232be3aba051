use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const C5: &str = r#"{"vertices":["1","2","3","4","5"],"edges":[["1","2"],["2","3"],["3","4"],["4","5"],["5","1"]]}"#;
const C6: &str =
    r#"{"vertices":["1","2","3","4","5","6"],"edges":[["1","2"],["2","3"],["3","4"],["4","5"],["5","6"],["6","1"]]}"#;
const P3: &str = r#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"]]}"#;

struct Sandbox {
    dir: TempDir,
}

impl Sandbox {
    fn new() -> Self {
        let sb = Sandbox {
            dir: tempfile::tempdir().unwrap(),
        };
        sb.write("c5.json", C5);
        sb.write("c6.json", C6);
        sb.write("p3.json", P3);
        sb
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn write(&self, name: &str, text: &str) {
        fs::write(self.path(name), text).unwrap();
    }

    fn raag(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_raag"))
            .args(args)
            .current_dir(self.dir.path())
            .env("RAAG_CACHE_DIR", self.path("cache"))
            .output()
            .unwrap()
    }
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// The JSON block that ends the report.
fn trailing_json(o: &Output) -> Value {
    let text = stdout(o);
    let start = text.find("\n{").map(|i| i + 1).unwrap_or(0);
    serde_json::from_str(&text[start..]).unwrap_or_else(|e| panic!("{e}: {text}"))
}

fn files(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    names
}

#[test]
fn out_check_reports_finite_pentagon() {
    let sb = Sandbox::new();
    let o = sb.raag(&["out-check", "c5.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Out finite: yes"));
    let report = trailing_json(&o);
    assert_eq!(report["finite"], true);
    assert_eq!(report["graph_automorphisms"], "10");
}

#[test]
fn out_check_exits_zero_for_infinite_out() {
    let sb = Sandbox::new();
    let o = sb.raag(&["out-check", "p3.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Out finite: no"));
    assert_eq!(trailing_json(&o)["finite"], false);
}

#[test]
fn qi_prefilter_on_hexagon() {
    let sb = Sandbox::new();
    let o = sb.raag(&["qi", "c5.json", "c6.json", "--no-cache"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).lines().next(), Some("NO (pre-filter: no induced copy of Γ)"));
}

#[test]
fn qi_precondition_exit_code() {
    let sb = Sandbox::new();
    let o = sb.raag(&["qi", "p3.json", "p3.json", "--no-cache"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn qi_yes_with_witness_and_cache() {
    let sb = Sandbox::new();
    let o = sb.raag(&["--json", "gse", "c5.json", "--steps", "3@"]);
    assert_eq!(o.status.code(), Some(0));
    let state: Value = serde_json::from_slice(&o.stdout).unwrap();
    sb.write("double.json", &state["support"].to_string());

    let first = sb.raag(&["qi", "c5.json", "double.json", "--emit-witness", "wit"]);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    assert_eq!(stdout(&first).lines().next(), Some("YES (1 step)"));
    assert_eq!(
        files(&sb.path("wit")),
        ["complex.json", "subgroup.json", "support.dot", "witness.json"]
    );
    assert_eq!(files(&sb.path("cache")).len(), 1);

    let second = sb.raag(&["qi", "c5.json", "double.json"]);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(stdout(&first), stdout(&second));

    // The emitted complex feeds straight into the subgroup command.
    let sub = sb.raag(&["subgroup", "c5.json", "wit/complex.json", "--verify", "3"]);
    assert_eq!(sub.status.code(), Some(0), "{}", String::from_utf8_lossy(&sub.stderr));
    let report: Value = serde_json::from_slice(&sub.stdout).unwrap();
    assert_eq!(report["index"], 2);
    assert_eq!(report["generators"].as_array().unwrap().len(), 7);
    assert!(report["verification"]["tiles"].as_u64().unwrap() > 1);
}

#[test]
fn qi_small_budget_is_inconclusive() {
    let sb = Sandbox::new();
    let o = sb.raag(&["--json", "gse", "c5.json", "--steps", "3@,3@"]);
    let state: Value = serde_json::from_slice(&o.stdout).unwrap();
    sb.write("chain.json", &state["support"].to_string());
    let o = sb.raag(&["qi", "c5.json", "chain.json", "--max-total", "1", "--no-cache"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("INCONCLUSIVE"));
}

#[test]
fn ext_ball_writes_deterministic_dot() {
    let sb = Sandbox::new();
    let o = sb.raag(&["ext-ball", "c5.json", "-R", "1", "--dot", "a.dot"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("25 vertices"));
    sb.raag(&["--sequential", "ext-ball", "c5.json", "-R", "1", "--dot", "b.dot"]);
    let a = fs::read_to_string(sb.path("a.dot")).unwrap();
    assert!(a.starts_with("graph"));
    assert_eq!(a, fs::read_to_string(sb.path("b.dot")).unwrap());
}

#[test]
fn stable_reports_dichotomy() {
    let sb = Sandbox::new();
    let o = sb.raag(&["stable", "p3.json", "--vertex", "b"]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["gamma_w"], serde_json::json!(["b"]));
    assert_eq!(report["dichotomy"]["case"], "clique");
}

#[test]
fn gse_prints_support() {
    let sb = Sandbox::new();
    let o = sb.raag(&["gse", "c5.json", "--steps", "3@, 3@"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("support after 2 steps (2 nontrivial): 9 vertices, 11 edges"));
}

#[test]
fn usage_errors_exit_64() {
    let sb = Sandbox::new();
    for args in [
        &["frobnicate"][..],
        &["out-check"],
        &["out-check", "c5.json", "--bogus"],
        &["ext-ball", "c5.json", "-R", "x"],
        &["out-check", "missing.json"],
        &["stable", "p3.json", "--vertex", "z"],
        &["gse", "c5.json", "--steps", "9@"],
    ] {
        assert_eq!(sb.raag(args).status.code(), Some(64), "{args:?}");
    }
}

#[test]
fn non_convex_complex_is_rejected() {
    let sb = Sandbox::new();
    sb.write("bad.json", r#"["", "1.3"]"#);
    let o = sb.raag(&["subgroup", "c5.json", "bad.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("connected"));
}
