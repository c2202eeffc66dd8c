use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_f3links")).args(args).output().expect("spawn f3links")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.display().to_string()
}

#[test]
fn invariants_of_identity() {
    let o = run(&["invariants", "1"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("components=1\n"), "{s}");
    assert!(s.contains("V=1\n"), "{s}");
}

#[test]
fn invariants_of_hopf() {
    let s = stdout(&run(&["invariants", "H(1)"]));
    assert!(s.contains("components=2\n"), "{s}");
    assert!(s.contains("lk(0,1)=+1\n"), "{s}");
    let s = stdout(&run(&["invariants", "H(-1)"]));
    assert!(s.contains("lk(0,1)=-1\n"), "{s}");
}

#[test]
fn eval_prints_element_json() {
    let a = stdout(&run(&["eval", "y2*y0"]));
    let b = stdout(&run(&["eval", "y0*y4"]));
    assert_eq!(a, b);
    let j: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert!(j.get("plus").is_some() && j.get("minus").is_some());
}

#[test]
fn link_prints_pd_and_gauss() {
    let s = stdout(&run(&["link", "y0"]));
    assert!(s.starts_with("components "), "{s}");
    assert!(s.contains("\nmarked 0\n"));
    let xs = s.lines().filter(|l| l.starts_with("X(")).count();
    assert_eq!(xs, 4);
    assert!(s.lines().any(|l| l.starts_with("gauss 0:")));
}

#[test]
fn treelink_example() {
    let o = run(&["treelink", &data("path_tree.json")]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    assert!(s.contains("components=3\n"), "{s}");
    assert!(s.contains("lk(v1,v2)=+1\n"));
    assert!(s.contains("lk(v1,v3)=-1\n"));
    assert!(s.contains("lk(v2,v3)=0\n"));
    assert!(s.lines().any(|l| l.starts_with("plan=")));
}

#[test]
fn json_errors_are_structured() {
    let o = run(&["--json", "eval", "y0\n  <3> y1"]);
    assert!(!o.status.success());
    let j: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["error"]["kind"], "parse");
    assert_eq!(j["error"]["line"], 2);
    assert_eq!(j["error"]["column"], 3);

    let o = run(&["--json", "treelink", "/nonexistent/tree.json"]);
    assert!(!o.status.success());
    let j: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["error"]["kind"], "io");
}

#[test]
fn plain_errors_go_to_stderr() {
    let o = run(&["eval", "y0 *"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("1:5"));
}

#[test]
fn bad_tree_is_a_structure_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("cycle.json");
    std::fs::write(
        &p,
        r#"{"vertices":[{"name":"a","element":"y0"},{"name":"b","element":"y1"}],
            "edges":[{"a":"a","b":"b","label":1},{"a":"b","b":"a","label":2}]}"#,
    )
    .unwrap();
    let o = run(&["--json", "treelink", p.to_str().unwrap()]);
    assert!(!o.status.success());
    let j: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["error"]["kind"], "structure");
}

#[test]
fn verify_is_deterministic() {
    let args = ["--json", "--seed", "7", "--cases", "6", "verify", "monoid"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let j: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(j["passed"], true);
}

#[test]
fn verify_unknown_suite_fails() {
    let o = run(&["verify", "nope"]);
    assert!(!o.status.success());
}

#[test]
fn verify_all_small() {
    let o = run(&["--cases", "4", "verify", "all"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("y1.svg");
    let o = run(&["render", "link(2,y0,y1)", "-o", p.to_str().unwrap()]);
    assert!(o.status.success());
    let svg = std::fs::read_to_string(&p).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
}

#[test]
fn crossing_cap_is_reported() {
    let o = run(&["--json", "--max-crossings", "1", "invariants", "link(3,y0,y1)"]);
    assert!(!o.status.success());
    let j: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["error"]["kind"], "resource");
}
