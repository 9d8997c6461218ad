use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use flagfold::complex::io::parse_complex;
use flagfold::complex::SimplicialComplex;
use flagfold::graph::io::parse_graph;
use flagfold::itransform::{verify_trace, ITrace};
use flagfold::reduction::Budget;
use serde_json::Value;
use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagfold"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn check_trace(path: &Path) -> ITrace {
    let text = std::fs::read_to_string(path).unwrap();
    let trace: ITrace = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&trace).unwrap() + "\n", text);
    let report = verify_trace(&trace, Budget::default());
    assert!(report.ok, "{:?}", report.failure);
    trace
}

#[test]
fn dismantling_a_path_reaches_k1() {
    let dir = TempDir::new().unwrap();
    let trace = dir.path().join("p4.json");
    let p4 = fixture("path4.graph");
    let out = run(&["reduce", path_str(&p4), "--strategy", "dismantle", "--emit-trace", path_str(&trace)]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let t = check_trace(&trace);
    assert!(t.end.is_k1());
    assert_eq!(t.moves.len(), 3);
    assert!(t.moves.iter().all(|m| m.kind.op() == "S-"));
}

#[test]
fn s_reduction_trace_replays() {
    let dir = TempDir::new().unwrap();
    let trace = dir.path().join("w6.json");
    let out = run(&["reduce", path_str(&fixture("wheel6.graph")), "--strategy", "s", "--emit-trace", path_str(&trace)]);
    assert_eq!(code(&out), 0);
    assert!(check_trace(&trace).end.is_k1());
}

#[test]
fn cycle_is_refuted_by_moves() {
    let out = run(&["reduce", path_str(&fixture("cycle5.graph")), "--strategy", "i-moves"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("betti=(0,1)"));
}

#[test]
fn dismantling_stuck_on_a_cycle_is_refuted() {
    let out = run(&["--format", "json", "reduce", path_str(&fixture("cycle4.graph"))]);
    assert_eq!(code(&out), 1);
    let report = json(&out);
    assert_eq!(report["verdict"], "No");
    assert_eq!(report["trace"]["moves"].as_array().unwrap().len(), 0);
}

#[test]
fn malformed_input_is_a_parse_error() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.graph");
    std::fs::write(&bad, "# header next\n3 1\n0 x\n").unwrap();
    for cmd in ["reduce", "certify"] {
        let out = run(&[cmd, path_str(&bad)]);
        assert_eq!(code(&out), 3);
        assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    }
    let complex = dir.path().join("bad.complex");
    std::fs::write(&complex, "0 1 1\n").unwrap();
    assert_eq!(code(&run(&["homology", path_str(&complex)])), 3);
}

#[test]
fn missing_file_is_another_error() {
    let out = run(&["certify", "/nonexistent/graph"]);
    assert_eq!(code(&out), 4);
}

#[test]
fn wheel_is_certified_with_a_replayable_trace() {
    let dir = TempDir::new().unwrap();
    let trace = dir.path().join("w5.json");
    let out = run(&["certify", path_str(&fixture("wheel5.graph")), "--emit-trace", path_str(&trace)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("Yes"));
    assert!(check_trace(&trace).end.is_k1());
}

#[test]
fn octahedron_is_refuted_with_its_sphere_class() {
    let out = run(&["--format", "json", "certify", path_str(&fixture("octahedron.graph"))]);
    assert_eq!(code(&out), 1);
    let report = json(&out);
    let witness = &report["verdict"]["witness"];
    assert_eq!(witness["type"], "homology");
    assert_eq!(witness["profile"]["betti"], serde_json::json!([0, 0, 1]));
}

#[test]
fn dunce_hat_subdivision_is_never_refuted() {
    let dir = TempDir::new().unwrap();
    let bd = dir.path().join("bd.complex");
    let skel = dir.path().join("bd.graph");
    assert_eq!(code(&run(&["bd", path_str(&fixture("dunce_hat8.complex")), "-o", path_str(&bd)])), 0);
    assert_eq!(code(&run(&["skeleton", path_str(&bd), "-o", path_str(&skel)])), 0);
    let out = run(&["--budget-nodes", "2000", "certify", path_str(&skel)]);
    assert!(matches!(code(&out), 0 | 2), "{}", stdout(&out));
}

#[test]
fn config_is_echoed() {
    let out = run(&["--budget-nodes", "123", "--budget-depth", "2", "--format", "json", "certify", path_str(&fixture("k1.graph"))]);
    let report = json(&out);
    assert_eq!(report["config"]["budget"]["max_nodes"], 123);
    assert_eq!(report["config"]["budget"]["max_depth"], 2);
    assert_eq!(report["config"]["command"], "certify");
    assert!(report["config"]["face_cap"].is_u64());
    let text = run(&["reduce", path_str(&fixture("k1.graph")), "--strategy", "i-moves"]);
    assert!(stdout(&text).starts_with("config: "));
    assert!(stdout(&text).contains("\"strategy\":\"i-moves\""));
}

#[test]
fn empty_suite_run_passes() {
    let out = run(&["--format", "json", "verify-theorems", "--trials", "0"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["passed"], true);
    assert_eq!(report["config"]["suite"]["trials"], 0);
    assert!(report["suites"].as_array().unwrap().iter().all(|s| s["checks"] == 0));
}

#[test]
fn suite_reports_are_deterministic() {
    let args = ["verify-theorems", "--trials", "25", "--n", "8", "--seed", "11", "--moves", "5"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0, "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).matches("PASS").count(), 3);
}

#[test]
fn injected_fault_produces_a_counterexample() {
    let out = run(&["verify-theorems", "--trials", "10", "--n", "6", "--fault", "isolated-vertex"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("FAIL move-homology-invariance"));
    assert!(text.contains("trial "));
}

#[test]
fn bad_probability_is_rejected() {
    assert_eq!(code(&run(&["verify-theorems", "--p", "1.5"])), 4);
}

#[test]
fn clique_of_octahedron_round_trips() {
    let out = run(&["clique", path_str(&fixture("octahedron.graph"))]);
    assert_eq!(code(&out), 0);
    let k = parse_complex(&stdout(&out)).unwrap();
    assert_eq!(k.facets().len(), 8);
    let g = parse_graph(&std::fs::read_to_string(fixture("octahedron.graph")).unwrap()).unwrap();
    assert_eq!(k, SimplicialComplex::clique_complex(&g));
}

#[test]
fn subdivided_dunce_hat_is_acyclic() {
    let dir = TempDir::new().unwrap();
    let bd = dir.path().join("bd.complex");
    run(&["bd", path_str(&fixture("dunce_hat8.complex")), "-o", path_str(&bd)]);
    let out = run(&["--format", "json", "homology", path_str(&bd)]);
    assert_eq!(code(&out), 0);
    let h = &json(&out)["homology"];
    assert_eq!(h["betti"], serde_json::json!([1, 0, 0]));
    assert_eq!(h["torsion"], serde_json::json!([]));
}

#[test]
fn cylinder_of_an_edge_is_contractible() {
    let dir = TempDir::new().unwrap();
    let cyl = dir.path().join("cyl.complex");
    assert_eq!(code(&run(&["cyl", path_str(&fixture("edge.complex")), "-o", path_str(&cyl)])), 0);
    let reduced = run(&["homology", "--reduced", path_str(&cyl)]);
    assert!(stdout(&reduced).contains("reduced betti=(0,0,0)"));
    let k = parse_complex(&std::fs::read_to_string(&cyl).unwrap()).unwrap();
    let edge = parse_complex(&std::fs::read_to_string(fixture("edge.complex")).unwrap()).unwrap();
    assert_eq!(k, edge.cyl(1_000_000).unwrap());
}

#[test]
fn graph_homology_uses_the_clique_complex() {
    let out = run(&["homology", "--graph", path_str(&fixture("cycle6.graph"))]);
    assert!(stdout(&out).contains("betti=(1,1)"));
}

#[test]
fn collapse_and_link_wrappers() {
    let out = run(&["collapse", path_str(&fixture("simplex3.complex"))]);
    assert_eq!(code(&out), 0);
    assert_eq!(parse_complex(&stdout(&out)).unwrap().vertex_count(), 1);
    let out = run(&["collapse", path_str(&fixture("dunce_hat8.complex"))]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("0 elementary collapses"));
    let out = run(&["link", path_str(&fixture("tetrahedron_boundary.complex")), "0"]);
    assert_eq!(code(&out), 0);
    let link = parse_complex(&stdout(&out)).unwrap();
    assert_eq!(link.facets().len(), 3);
    assert_eq!(code(&run(&["link", path_str(&fixture("edge.complex")), "nope"])), 4);
}

#[test]
fn skeleton_round_trips() {
    let out = run(&["skeleton", path_str(&fixture("torus7.complex"))]);
    let g = parse_graph(&stdout(&out)).unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (7, 21));
}
