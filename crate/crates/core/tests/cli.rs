use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cluster-scatter"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn error(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const B2: &[&str] = &["--b", "[[0,1],[-2,0]]", "--delta", "[1,2]"];

#[test]
fn explore_a2() {
    let o = run(&["explore", "--b", "[[0,1],[-1,0]]", "--delta", "[1,1]"]);
    assert!(o.status.success());
    let g = json(&o);
    assert_eq!(g["status"], "complete");
    assert_eq!(g["vertices"].as_array().unwrap().len(), 5);
    assert_eq!(g["edges"].as_array().unwrap().len(), 5);
    assert_eq!(g["topological_order"][0], g["root"]);
    assert_eq!(o.stdout, run(&["explore", "--b", "[[0,1],[-1,0]]", "--delta", "[1,1]"]).stdout);
}

#[test]
fn explore_writes_dot_and_reads_files() {
    let input = scratch("g2.json");
    std::fs::write(&input, r#"{"B": [[0,1],[-3,0]], "delta": [1,3]}"#).unwrap();
    let dot = scratch("g2.dot");
    let out = scratch("g2-graph.json");
    let o = run(&["explore", input.to_str().unwrap(), "--dot", dot.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let dot = std::fs::read_to_string(dot).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count(), 8);

    // A written graph is accepted back by certify.
    let o = run(&["certify", out.to_str().unwrap()]);
    assert!(o.status.success());
    let c = json(&o);
    assert_eq!(c["vertices"], 8);
    assert_eq!(c["sources"].as_array().unwrap().len(), 1);
}

#[test]
fn truncated_exploration_fails_with_partial_output() {
    let o = run(&["explore", "--b", "[[0,2],[-2,0]]", "--delta", "[1,1]", "--max-depth", "6"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["status"], "truncated");
    assert_eq!(error(&o)["error"], "BudgetExceeded");
}

#[test]
fn certify_and_consistency() {
    let o = run(&[&["certify"], B2].concat());
    assert!(o.status.success());
    assert_eq!(json(&o)["topological_order"].as_array().unwrap().len(), 6);

    let o = run(&[&["consistency", "--level", "6"], B2].concat());
    assert!(o.status.success());
    let r = json(&o);
    assert_eq!(r["consistent"], true);
    assert_eq!(r["max_degree"], 6);
    assert_eq!(r["loops"].as_array().unwrap().len(), 1);
    assert_eq!(r["loops"][0]["crossings"], 6);
}

#[test]
fn obstruct_from_stdin() {
    let doc = r#"{"crossings": [{"normal": [1,0], "sign": 1}, {"normal": [0,1], "sign": 1}, {"normal": [1,1], "sign": 1}]}"#;
    let o = run_stdin(&["obstruct", "-"], doc);
    assert!(o.status.success());
    let w = json(&o);
    assert_eq!(w["level"], 1);
    assert_eq!(w["witness"], "1·X_{e1} + 1·X_{e2}");
    assert_eq!(w["identity"], false);

    let red = r#"{"crossings": [{"normal": [1,0], "sign": 1}, {"normal": [1,0], "sign": -1}]}"#;
    let o = run_stdin(&["obstruct", "-"], red);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error(&o)["error"], "NotAllGreen");

    let o = run_stdin(&["obstruct", "-"], r#"{"crossings": [{"normal": [2,2], "sign": 1}]}"#);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn scatter2_json_and_svg() {
    let o = run(&["scatter2", "--b", "[[0,1],[-1,0]]", "--delta", "[1,1]", "--level", "6"]);
    assert!(o.status.success());
    let d = json(&o);
    assert_eq!(d["origin"], "rank2-completion");
    let added: Vec<&Value> = d["walls"].as_array().unwrap().iter().filter(|w| w["initial"] == false).collect();
    assert_eq!(added.len(), 1);
    assert_eq!(added[0]["factored"], "Psi[e1+e2]^1");

    let svg = scratch("b2.svg");
    let o = run(&[&["scatter2", "--svg", svg.to_str().unwrap()], B2].concat());
    assert!(o.status.success());
    assert!(std::fs::read_to_string(svg).unwrap().starts_with("<svg"));

    let o = run(&["scatter2", "--b", "[[0,1,0],[-1,0,1],[0,-1,0]]", "--delta", "[1,1,1]"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error(&o)["error"], "NotRankTwo");
}

#[test]
fn emit_fan() {
    let o = run(&[&["emit-fan"], B2].concat());
    assert!(o.status.success());
    let svg = String::from_utf8(o.stdout).unwrap();
    assert_eq!(svg.matches("<polygon").count(), 6);
}

#[test]
fn bad_input() {
    let o = run(&["explore", "--b", "[[0,1],[1,0]]", "--delta", "[1,1]"]);
    assert_eq!(o.status.code(), Some(1));
    let e = error(&o);
    assert!(e["error"].is_string() && !e["detail"].is_null());

    let o = run(&["explore"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["explore", "/nonexistent/input.json"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&[&["certify", "--format", "svg"], B2].concat());
    assert_eq!(o.status.code(), Some(2));
}
