use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const CORPUS: &[&str] = &["y^2 - x^3", "x*y", "y^2 - x^4", "y^3 - x^5", "x*y*(x - y)", "y^2 - x^5", "(y^2 - x^3)*(y - x^2)", "y^2 - x^2 - x^3"];

fn nalink(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_nalink"));
    cmd.args(args).env_remove("NALINK_EXT_BOUND");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = nalink(args, &[]);
    assert_eq!(out.status.code(), Some(0), "{:?}: {}", args, String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

fn pair_file(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn curve(dir: &Path, name: &str, poly: &str) -> String {
    pair_file(dir, name, &format!("[Z]\ntype = \"curve\"\npoly = \"{}\"\n", poly)).display().to_string()
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap()
}

#[test]
fn resolve_cusp() {
    let dir = tempfile::tempdir().unwrap();
    let cusp = curve(dir.path(), "cusp.toml", "y^2 - x^3");
    let r = json(&["resolve", "--input", &cusp]);
    assert_eq!(r["blowups"], 3);
    let vs = r["graph"]["vertices"].as_array().unwrap();
    assert_eq!(vs.len(), 4);
    let n: Vec<u64> = vs.iter().filter(|v| v["kind"] == "Exceptional").map(|v| v["N"].as_u64().unwrap()).collect();
    assert_eq!(n, [2, 3, 6]);
    assert_eq!(r["graph"]["boundary"], serde_json::json!(["Z~"]));
}

#[test]
fn resolve_node() {
    let dir = tempfile::tempdir().unwrap();
    let node = curve(dir.path(), "node.toml", "x*y");
    let r = json(&["resolve", "--input", &node]);
    assert_eq!(r["blowups"], 0);
    assert_eq!(r["graph"]["vertices"].as_array().unwrap().len(), 2);
    assert_eq!(r["graph"]["edges"].as_array().unwrap().len(), 1);
}

#[test]
fn extension_bound_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let g = curve(dir.path(), "g.toml", "x^2+y^2");
    let out = nalink(&["resolve", "--input", &g, "--ext-bound", "1"], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert_eq!(stderr_json(&out)["minimal_polynomial"], "z^2 + 1");
    let out = nalink(&["resolve", "--input", &g], &[("NALINK_EXT_BOUND", "1")]);
    assert_eq!(out.status.code(), Some(2));
    // flag beats the environment
    let out = nalink(&["resolve", "--input", &g, "--ext-bound", "2"], &[("NALINK_EXT_BOUND", "1")]);
    assert_eq!(out.status.code(), Some(0));
    let out = nalink(&["resolve", "--input", &g], &[("NALINK_EXT_BOUND", "two")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn blowup_cap_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let c = curve(dir.path(), "c.toml", "y^2 - x^3");
    let out = nalink(&["resolve", "--input", &c, "--blowup-cap", "2"], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "blowup_cap");
}

#[test]
fn essential_of_the_cusp() {
    let dir = tempfile::tempdir().unwrap();
    let cusp = curve(dir.path(), "cusp.toml", "y^2 - x^3");
    assert_eq!(ok(&["essential", "--input", &cusp]), "{\"essential\":[\"Z~\",\"E1\",\"E2\",\"E3\"]}\n");
}

#[test]
fn vertex_set_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cusp = curve(dir.path(), "cusp.toml", "y^2 - x^3");
    let out = nalink(&["check", "--input", &cusp, "--members", "E1,E2,E3"], &[]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr_json(&out)["message"].as_str().unwrap().contains("Z~"));
    let out = nalink(&["check", "--input", &cusp, "--members", "Z~,E7"], &[]);
    assert_eq!(out.status.code(), Some(3));
    let r = json(&["check", "--input", &cusp, "--members", "Z~,E1,E2"]);
    assert_eq!(r["regular"], false);
    assert_eq!(r["components"][0]["class"], "NonSimple(TriplePoint)");
}

#[test]
fn vertex_set_files() {
    let dir = tempfile::tempdir().unwrap();
    let cusp = curve(dir.path(), "cusp.toml", "y^2 - x^3");
    let set = dir.path().join("set.json");
    ok(&["essential", "--input", &cusp, "--as-set", "--out", set.to_str().unwrap()]);
    let r = json(&["check", "--input", &cusp, "--set", set.to_str().unwrap()]);
    assert_eq!(r["regular"], true);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&set).unwrap()).unwrap();
    v["reference"] = "sha256:0000000000000000".into();
    std::fs::write(&set, v.to_string()).unwrap();
    let out = nalink(&["check", "--input", &cusp, "--set", set.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn hj_chains() {
    let r = json(&["hj", "5", "3"]);
    assert_eq!(r["chain"], serde_json::json!([-2, -3]));
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("hj.json");
    ok(&["hj", "7", "3", "--boundary", "--out", out.to_str().unwrap()]);
    let ess = json(&["essential", "--input", out.to_str().unwrap()]);
    assert_eq!(ess["essential"].as_array().unwrap().len(), 2 + 3);
    let out = nalink(&["hj", "6", "3"], &[]);
    assert_eq!(out.status.code(), Some(1));
    // a chain of (-2) curves between two anchors is an annulus
    let r = json(&["hj", "4", "3", "--boundary"]);
    assert_eq!(r["chain"], serde_json::json!([-2, -2, -2]));
    let p = dir.path().join("a3.json");
    std::fs::write(&p, r.to_string()).unwrap();
    let c = json(&["classify", "--input", p.to_str().unwrap(), "--members", "A0,A1"]);
    assert_eq!(c["components"][0]["class"], "Annulus(4)");
    assert_eq!(c["components"][0]["modulus"], 4);
}

#[test]
fn parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    for body in ["[Z]\ntype = \"curve\"\npoly = \"y^2 - \"\n", "[Z]\ntype = \"curve\"\npoly = \"x + 1\"\n", "not toml", "{\"vertices\": 3}"] {
        let p = pair_file(dir.path(), "bad.toml", body);
        let out = nalink(&["resolve", "--input", p.to_str().unwrap()], &[]);
        assert_eq!(out.status.code(), Some(1), "{}", body);
        assert_eq!(stderr_json(&out)["error"], "parse");
    }
    assert_eq!(nalink(&["resolve"], &[]).status.code(), Some(1));
    assert_eq!(nalink(&["frobnicate"], &[]).status.code(), Some(1));
    assert_eq!(nalink(&["--help"], &[]).status.code(), Some(0));
}

#[test]
fn eval_reports_normalized_values() {
    let dir = tempfile::tempdir().unwrap();
    let cusp = curve(dir.path(), "cusp.toml", "y^2 - x^3");
    let r = json(&["eval", "--input", &cusp, "--vertex", "E3", "--poly", "y"]);
    assert_eq!(r["value"], 3);
    assert_eq!(r["normalized"], "1/2");
    let origin = pair_file(dir.path(), "o.toml", "[Z]\ntype = \"point\"\n").display().to_string();
    let r = json(&["eval", "--input", &origin, "--vertex", "E1", "--poly", "x^3 + x*y"]);
    assert_eq!(r["value"], 2);
    assert_eq!(r["normalized"], "2");
}

#[test]
fn dot_export() {
    let dir = tempfile::tempdir().unwrap();
    let cusp = curve(dir.path(), "cusp.toml", "y^2 - x^3");
    let dot = ok(&["resolve", "--input", &cusp, "--format", "dot"]);
    assert!(dot.starts_with("graph dual {\n"));
    assert!(dot.contains("\"E3\" [label=\"E3\\nN=6 self=-1\"];"));
    assert_eq!(dot.matches(" -- ").count(), 3);
    assert_eq!(nalink(&["skeleton", "--input", &cusp, "--format", "dot"], &[]).status.code(), Some(1));
}

/// Resolve output fed back in as a graph gives the same answers.
#[test]
fn round_trip_through_graph_json() {
    let dir = tempfile::tempdir().unwrap();
    for (i, f) in CORPUS.iter().enumerate() {
        let pair = curve(dir.path(), &format!("c{}.toml", i), f);
        let report = dir.path().join(format!("c{}.json", i));
        ok(&["resolve", "--input", &pair, "--out", report.to_str().unwrap()]);
        let r = report.to_str().unwrap();
        for cmd in ["essential", "classify", "skeleton"] {
            assert_eq!(ok(&[cmd, "--input", &pair]), ok(&[cmd, "--input", r]), "{} on {}", cmd, f);
        }
        let set = dir.path().join("s.json");
        ok(&["essential", "--input", &pair, "--as-set", "--out", set.to_str().unwrap()]);
        let direct = ok(&["check", "--input", &pair, "--set", set.to_str().unwrap()]);
        assert_eq!(direct, ok(&["check", "--input", r, "--set", set.to_str().unwrap()]));
    }
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for (i, f) in CORPUS.iter().enumerate() {
        let pair = curve(dir.path(), &format!("d{}.toml", i), f);
        let out = dir.path().join("out.json");
        for cmd in ["resolve", "essential", "classify", "skeleton"] {
            let a = ok(&[cmd, "--input", &pair]);
            assert_eq!(a, ok(&[cmd, "--input", &pair]));
            ok(&[cmd, "--input", &pair, "--out", out.to_str().unwrap()]);
            assert_eq!(std::fs::read_to_string(&out).unwrap(), a);
        }
    }
}

#[test]
fn timing_is_opt_in() {
    let r = json(&["hj", "5", "2", "--timing"]);
    assert!(r["timing_ms"].is_number());
    assert!(json(&["hj", "5", "2"]).get("timing_ms").is_none());
}
