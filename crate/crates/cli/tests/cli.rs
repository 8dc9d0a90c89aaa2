use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};
use tempfile::TempDir;

const K3: &str = r#"{"kind":"eewhc","payload":{"d":2,"n":3,"edges":[{"v":[0,1],"w":"1"},{"v":[0,2],"w":"2"},{"v":[1,2],"w":"3"}],"t":"6"}}"#;
const EDGE_53: &str = r#"{"kind":"bwvc","payload":{"left":[0],"right":[1],"edges":[[0,1]],"w":["5","3"]}}"#;

fn wkern(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wkern")).current_dir(dir).args(args).env_remove("WKERN_CAP").output().unwrap()
}

fn report(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn error(out: &Output, code: i32) -> Value {
    assert_eq!(out.status.code(), Some(code), "stdout: {}", String::from_utf8_lossy(&out.stdout));
    serde_json::from_slice(&out.stderr).unwrap()
}

fn setup(files: &[(&str, &str)]) -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in files {
        std::fs::write(dir.path().join(name), text).unwrap();
    }
    dir
}

#[test]
fn solve_k3() {
    let dir = setup(&[("k3.json", K3)]);
    let r = report(&wkern(dir.path(), &["solve", "k3.json"]));
    assert_eq!(r["answer"], "yes");
    assert_eq!(r["witness"], serde_json::json!([0, 1, 2]));
    assert_eq!(r["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn kernelize_is_deterministic() {
    let runs: Vec<(TempDir, Value)> = (0..2)
        .map(|_| {
            let dir = setup(&[("k3.json", K3)]);
            let args = ["kernelize", "k3.json", "--epsilon", "0.1", "--seed", "7", "-o", "out.json", "--emit-cert", "cert.json"];
            let mut r = report(&wkern(dir.path(), &args));
            r.as_object_mut().unwrap().remove("elapsed_ms");
            (dir, r)
        })
        .collect();
    assert_eq!(runs[0].1, runs[1].1);
    let read = |d: &TempDir, f: &str| std::fs::read(d.path().join(f)).unwrap();
    assert_eq!(read(&runs[0].0, "out.json"), read(&runs[1].0, "out.json"));
    assert_eq!(read(&runs[0].0, "cert.json"), read(&runs[1].0, "cert.json"));
    let kernel = report(&wkern(runs[0].0.path(), &["solve", "out.json"]));
    assert_eq!(kernel["answer"], "yes");
}

#[test]
fn compress_then_verify() {
    let dir = setup(&[("g.json", EDGE_53)]);
    let r = report(&wkern(dir.path(), &["vc", "compress", "g.json", "-o", "w.json", "--trace", "t.json"]));
    assert_eq!(r["weights"], serde_json::json!(["2", "1"]));
    let trace: Value = serde_json::from_slice(&std::fs::read(dir.path().join("t.json")).unwrap()).unwrap();
    assert_eq!(trace["rule1"][0]["delta"], "2");
    assert_eq!(trace["rule2"][0]["old"], "3");
    let r = report(&wkern(dir.path(), &["vc", "verify-min", "g.json", "w.json"]));
    assert_eq!(r["answer"], "yes");
    std::fs::write(dir.path().join("bad.json"), r#"["1","2"]"#).unwrap();
    let r = report(&wkern(dir.path(), &["vc", "verify-min", "g.json", "bad.json"]));
    assert_eq!((r["answer"].as_str(), &r["counterexample"]), (Some("no"), &serde_json::json!([0])));
}

#[test]
fn equivalence_counterexample() {
    let g = r#"{"kind":"bwvc","payload":{"left":[0],"right":[1],"edges":[[0,1]],"w":["1","2"]}}"#;
    let dir = setup(&[("g.json", g), ("w.json", r#"["2","1"]"#), ("d.json", r#"["2","4"]"#)]);
    let r = report(&wkern(dir.path(), &["vc", "equiv", "g.json", "w.json"]));
    assert_eq!(r["answer"], "no");
    assert_eq!(r["counterexample"], serde_json::json!([[0], [1]]));
    let r = report(&wkern(dir.path(), &["vc", "equiv", "g.json", "d.json"]));
    assert_eq!(r["answer"], "yes");
}

#[test]
fn generators() {
    let dir = setup(&[]);
    report(&wkern(dir.path(), &["vc", "gen", "star", "--n", "5", "-o", "star.json"]));
    let r = report(&wkern(dir.path(), &["vc", "compress", "star.json"]));
    assert_eq!(r["weights"], serde_json::json!(["5", "1", "1", "1", "1"]));
    let r = report(&wkern(dir.path(), &["gen", "threshold", "--w", "1,−2,3", "--t", "2"]));
    // c = 3
    assert_eq!(r["instance"]["payload"]["w"], serde_json::json!(["4", "1", "6", "5", "3", "3", "3", "3"]));
}

#[test]
fn turing_max_writes_family() {
    let dir = setup(&[("k3.json", &K3.replace("\"t\":\"6\"", "\"t\":\"5\""))]);
    let r = report(&wkern(dir.path(), &["turing-max", "k3.json", "--seed", "3", "-o", "fam", "--decide"]));
    assert_eq!(r["answer"], "yes");
    let manifest: Value = serde_json::from_slice(&std::fs::read(dir.path().join("fam/manifest.json")).unwrap()).unwrap();
    let k = manifest["k"].as_u64().unwrap();
    assert!(k <= manifest["size_bound"].as_u64().unwrap());
    assert!(dir.path().join(format!("fam/query_{:03}.json", k - 1)).exists());
}

#[test]
fn reductions_and_degree() {
    let erbds = r#"{"kind":"erbds","payload":{"n_red":2,"n_blue":2,"adj":["10","01"],"d":2}}"#;
    let and3 = r#"{"kind":"csp","payload":{"n":3,"language":[{"arity":3,"table":"00000001"}],"applications":[{"f":0,"v":[0,1,2],"w":"1"}],"t":"1"}}"#;
    let dir = setup(&[("e.json", erbds), ("k3.json", K3), ("and.json", and3)]);
    report(&wkern(dir.path(), &["reduce", "erbds2ss", "e.json", "-o", "ss.json"]));
    assert_eq!(report(&wkern(dir.path(), &["solve", "ss.json"]))["answer"], "yes");
    report(&wkern(dir.path(), &["reduce", "hc2csp", "k3.json", "-o", "phi.json"]));
    assert_eq!(report(&wkern(dir.path(), &["solve", "phi.json"]))["answer"], "yes");
    assert_eq!(report(&wkern(dir.path(), &["csp", "degree", "and.json"]))["degree"], 3);
}

#[test]
fn compose_and_lift() {
    let rbds = r#"{"kind":"rbds","payload":{"n_red":1,"n_blue":1,"adj":["1"],"d":1}}"#;
    let dir = setup(&[("r.json", rbds), ("k3.json", K3)]);
    let r = report(&wkern(dir.path(), &["compose", "rbds", "r.json", "-o", "c.json"]));
    assert_eq!(r["layout"]["padded_inputs"], 1);
    assert_eq!(report(&wkern(dir.path(), &["solve", "c.json"]))["answer"], "yes");
    report(&wkern(dir.path(), &["lift", "--d", "3", "k3.json", "k3.json", "-o", "l.json"]));
    assert_eq!(report(&wkern(dir.path(), &["solve", "l.json"]))["answer"], "yes");
}

#[test]
fn exit_codes() {
    let dir = setup(&[
        ("k3.json", K3),
        ("zero.json", r#"{"kind":"subset_sum","payload":{"items":["0"],"t":"1"}}"#),
        ("broken.json", "{\"kind\":\"subset_sum\",\n\"payload\":{\"items\":[\"1\"],\"target\":\"1\"}}"),
    ]);
    assert_eq!(error(&wkern(dir.path(), &["frobnicate"]), 2)["error"], "usage");
    assert_eq!(error(&wkern(dir.path(), &["solve", "missing.json"]), 2)["error"], "usage");
    assert_eq!(error(&wkern(dir.path(), &["kernelize", "k3.json", "--epsilon", "2"]), 2)["error"], "usage");
    let e = error(&wkern(dir.path(), &["solve", "zero.json"]), 3);
    assert!(e["message"].as_str().unwrap().contains("item must be ≥ 1"));
    let e = error(&wkern(dir.path(), &["solve", "broken.json"]), 3);
    assert_eq!((e["field"].as_str(), e["line"].as_u64()), (Some("target"), Some(2)));
}

#[test]
fn cap_from_env_and_flag() {
    let dir = setup(&[("k3.json", K3)]);
    let run = |args: &[&str], cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_wkern")).current_dir(dir.path()).args(args).env("WKERN_CAP", cap).output().unwrap()
    };
    assert_eq!(error(&run(&["solve", "k3.json"], "1"), 1)["error"], "failed");
    assert_eq!(report(&run(&["solve", "k3.json", "--cap", "24"], "1"))["answer"], "yes");
}

#[test]
fn verify_suite_exit_status() {
    let dir = setup(&[]);
    let r = report(&wkern(dir.path(), &["verify-suite", "--scale", "small", "--only", "7,9"]));
    assert_eq!(r["failed"], 0);
    let out = wkern(dir.path(), &["verify-suite", "--scale", "small", "--only", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["criteria"][0]["passed"], false);
}
