use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dihomotopy::io::{parse_digraph_json, read_homotopy, DigraphDoc};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dihomotopy"))
}

fn figures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/figures")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

fn counts(doc: &Value) -> (usize, usize) {
    (doc["vertices"].as_array().unwrap().len(), doc["edges"].as_array().unwrap().len())
}

const CYCLIC_TRIANGLE: &str = r#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"],["c","a"]]}"#;
const FOUR_CYCLE: &str = r#"{"vertices":["0","1","2","3"],"edges":[["0","1"],["1","2"],["2","3"],["3","0"]]}"#;

#[test]
fn checked_in_figures_are_current() {
    let out = run(&["figures", "--dir", figures_dir().to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(json_of(&out).as_array().unwrap().iter().all(|s| s["status"] == "identical"));
}

#[test]
fn figures_detect_drift() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(run(&["figures", "--dir", d]).status.code(), Some(1));
    assert!(run(&["figures", "--dir", d, "--write"]).status.success());
    assert!(run(&["figures", "--dir", d]).status.success());
    write(dir.path(), "fig2_tube.json", "{}\n");
    assert_eq!(run(&["figures", "--dir", d]).status.code(), Some(1));
}

#[test]
fn build_mapping_cone_of_figure_one() {
    let map = figures_dir().join("fig1_map.json");
    let out = run(&["build", "mod-mapping-cone", "--map", map.to_str().unwrap(), "--section", "1=c"]);
    assert!(out.status.success());
    let doc = json_of(&out);
    assert_eq!(counts(&doc["digraph"]), (8, 17));
    let fixture: Value =
        serde_json::from_str(&std::fs::read_to_string(figures_dir().join("fig1_mapping_cone.json")).unwrap()).unwrap();
    assert_eq!(doc, fixture);
    for name in ["embed_H", "embed_G", "apex", "embed_cone", "embed_cylinder"] {
        assert!(doc["maps"][name].is_object(), "missing {name}");
    }
}

#[test]
fn emitted_digraphs_reload() {
    let dir = tempfile::tempdir().unwrap();
    let map = figures_dir().join("fig1_map.json");
    let second = figures_dir().join("fig2_second_map.json");
    let (m, s) = (map.to_str().unwrap(), second.to_str().unwrap());
    let g = write(dir.path(), "g.json", CYCLIC_TRIANGLE);
    let h = write(dir.path(), "h.json", r#"{"vertices":["b","c","d"],"edges":[["b","c"],["c","d"]]}"#);
    let builds: Vec<Vec<&str>> = vec![
        vec!["cone", "--digraph", &g],
        vec!["cylinder", "--map", m],
        vec!["mod-cylinder", "--map", m],
        vec!["mod-cone", "--map", m],
        vec!["mod-mapping-cone", "--map", m],
        vec!["tube", "--map", m, "--second", s],
        vec!["s-digraph", "--digraph", &g, "--other", &h],
    ];
    for args in builds {
        let out = bin().arg("build").args(&args).output().unwrap();
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let doc = json_of(&out);
        let text = doc["digraph"].to_string();
        let reloaded = parse_digraph_json(&text).unwrap();
        assert_eq!(serde_json::to_value(DigraphDoc::from(&reloaded)).unwrap(), doc["digraph"]);
    }
}

#[test]
fn section_flag_is_restricted() {
    let map = figures_dir().join("fig1_map.json");
    let m = map.to_str().unwrap();
    assert_eq!(run(&["build", "cylinder", "--map", m, "--section", "1=c"]).status.code(), Some(2));
    assert_eq!(run(&["build", "mod-cone", "--map", m, "--section", "1=a"]).status.code(), Some(3));
    assert_eq!(run(&["build", "mod-cone", "--map", m, "--section", "1c"]).status.code(), Some(2));
}

#[test]
fn cohomology_of_a_point() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "point.json", r#"{"vertices":["*"]}"#);
    let out = run(&["cohomology", "--digraph", &p, "--pmax", "2"]);
    let doc = json_of(&out);
    let ranks: Vec<u64> = doc.as_array().unwrap().iter().map(|r| r["rank"].as_u64().unwrap()).collect();
    assert_eq!(ranks, [1, 0, 0]);
}

#[test]
fn homology_from_dot() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "c4.dot", "digraph { 0 -> 1 -> 2 -> 3 -> 0 }");
    let doc = json_of(&run(&["homology", "--digraph", &p, "--pmax", "1"]));
    assert_eq!(doc[1]["rank"], 1);
}

#[test]
fn induced_identity_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    let map = format!(r#"{{"domain":{FOUR_CYCLE},"codomain":{FOUR_CYCLE},"map":{{"0":"0","1":"1","2":"2","3":"3"}}}}"#);
    let m = write(dir.path(), "id.json", &map);
    let doc = json_of(&run(&["induced", "--map", &m, "--pmax", "1"]));
    assert_eq!(doc[1]["matrix"], serde_json::json!([[1]]));
}

#[test]
fn homotopy_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let map = |name: &str, g: &str, assignment: &str| {
        write(dir.path(), name, &format!(r#"{{"domain":{g},"codomain":{g},"map":{assignment}}}"#))
    };
    let id = map("id.json", CYCLIC_TRIANGLE, r#"{"a":"a","b":"b","c":"c"}"#);
    let rot = map("rot.json", CYCLIC_TRIANGLE, r#"{"a":"b","b":"c","c":"a"}"#);
    let out = run(&["homotopic", "--f", &id, "--g", &rot]);
    let doc = json_of(&out);
    assert_eq!(doc["verdict"], "homotopic");
    let cert = write(dir.path(), "cert.json", &doc["certificate"].to_string());
    assert!(read_homotopy(Path::new(&cert)).unwrap().verify());

    let c4_id = map("c4id.json", FOUR_CYCLE, r#"{"0":"0","1":"1","2":"2","3":"3"}"#);
    let c4_const = map("c4c.json", FOUR_CYCLE, r#"{"0":"0","1":"0","2":"0","3":"0"}"#);
    let doc = json_of(&run(&["homotopic", "--f", &c4_id, "--g", &c4_const]));
    assert_eq!(doc["verdict"], "not_homotopic");
    assert!(doc.get("certificate").is_none());

    let doc = json_of(&run(&["homotopic", "--f", &c4_id, "--g", &c4_const, "--budget", "1"]));
    assert_eq!(doc["verdict"], "budget_exceeded");
    assert_eq!(run(&["homotopic", "--f", &id, "--g", &c4_id]).status.code(), Some(3));
}

#[test]
fn contractibility_and_equivalence() {
    let dir = tempfile::tempdir().unwrap();
    let tri = write(dir.path(), "tri.json", r#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"],["a","c"]]}"#);
    let c4 = write(dir.path(), "c4.json", FOUR_CYCLE);
    let point = write(dir.path(), "p.json", r#"{"vertices":["p"]}"#);
    assert_eq!(json_of(&run(&["contractible", "--digraph", &tri]))["verdict"], "homotopic");
    assert_eq!(json_of(&run(&["contractible", "--digraph", &c4]))["verdict"], "not_homotopic");
    let doc = json_of(&run(&["equivalent", "--g", &tri, "--h", &point]));
    assert_eq!(doc["verdict"], "equivalent");
    assert!(doc["left"].is_object() && doc["right"].is_object());
    assert_eq!(json_of(&run(&["equivalent", "--g", &c4, "--h", &point]))["verdict"], "not_equivalent");
    assert_eq!(run(&["equivalent", "--g", &c4]).status.code(), Some(2));
}

#[test]
fn hep_counterexample_on_the_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "id.json",
        &format!(r#"{{"domain":{CYCLIC_TRIANGLE},"codomain":{CYCLIC_TRIANGLE},"map":{{"a":"a","b":"b","c":"c"}}}}"#),
    );
    let partial = write(
        dir.path(),
        "partial.json",
        &format!(
            r#"{{"domain":{{"vertices":["a","b"],"edges":[["a","b"]]}},"codomain":{CYCLIC_TRIANGLE},"word":"+","frames":[{{"a":"a","b":"b"}},{{"a":"b","b":"b"}}]}}"#
        ),
    );
    let doc = json_of(&run(&["hep-check", "--map", &f, "--partial", &partial]));
    assert_eq!(doc["extends"], false);
    assert_eq!(doc["candidates"], 3);
    assert!(doc["extension"].is_null());
}

#[test]
fn verify_streams_one_report_per_instance() {
    let out = run(&["verify", "additivity", "--count", "5", "--seed", "7"]);
    assert!(out.status.success());
    let lines: Vec<Value> =
        String::from_utf8(out.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 5);
    assert!(lines.iter().all(|r| r["check"] == "additivity" && r["passed"] == true && r["seed"] == 7));
    assert!(run(&["verify", "triviality"]).status.success());
    assert_eq!(run(&["verify", "mv", "--degree", "0"]).status.code(), Some(2));
}

#[test]
fn verify_exit_code_tracks_failures() {
    let out = run(&["verify", "mv", "--seed", "42", "--count", "100"]);
    let reports: Vec<Value> =
        String::from_utf8(out.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(reports.len(), 100);
    let failures = reports.iter().filter(|r| r["passed"] == false).count();
    assert_eq!(out.status.code(), Some(if failures > 0 { 1 } else { 0 }));
    for r in reports.iter().filter(|r| r["passed"] == false) {
        assert!(r["witness"]["fiber_product"].is_object());
    }
}

#[test]
fn json_indent_controls_layout() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "c4.json", FOUR_CYCLE);
    let compact = run(&["homology", "--digraph", &p, "--pmax", "0", "--json-indent", "0"]);
    assert_eq!(String::from_utf8(compact.stdout).unwrap().lines().count(), 1);
    let wide = String::from_utf8(run(&["homology", "--digraph", &p, "--pmax", "0", "--json-indent", "4"]).stdout).unwrap();
    assert!(wide.lines().any(|l| l.starts_with("    {")));
}

#[test]
fn errors_map_to_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "loop.json", r#"{"vertices":["a"],"edges":[["a","a"]]}"#);
    assert_eq!(run(&["homology", "--digraph", &bad]).status.code(), Some(3));
    assert_eq!(run(&["homology", "--digraph", "/nonexistent.json"]).status.code(), Some(3));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["build", "cone"]).status.code(), Some(2));
    assert!(run(&["--help"]).status.success());
}
