use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use teich_coords::io::{LaminationFile, PointFile};
use teich_coords::lamination::{CombinatorialCurve, Flavor, Lamination};
use teich_coords::fixtures;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_teich-coords"));
    c.env("TEICH_COORDS_NO_COLOR", "1");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli").join(name);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_json(path: &Path, v: &Value) {
    std::fs::write(path, serde_json::to_string_pretty(v).unwrap()).unwrap();
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn sphere_example_table() {
    let o = run(&["examples", "three-punctured-sphere", "--l", "0.75", "0.4", "0.15"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("x = (0.5, 0.25, -0.1)"), "{}", stdout(&o));

    let o = run(&["--format", "structured", "examples", "three-punctured-sphere", "--l", "0.75", "0.4", "0.15"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let x: Vec<f64> = v["x"].as_array().unwrap().iter().map(|t| t.as_f64().unwrap()).collect();
    for (a, b) in x.iter().zip([0.5, 0.25, -0.1]) {
        assert!((a - b).abs() < 1e-15);
    }
}

#[test]
fn bigon_example_and_bad_arity() {
    let o = run(&["examples", "once-punctured-bigon", "--l", "0.5", "--lambda", "0.8", "0.2"]);
    assert!(stdout(&o).contains("x = (0.55, -0.05)"));
    let o = run(&["examples", "once-punctured-bigon", "--l", "0.5", "0.1", "--lambda", "0.8", "0.2"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["examples", "torus", "--l", "1"]).status.code(), Some(2));
}

#[test]
fn zero_point_maps_to_zero() {
    let dir = scratch("zero");
    let p = dir.join("zero.json");
    write_json(&p, &json!({
        "surface": "three-punctured-sphere",
        "chart": "shear_decoration",
        "values": {"edges": {"e12": 0.0, "e13": 0.0, "e23": 0.0}, "vertices": {"v1": 0.0, "v2": 0.0, "v3": 0.0}}
    }));
    let out = dir.join("out.json");
    let o = run(&["convert", "--point", p.to_str().unwrap(), "--direction", "forward", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = read_json(&out);
    assert_eq!(v["chart"], "lambda_boundary");
    for group in ["edges", "vertices"] {
        assert!(v["values"][group].as_object().unwrap().values().all(|t| t.as_f64().unwrap().abs() < 1e-15));
    }
}

#[test]
fn forward_then_inverse_on_generated_surface() {
    let dir = scratch("roundtrip");
    let surface = dir.join("surface.json");
    let o = run(&["generate", "--genus", "1", "--punctures", "1", "--spikes", "1", "--output", surface.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let s = read_json(&surface);
    let mut edges = serde_json::Map::new();
    for (i, e) in s["edges"].as_array().unwrap().iter().enumerate() {
        if e["kind"] == "interior" {
            edges.insert(e["id"].as_str().unwrap().into(), json!(0.37 * i as f64 - 0.9));
        }
    }
    let vertices: serde_json::Map<String, Value> = s["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .enumerate()
        .map(|(i, v)| (v["id"].as_str().unwrap().to_string(), json!(0.5 - 0.3 * i as f64)))
        .collect();
    let p = dir.join("p.json");
    write_json(&p, &json!({"surface": "surface.json", "chart": "shear_decoration", "values": {"edges": edges, "vertices": vertices}}));
    let q = dir.join("q.json");
    let back = dir.join("back.json");
    assert!(run(&["convert", "--point", p.to_str().unwrap(), "--direction", "forward", "--output", q.to_str().unwrap()]).status.success());
    assert!(run(&["convert", "--point", q.to_str().unwrap(), "--direction", "inverse", "--output", back.to_str().unwrap()]).status.success());
    let a = PointFile::read(&p).unwrap();
    let b = PointFile::read(&back).unwrap();
    for (group, want) in [(&b.values.edges, &a.values.edges), (&b.values.vertices, &a.values.vertices)] {
        for (id, v) in want {
            assert!((group[id] - v).abs() <= 1e-9, "{id}");
        }
    }
}

#[test]
fn inverse_outside_hypothesis_is_rejected() {
    let dir = scratch("hypothesis");
    let surface = dir.join("sphere.json");
    assert!(run(&["generate", "--example", "three-punctured-sphere", "--output", surface.to_str().unwrap()]).status.success());
    let p = dir.join("q.json");
    write_json(&p, &json!({
        "surface": "sphere.json",
        "chart": "lambda_boundary",
        "values": {"edges": {"e12": 0.1, "e13": 0.2, "e23": 0.3}, "vertices": {"v1": 0.0, "v2": 0.0, "v3": 0.0}}
    }));
    // same surface by path: no closed form, and its punctures are 2-valent
    let o = run(&["convert", "--point", p.to_str().unwrap(), "--direction", "inverse"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("valence"));
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = scratch("malformed");
    let p = dir.join("missing.json");
    write_json(&p, &json!({
        "surface": "three-punctured-sphere",
        "chart": "shear_decoration",
        "values": {"edges": {"e12": 0.0, "e13": 0.0}, "vertices": {"v1": 0.0, "v2": 0.0, "v3": 0.0}}
    }));
    let o = run(&["convert", "--point", p.to_str().unwrap(), "--direction", "forward"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("e23"));

    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(run(&["convert", "--point", bad.to_str().unwrap(), "--direction", "forward"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["generate", "--genus", "0", "--punctures", "0", "--spikes", "1"]).status.code(), Some(2));
}

#[test]
fn verify_is_deterministic_and_passes() {
    let args = ["--format", "structured", "verify", "--all", "--samples", "20", "--seed", "5"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["schema"], "teich-coords/verify-report/1");
    assert_eq!(v["suites"].as_array().unwrap().len(), 8);
    for s in v["suites"].as_array().unwrap() {
        for c in s["checks"].as_array().unwrap() {
            assert!(c["name"].is_string() && c["max_error"].is_number());
        }
    }
}

#[test]
fn verify_failure_exits_one() {
    let o = run(&["verify", "--suite", "roundtrip", "--samples", "5", "--tolerance", "1e-300"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL") && !text.contains('\x1b'));
}

#[test]
fn lamination_report() {
    let dir = scratch("lamination");
    let s = fixtures::three_punctured_sphere();
    let curves = (0..3).map(|v| (CombinatorialCurve::around_vertex(&s, v).unwrap(), 0.5 + v as f64)).collect();
    let l = Lamination::new(&s, Flavor::A, curves, vec![0; 3]).unwrap();
    let file = LaminationFile { surface: "three-punctured-sphere".into(), lamination: l.to_description() };
    let path = dir.join("a.json");
    std::fs::write(&path, serde_json::to_string_pretty(&file).unwrap()).unwrap();

    let o = run(&["--format", "structured", "lamination", "--lamination", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["compatibility"]["max_error"].as_f64().unwrap() <= 1e-9);
    let weights: Vec<f64> = l.edge_weights_a().unwrap();
    let reported: Vec<f64> = v["edge_weights"].as_array().unwrap().iter().map(|r| r[1].as_f64().unwrap()).collect();
    assert_eq!(weights, reported);

    let o = run(&["lamination", "--lamination", path.to_str().unwrap()]);
    assert!(stdout(&o).contains("compatibility PASS"));
}
