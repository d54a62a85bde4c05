use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_blaschke-pm"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write_spec(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn json_of(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&output.stdout)))
}

fn schema(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.v1.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_valid(name: &str, instance: &Value) {
    let validator = jsonschema::validator_for(&schema(name)).unwrap();
    let errors: Vec<String> = validator.iter_errors(instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
}

struct Fixture {
    dir: tempfile::TempDir,
    pm06: PathBuf,
    pm03: PathBuf,
    double: PathBuf,
}

fn fixture() -> Fixture {
    let dir = tempfile::tempdir().unwrap();
    let pm06 = write_spec(dir.path(), "pm06.json", r#"{"phase": [1, 0], "zeros": [[0.6, 0, 1], [-0.6, 0, 1]]}"#);
    let pm03 = write_spec(dir.path(), "pm03.json", r#"{"phase": [1, 0], "zeros": [[0.3, 0, 1], [-0.3, 0, 1]]}"#);
    let double = write_spec(dir.path(), "double.json", r#"{"phase": [1, 0], "zeros": [[0.5, 0, 2]]}"#);
    Fixture { dir, pm06, pm03, double }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn barcode_command() {
    let f = fixture();
    let out = run(&["barcode", s(&f.pm06)]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_of(&out);
    assert_valid("barcode", &report);
    let bars = report["bars"].as_array().unwrap();
    assert_eq!(bars.len(), 2);
    let finite = bars.iter().find(|b| b["death"] != "inf").unwrap();
    assert!((finite["death"].as_f64().unwrap() - 2.125f64.ln()).abs() < 1e-10);
    assert_eq!(finite["mult"], 1);
    assert!(bars.iter().any(|b| b["death"] == "inf" && b["mult"] == 1 && b["birth"] == 0.0));

    let report = json_of(&run(&["barcode", s(&f.double)]));
    assert_eq!(report["bars"].as_array().unwrap().len(), 1);
    assert_eq!(report["bars"][0]["death"], "inf");
}

#[test]
fn malformed_specs_exit_2_naming_the_problem() {
    let f = fixture();
    let bad = write_spec(f.dir.path(), "bad.json", r#"{"zeros": [[0.1, 0, 1], [0.2, 0, "two"]]}"#);
    let out = run(&["barcode", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("zeros[1]"));
    assert!(out.stdout.is_empty());
    assert_eq!(run(&["barcode", "/definitely/missing.json"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["scan", s(&f.pm06), "--thresholds", "0.1,1.5"]).status.code(), Some(2));
    assert_eq!(run(&["barcode", s(&f.pm06), "--svg"]).status.code(), Some(2));
    assert_eq!(run(&["eval", s(&f.pm06), "--at", "0.5"]).status.code(), Some(2));
}

#[test]
fn distance_command() {
    let f = fixture();
    let report = json_of(&run(&["distance", s(&f.pm06), s(&f.pm03)]));
    assert_valid("distance", &report);
    let value = report["value"].as_f64().unwrap();
    assert!((value - 0.5 * (17.0f64 / 8.0).ln()).abs() < 1e-9);
    assert!(report["closed_form"]["difference"].as_f64().unwrap() < 1e-9);
    assert_eq!(report["witness"]["delta"].as_f64().unwrap(), value);

    let report = json_of(&run(&["distance", s(&f.pm06), s(&f.pm06)]));
    assert_eq!(report["value"].as_f64().unwrap(), 0.0);

    // The zeros of B composed with the involution about 0.3 + 0.2i.
    let moved = write_spec(
        f.dir.path(),
        "moved.json",
        r#"{"zeros": [[-0.32323820617355853, 0.29120559114735, 1], [0.7378447540517485, 0.24452658515780495, 1]]}"#,
    );
    let report = json_of(&run(&["distance", s(&f.pm06), s(&moved)]));
    assert!(report["value"].as_f64().unwrap() < 1e-9, "{report}");
}

#[test]
fn scan_command() {
    let f = fixture();
    let out_dir = f.dir.path().join("scan");
    let out = run(&[
        "scan",
        s(&f.pm06),
        "--grid",
        "512",
        "--thresholds",
        "0.1,0.35,0.37,0.5",
        "--out",
        s(&out_dir),
        "--svg",
        "--dump",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = json_of(&out);
    assert_valid("scan", &report);
    let rows = report["thresholds"].as_array().unwrap();
    let counts: Vec<u64> = rows.iter().map(|r| r["component_count"].as_u64().unwrap()).collect();
    assert_eq!(counts, [2, 2, 1, 1]);
    for row in rows {
        assert_eq!(row["euler_characteristic"].as_i64().unwrap(), row["component_count"].as_i64().unwrap());
    }
    let merges = report["merge_events"].as_array().unwrap();
    assert_eq!(merges.len(), 1);
    assert!((merges[0]["theta_merge"].as_f64().unwrap() - 0.36).abs() < 1e-2);
    for name in ["scan.json", "scan.svg", "grid.bin"] {
        assert!(out_dir.join(name).exists(), "{name}");
    }
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(out_dir.join("scan.json")).unwrap()).unwrap();
    assert_eq!(saved, report);
    let grid = blaschke_persistence::levelset::read_grid_dump(std::fs::File::open(out_dir.join("grid.bin")).unwrap()).unwrap();
    assert_eq!(grid.resolution(), 512);
    assert_eq!(grid.cell_count() as u64, report["cell_count"].as_u64().unwrap());

    let single = write_spec(f.dir.path(), "single.json", r#"{"zeros": [[0.2, -0.4]]}"#);
    let report = json_of(&run(&["scan", s(&single), "--grid", "256"]));
    assert!(report["thresholds"].as_array().unwrap().iter().all(|r| r["component_count"] == 1));
}

#[test]
fn critical_and_eval_commands() {
    let f = fixture();
    let report = json_of(&run(&["critical", s(&f.pm06)]));
    assert_valid("critical", &report);
    assert_eq!(report["order_sum"], 1);
    assert!((report["critical_points"][0]["critical_value"].as_f64().unwrap() - 0.36).abs() < 1e-12);

    let report = json_of(&run(&["eval", s(&f.pm06), "--at", "0,0", "--at", "0.6,0"]));
    assert_valid("eval", &report);
    assert!((report["points"][0]["value"][0].as_f64().unwrap() + 0.36).abs() < 1e-15);
    assert_eq!(report["points"][1]["modulus"].as_f64().unwrap(), 0.0);
    assert!(report["points"][1]["log_derivative"].is_null());

    let outside = run(&["eval", s(&f.pm06), "--at", "1.5,0"]);
    assert_eq!(outside.status.code(), Some(3));
}

#[test]
fn barcode_svg_is_written() {
    let f = fixture();
    let out_dir = f.dir.path().join("plots");
    let out = run(&["barcode", s(&f.pm06), "--out", s(&out_dir), "--svg"]);
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(out_dir.join("barcode.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("marker-end"));
    assert!(out_dir.join("barcode.json").exists());
}

#[test]
fn verify_command() {
    let out = run(&["verify", "--suite", "ln1x", "--suite", "exhaustive"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_of(&out);
    assert_valid("verify", &report);
    let names: Vec<&str> = report["suites"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["ln1x", "exhaustive"]);

    let out = run(&["verify", "--suite", "ln1x", "--inject-fault", "ln1x-constant"]);
    assert_eq!(out.status.code(), Some(1));
    let report = json_of(&out);
    assert_valid("verify", &report);
    assert!(report["suites"][0]["first_violation"]["x"].is_number());

    let out = run(&["verify", "--suite", "ineq2", "--inject-fault", "gamma-constant"]);
    assert_eq!(out.status.code(), Some(1));

    assert_eq!(run(&["verify", "--suite", "nonexistent"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--inject-fault", "nonexistent"]).status.code(), Some(2));
    let listed = json_of(&run(&["verify", "--list"]));
    assert!(listed["suites"].as_array().unwrap().len() > 20);
}

#[test]
fn outputs_are_deterministic() {
    let f = fixture();
    let runs = [
        vec!["barcode", s(&f.pm06)],
        vec!["distance", s(&f.pm06), s(&f.pm03)],
        vec!["scan", s(&f.pm06), "--grid", "256"],
        vec!["verify", "--suite", "witness", "--seed", "7"],
    ];
    for args in runs {
        let (a, b) = (run(&args), run(&args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let svg = |dir: &str| {
        let out_dir = f.dir.path().join(dir);
        run(&["scan", s(&f.pm06), "--grid", "256", "--out", s(&out_dir), "--svg"]);
        std::fs::read(out_dir.join("scan.svg")).unwrap()
    };
    assert_eq!(svg("a"), svg("b"));
}

#[test]
fn product_schema_accepts_spec_files() {
    let validator = jsonschema::validator_for(&schema("product")).unwrap();
    let good: Value = serde_json::from_str(r#"{"phase": [1, 0], "zeros": [[0.6, 0, 1], [-0.6, 0]]}"#).unwrap();
    assert!(validator.is_valid(&good));
    let bad: Value = serde_json::from_str(r#"{"zeros": [[0.6, 0, 0]]}"#).unwrap();
    assert!(!validator.is_valid(&bad));
}
