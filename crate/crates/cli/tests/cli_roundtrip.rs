//! End-to-end checks of the binary: output shapes, exit codes, manifest
//! verification, and schema conformance of the JSON reports.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_rivalcast")
}

fn run(args: &[&str], cwd: &Path) -> Output {
    Command::new(bin())
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn assert_ok(out: &Output) {
    assert!(
        out.status.success(),
        "command failed: {}\n{}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

fn write_dataset(dir: &Path) -> PathBuf {
    let path = dir.join("graph.txt");
    fs::write(&path, "0 1\n0 2\n1 2\n2 3\n3 0\n1 3\n2 4\n4 0\n").unwrap();
    path
}

#[test]
fn solve_produces_cartesian_rows_with_empty_baseline_ratio() {
    let dir = tempfile::tempdir().unwrap();
    write_dataset(dir.path());
    assert_ok(&run(
        &[
            "sample",
            "--dataset",
            "graph.txt",
            "--theta",
            "300",
            "--seed",
            "5",
            "--rival",
            "top:1",
            "--out",
            "col",
        ],
        dir.path(),
    ));
    assert_ok(&run(
        &[
            "solve",
            "--collection",
            "col",
            "--k",
            "1,2,3",
            "--method",
            "random,maxdegree,infmax,greedy,modmod1,modmod2",
            "--out",
            "sol",
        ],
        dir.path(),
    ));
    let csv = fs::read_to_string(dir.path().join("sol/results.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 1 + 18, "header plus 6 methods x 3 budgets");
    assert_eq!(
        lines[0],
        "method,k,solution_size,solution,f_hat,f_lower,pi_hat,ratio,iterations"
    );
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        let method = fields[0];
        let (pi, ratio) = (fields[6], fields[7]);
        if method.starts_with("modmod") {
            assert!(!pi.is_empty() && !ratio.is_empty(), "{line}");
        } else {
            assert!(pi.is_empty() && ratio.is_empty(), "{line}");
        }
    }
    // a JSON report exists per row
    let reports: Vec<_> = fs::read_dir(dir.path().join("sol/reports"))
        .unwrap()
        .collect();
    assert_eq!(reports.len(), 18);
}

#[test]
fn tampered_collection_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    write_dataset(dir.path());
    assert_ok(&run(
        &[
            "sample",
            "--dataset",
            "graph.txt",
            "--theta",
            "100",
            "--seed",
            "1",
            "--out",
            "col",
        ],
        dir.path(),
    ));
    // corrupt one byte of the collection snapshot
    let snap = dir.path().join("col/collection.json");
    let mut bytes = fs::read(&snap).unwrap();
    let last = bytes.len() - 10;
    bytes[last] = bytes[last].wrapping_add(1);
    fs::write(&snap, bytes).unwrap();
    let out = run(
        &["solve", "--collection", "col", "--k", "1", "--out", "sol"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2), "validation exit code expected");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("manifest"), "stderr: {stderr}");
}

#[test]
fn evaluate_exact_matches_oracle_by_hand() {
    let dir = tempfile::tempdir().unwrap();
    // two-node chain with probability 0.5 and unit weights: f = 1.5
    fs::write(dir.path().join("chain.txt"), "0 1 0.5\n").unwrap();
    fs::write(dir.path().join("w.txt"), "0 1 0\n1 1 0\n").unwrap();
    let out = run(
        &[
            "evaluate",
            "--dataset",
            "chain.txt",
            "--prob-rule",
            "explicit",
            "--weights",
            "w.txt",
            "--sp",
            "0",
            "--mode",
            "exact",
        ],
        dir.path(),
    );
    assert_ok(&out);
    let stdout = String::from_utf8_lossy(&out.stdout);
    let f_line = stdout.lines().find(|l| l.starts_with("f ")).unwrap();
    let f: f64 = f_line[2..].parse().unwrap();
    assert!((f - 1.5).abs() < 1e-12, "{stdout}");
}

#[test]
fn bruteforce_finds_known_optimum() {
    let dir = tempfile::tempdir().unwrap();
    // star out of node 0 with deterministic edges and benign weights:
    // the best singleton is the hub
    fs::write(dir.path().join("star.txt"), "0 1 1.0\n0 2 1.0\n0 3 1.0\n").unwrap();
    fs::write(dir.path().join("w.txt"), "0 1 0\n1 1 0\n2 1 0\n3 1 0\n").unwrap();
    let out = run(
        &[
            "bruteforce",
            "--dataset",
            "star.txt",
            "--prob-rule",
            "explicit",
            "--weights",
            "w.txt",
            "--k",
            "1",
            "--rival",
            "ids:3",
        ],
        dir.path(),
    );
    assert_ok(&out);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.lines().any(|l| l == "best 0"), "{stdout}");
    // hub reaches everything; rival holds node 3 whose q = 0: f = 3
    let f_line = stdout.lines().find(|l| l.starts_with("f ")).unwrap();
    let f: f64 = f_line[2..].parse().unwrap();
    assert!((f - 3.0).abs() < 1e-12, "{stdout}");
}

/// Minimal JSON-schema walker: `required` membership plus primitive `type`
/// checks, enough to keep the shipped schema and the emitted reports in
/// sync.
fn validate(value: &serde_json::Value, schema: &serde_json::Value, path: &str) -> Vec<String> {
    let mut errors = Vec::new();
    let types = match &schema["type"] {
        serde_json::Value::String(t) => vec![t.clone()],
        serde_json::Value::Array(ts) => ts
            .iter()
            .filter_map(|t| t.as_str().map(str::to_string))
            .collect(),
        _ => vec![],
    };
    if !types.is_empty() {
        let actual = match value {
            serde_json::Value::Null => "null",
            serde_json::Value::Bool(_) => "boolean",
            serde_json::Value::Number(n) => {
                if n.is_i64() || n.is_u64() {
                    "integer"
                } else {
                    "number"
                }
            }
            serde_json::Value::String(_) => "string",
            serde_json::Value::Array(_) => "array",
            serde_json::Value::Object(_) => "object",
        };
        let matches = types
            .iter()
            .any(|t| t == actual || (t == "number" && actual == "integer"));
        if !matches {
            errors.push(format!("{path}: expected {types:?}, found {actual}"));
            return errors;
        }
    }
    if let Some(required) = schema["required"].as_array() {
        for key in required.iter().filter_map(|k| k.as_str()) {
            if value.get(key).is_none() {
                errors.push(format!("{path}: missing required field {key}"));
            }
        }
    }
    if let Some(props) = schema["properties"].as_object() {
        for (key, subschema) in props {
            if let Some(subvalue) = value.get(key) {
                errors.extend(validate(subvalue, subschema, &format!("{path}.{key}")));
            }
        }
    }
    if let Some(items) = schema.get("items") {
        if let Some(array) = value.as_array() {
            for (i, item) in array.iter().enumerate() {
                errors.extend(validate(item, items, &format!("{path}[{i}]")));
            }
        }
    }
    errors
}

#[test]
fn reports_validate_against_shipped_schema() {
    let dir = tempfile::tempdir().unwrap();
    write_dataset(dir.path());
    assert_ok(&run(
        &[
            "sample",
            "--dataset",
            "graph.txt",
            "--theta",
            "200",
            "--seed",
            "3",
            "--out",
            "col",
        ],
        dir.path(),
    ));
    assert_ok(&run(
        &[
            "solve",
            "--collection",
            "col",
            "--k",
            "2",
            "--method",
            "modmod2,greedy,random",
            "--out",
            "sol",
        ],
        dir.path(),
    ));
    let schema: serde_json::Value = serde_json::from_str(include_str!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/schemas/report.schema.json"
    )))
    .unwrap();
    for entry in fs::read_dir(dir.path().join("sol/reports")).unwrap() {
        let path = entry.unwrap().path();
        let value: serde_json::Value = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
        let errors = validate(&value, &schema, "$");
        assert!(errors.is_empty(), "{}: {errors:?}", path.display());
    }
}

#[test]
fn sample_set_counts_and_degenerate_weights() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("tri.txt"), "0 1\n1 2\n2 0\n").unwrap();
    assert_ok(&run(
        &[
            "sample",
            "--dataset",
            "tri.txt",
            "--theta",
            "100",
            "--seed",
            "2",
            "--out",
            "col",
        ],
        dir.path(),
    ));
    let snap: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("col/collection.json")).unwrap()).unwrap();
    assert_eq!(snap["w_sets"].as_array().unwrap().len(), 100);
    assert_eq!(snap["z_sets"].as_array().unwrap().len(), 100);

    // q = p on every node: l(V) = 0, so no z-sets are drawn
    fs::write(
        dir.path().join("w.txt"),
        "0 0.5 0.5\n1 0.7 0.7\n2 0.2 0.2\n",
    )
    .unwrap();
    assert_ok(&run(
        &[
            "sample",
            "--dataset",
            "tri.txt",
            "--theta",
            "100",
            "--seed",
            "2",
            "--weights",
            "w.txt",
            "--out",
            "col0",
        ],
        dir.path(),
    ));
    let snap: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("col0/collection.json")).unwrap())
            .unwrap();
    assert_eq!(snap["w_sets"].as_array().unwrap().len(), 100);
    assert_eq!(snap["z_sets"].as_array().unwrap().len(), 0);

    // theta = 0 is a validation error
    let out = run(
        &[
            "sample",
            "--dataset",
            "tri.txt",
            "--theta",
            "0",
            "--out",
            "colx",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_codes_for_io_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "sample",
            "--dataset",
            "missing.txt",
            "--theta",
            "10",
            "--out",
            "col",
        ],
        dir.path(),
    );
    assert_eq!(
        out.status.code(),
        Some(3),
        "missing dataset is an I/O error"
    );

    let out = run(
        &["verify", "--theta", "800", "--trials", "8", "--seed", "4"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    let passes = stdout
        .lines()
        .filter(|l| l.contains("\"pass\":true"))
        .count();
    assert_eq!(passes, 3, "{stdout}");

    // the negative control must fail the estimator check and exit 1
    let out = run(
        &[
            "verify",
            "--theta",
            "800",
            "--trials",
            "8",
            "--seed",
            "4",
            "--corrupt-estimator",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(
        stdout
            .lines()
            .any(|l| l.contains("estimator_error") && l.contains("\"pass\":false")),
        "{stdout}"
    );

    let out = run(&["verify", "--trials", "0"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_times_grow_with_theta() {
    let dir = tempfile::tempdir().unwrap();
    // default synthetic 200-node graph; the 20x larger collection must be
    // slower to solve in median
    let out = run(
        &[
            "bench",
            "--theta",
            "1000,20000",
            "--k",
            "10",
            "--method",
            "modmod2",
            "--runs",
            "3",
            "--seed",
            "6",
            "--out",
            "bench.csv",
        ],
        dir.path(),
    );
    assert_ok(&out);
    let mut reader = csv::Reader::from_path(dir.path().join("bench.csv")).unwrap();
    let mut medians = std::collections::BTreeMap::new();
    for record in reader.records() {
        let record = record.unwrap();
        let theta: usize = record[0].parse().unwrap();
        let ms: f64 = record[4].parse().unwrap();
        assert!(ms > 0.0, "wall time must be positive");
        medians.insert(theta, ms);
    }
    assert!(
        medians[&20000] > medians[&1000],
        "expected solve time to grow with theta: {medians:?}"
    );
}

#[test]
fn undirected_and_constant_rule_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("tiny.txt"), "0 1\n").unwrap();
    assert_ok(&run(
        &[
            "sample",
            "--dataset",
            "tiny.txt",
            "--undirected",
            "--prob-rule",
            "const:0.3",
            "--theta",
            "50",
            "--out",
            "col",
        ],
        dir.path(),
    ));
    let snapshot: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("col/network.json")).unwrap()).unwrap();
    let edges = snapshot["edges"].as_array().unwrap();
    assert_eq!(edges.len(), 2, "both directions present: {edges:?}");
    for edge in edges {
        assert_eq!(edge[2].as_f64().unwrap(), 0.3);
        assert_eq!(edge[3].as_f64().unwrap(), 0.3);
    }
}
