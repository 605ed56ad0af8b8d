use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_cycleshred"));
    c.env_remove("CYCLESHRED_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn cycleshred")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn golden_text(name: &str) -> String {
    fs::read_to_string(golden(name)).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

/// Sorted keys of a JSON object.
fn json_keys(v: &serde_json::Value) -> Vec<String> {
    v.as_object().unwrap().keys().cloned().collect()
}

/// Sorted lines of a golden file.
fn lines(name: &str) -> Vec<String> {
    let mut v: Vec<String> = golden_text(name).lines().map(String::from).collect();
    v.sort();
    v
}

#[test]
fn generate_examples() {
    let dir = TempDir::new().unwrap();
    let k10 = dir.path().join("k10.txt");
    let o = run(&["generate", "--n", "10", "--p", "1", "--out", s(&k10)]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "m=45 odd=10");
    let text = fs::read_to_string(&k10).unwrap();
    assert_eq!(text.lines().next(), Some("10 45"));
    assert_eq!(text.lines().nth(1), Some("0 1"));

    let o = run(&["generate", "--n", "100", "--p", "0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8_lossy(&o.stdout), "100 0\n");
}

#[test]
fn generate_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    let c = dir.path().join("c.txt");
    for out in [&a, &b] {
        let o = run(&["generate", "--n", "1000", "--p", "0.01", "--seed", "7", "--out", s(out)]);
        assert_eq!(code(&o), 0);
    }
    let o = bin()
        .args(["generate", "--n", "1000", "--p", "0.01", "--out", s(&c)])
        .env("CYCLESHRED_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let a = fs::read(&a).unwrap();
    assert_eq!(a, fs::read(&b).unwrap());
    assert_eq!(a, fs::read(&c).unwrap());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&["generate", "--n", "10", "--p", "2"])), 2);
    assert_eq!(code(&run(&["generate", "--p", "0.5"])), 2);
    assert_eq!(code(&run(&["generate", "--n", "x", "--p", "0.5"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["decompose", "--in", "/nonexistent/graph.txt"])), 2);
    assert_eq!(code(&run(&["experiment", "--n", "10"])), 2);
}

#[test]
fn decompose_triangle_matches_golden() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("d.json");
    let report = dir.path().join("r.json");
    let o = run(&[
        "decompose",
        "--in",
        s(&golden("triangle.txt")),
        "--out",
        s(&out),
        "--report",
        s(&report),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        fs::read_to_string(&out).unwrap(),
        golden_text("triangle_decomposition.json")
    );

    let r: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json_keys(&r), lines("run_report_keys.txt"));
    assert_eq!(r["cycles"], 1);
    assert_eq!(r["single_edges"], 0);
    assert_eq!(r["verified"], true);
}

#[test]
fn decompose_path_gives_single_edges() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "p.txt", "3 2\n1 2\n0 1\n");
    let o = run(&["decompose", "--in", s(&g)]);
    assert_eq!(code(&o), 0);
    let d: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(d["cycles"].as_array().unwrap().len(), 0);
    assert_eq!(d["edges"].as_array().unwrap().len(), 2);
}

#[test]
fn decompose_rejects_bad_input() {
    let dir = TempDir::new().unwrap();
    for (name, text) in [
        ("loop.txt", "3 1\n1 1\n"),
        ("range.txt", "3 1\n0 3\n"),
        ("count.txt", "3 2\n0 1\n"),
        ("dup.txt", "3 2\n0 1\n1 0\n"),
        ("junk.txt", "three\n"),
    ] {
        let g = write(&dir, name, text);
        assert_eq!(code(&run(&["decompose", "--in", s(&g)])), 2, "{name}");
    }
    let g = golden("triangle.txt");
    let bad = write(&dir, "cfg.json", r#"{"no_such_field": 1}"#);
    assert_eq!(code(&run(&["decompose", "--in", s(&g), "--config", s(&bad)])), 2);
    let bad = write(&dir, "cfg2.json", "[1, 2]");
    assert_eq!(code(&run(&["decompose", "--in", s(&g), "--config", s(&bad)])), 2);
    assert_eq!(code(&run(&["decompose", "--in", s(&g), "--p", "1.5"])), 2);
}

#[test]
fn decompose_random_graph_round_trips() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("g.txt");
    let d = dir.path().join("d.json");
    let r = dir.path().join("r.json");
    assert_eq!(
        code(&run(&[
            "generate",
            "--n",
            "2000",
            "--p",
            "0.02",
            "--seed",
            "1",
            "--out",
            s(&g)
        ])),
        0
    );
    let cfg = write(&dir, "cfg.json", r#"{"repair_rounds": 3}"#);
    let o = run(&[
        "decompose",
        "--in",
        s(&g),
        "--out",
        s(&d),
        "--report",
        s(&r),
        "--config",
        s(&cfg),
        "--seed",
        "5",
    ]);
    assert_eq!(code(&o), 0);
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(&r).unwrap()).unwrap();
    let pieces = report["piece_count"].as_u64().unwrap();
    let lb = report["lower_bound"].as_u64().unwrap();
    assert!(pieces >= lb && lb > 0);
    assert!(report["ratio"].as_f64().unwrap() >= 1.0);
    assert_eq!(report["seed"], 5);
    assert_eq!(code(&run(&["verify", "--in", s(&g), "--decomposition", s(&d)])), 0);
}

#[test]
fn round_trip_over_seeds() {
    let dir = TempDir::new().unwrap();
    for (i, (n, p)) in [(30, "0.5"), (80, "0.1"), (200, "0.03"), (150, "0.9"), (60, "0.02")]
        .into_iter()
        .enumerate()
    {
        let g = dir.path().join(format!("g{i}.txt"));
        let d = dir.path().join(format!("d{i}.json"));
        let seed = (i * 31).to_string();
        let n = n.to_string();
        assert_eq!(
            code(&run(&[
                "generate",
                "--n",
                &n,
                "--p",
                p,
                "--seed",
                &seed,
                "--out",
                s(&g)
            ])),
            0
        );
        assert_eq!(
            code(&run(&["decompose", "--in", s(&g), "--out", s(&d), "--seed", &seed])),
            0
        );
        assert_eq!(code(&run(&["verify", "--in", s(&g), "--decomposition", s(&d)])), 0);
    }
}

#[test]
fn verify_examples() {
    let dir = TempDir::new().unwrap();
    let g = golden("triangle.txt");

    let ok = write(&dir, "ok.json", r#"{"n":3,"cycles":[[0,1,2]],"edges":[]}"#);
    assert_eq!(code(&run(&["verify", "--in", s(&g), "--decomposition", s(&ok)])), 0);

    let o = run(&[
        "verify",
        "--in",
        s(&g),
        "--decomposition",
        s(&golden("triangle_duplicate.json")),
    ]);
    assert_eq!(code(&o), 1);
    assert_eq!(String::from_utf8_lossy(&o.stdout), golden_text("verify_duplicate.json"));

    let missing = write(&dir, "missing.json", r#"{"n":3,"cycles":[],"edges":[[0,1],[1,2]]}"#);
    let o = run(&["verify", "--in", s(&g), "--decomposition", s(&missing)]);
    assert_eq!(code(&o), 1);
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["missing_edges"], serde_json::json!([[0, 2]]));

    let malformed = write(&dir, "bad.json", r#"{"n":3,"cycles":[[0,1"#);
    assert_eq!(
        code(&run(&["verify", "--in", s(&g), "--decomposition", s(&malformed)])),
        2
    );
    let short = write(&dir, "short.json", r#"{"n":3,"cycles":[[0,1]],"edges":[]}"#);
    assert_eq!(code(&run(&["verify", "--in", s(&g), "--decomposition", s(&short)])), 2);
}

#[test]
fn experiment_with_zero_trials_writes_header_only() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("e.csv");
    let o = run(&[
        "experiment",
        "--n",
        "100",
        "--p",
        "0.1",
        "--trials",
        "0",
        "--out",
        s(&csv),
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(fs::read_to_string(&csv).unwrap(), golden_text("experiment_header.csv"));
}

#[test]
fn experiment_rows_and_summary() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("e.csv");
    let summary = dir.path().join("s.json");
    let o = run(&[
        "experiment",
        "--n",
        "500",
        "--p",
        "0.05",
        "--trials",
        "3",
        "--jobs",
        "2",
        "--out",
        s(&csv),
        "--summary",
        s(&summary),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let mut reader = csv::Reader::from_path(&csv).unwrap();
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header.join(","), golden_text("experiment_header.csv").trim_end());
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 3);
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    for (t, r) in rows.iter().enumerate() {
        assert_eq!(r[col("trial")].parse::<usize>().unwrap(), t);
        assert!(r[col("ratio")].parse::<f64>().unwrap() >= 1.0);
        assert_eq!(&r[col("verified")], "true");
        assert_eq!(&r[col("error")], "");
        let stages: usize = [
            "euler_repair",
            "long_cycle",
            "hamilton",
            "matching_closure",
            "peel",
            "leftover_edge",
        ]
        .iter()
        .map(|c| r[col(c)].parse::<usize>().unwrap())
        .sum();
        assert_eq!(stages, r[col("pieces")].parse::<usize>().unwrap());
    }

    let s: serde_json::Value = serde_json::from_str(&fs::read_to_string(&summary).unwrap()).unwrap();
    assert_eq!(json_keys(&s), lines("experiment_summary_keys.txt"));
    let case = &s["cases"][0];
    assert_eq!(json_keys(case), lines("experiment_case_keys.txt"));
    assert_eq!(case["completed"], 3);
    assert!(case["mean_ratio"].as_f64().unwrap() >= 1.0);
}

#[test]
fn experiment_spec_file_and_determinism() {
    let dir = TempDir::new().unwrap();
    let spec = write(
        &dir,
        "spec.json",
        r#"{"cases": [{"n": 200, "p": 0.05, "trials": 2}, {"n": 100, "p": 0.5, "trials": 1}],
            "config": {"repair_rounds": 2}, "seed": 11}"#,
    );
    let strip_time = |path: &Path| -> Vec<String> {
        let mut reader = csv::Reader::from_path(path).unwrap();
        let t = reader.headers().unwrap().iter().position(|h| h == "time_ms").unwrap();
        reader
            .records()
            .map(|r| {
                let r = r.unwrap();
                r.iter()
                    .enumerate()
                    .filter(|&(i, _)| i != t)
                    .map(|(_, f)| f.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect()
    };
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    assert_eq!(code(&run(&["experiment", "--spec", s(&spec), "--out", s(&a)])), 0);
    assert_eq!(
        code(&run(&["experiment", "--spec", s(&spec), "--out", s(&b), "--jobs", "1"])),
        0
    );
    let rows = strip_time(&a);
    assert_eq!(rows.len(), 3);
    assert_eq!(rows, strip_time(&b));

    let bad = write(&dir, "bad.json", r#"{"cases": [{"n": 10, "p": 1.5, "trials": 1}]}"#);
    assert_eq!(code(&run(&["experiment", "--spec", s(&bad)])), 2);
    let unknown = write(&dir, "unknown.json", r#"{"cases": [], "extra": 1}"#);
    assert_eq!(code(&run(&["experiment", "--spec", s(&unknown)])), 2);
}

#[test]
fn probe_csv_and_summary() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("p.csv");
    let summary = dir.path().join("p.json");
    let o = run(&[
        "probe",
        "--n",
        "9",
        "--p",
        "1",
        "--trials",
        "4",
        "--out",
        s(&csv),
        "--summary",
        s(&summary),
    ]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&csv).unwrap();
    let mut it = text.lines();
    assert_eq!(it.next().unwrap(), golden_text("probe_header.csv").trim_end());
    assert_eq!(it.count(), 4);
    let s: serde_json::Value = serde_json::from_str(&fs::read_to_string(&summary).unwrap()).unwrap();
    assert_eq!(s["trials"], 4);
    assert_eq!(s["summary"]["odd_fraction"]["mean"], 0.0);
    assert_eq!(code(&run(&["probe", "--n", "9", "--p", "1", "--trials", "0"])), 2);
}
