use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn instances() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("instances")
}

fn wisdom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wisdom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_instance(dir: &TempDir, name: &str, json: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, json).unwrap();
    p.to_str().unwrap().to_string()
}

fn json_ok(out: &Output) -> Value {
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn perms(v: &Value) -> Vec<Vec<u64>> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|p| {
            p.as_array()
                .unwrap()
                .iter()
                .map(|k| k.as_u64().unwrap())
                .collect()
        })
        .collect()
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|k| k.as_f64().unwrap())
        .collect()
}

#[test]
fn analyze_reports_membership_and_grade() {
    let gap = instances().join("gap.json");
    let r = json_ok(&wisdom(&["analyze", gap.to_str().unwrap()]));
    assert_eq!(r["membership"], "Improves");
    assert_eq!(r["consistency"], "Gap");
    assert!((r["collective_variance"].as_f64().unwrap() - 0.97).abs() < 1e-12);
    assert!((r["baseline_variance"].as_f64().unwrap() - 14.0 / 9.0).abs() < 1e-12);
    assert!((r["optimal_variance"].as_f64().unwrap() - 36.0 / 49.0).abs() < 1e-12);

    let dir = TempDir::new().unwrap();
    let u = write_instance(&dir, "u.json", r#"{"sigma2": [1, 1, 1], "x": [1, 0, 0]}"#);
    assert_eq!(json_ok(&wisdom(&["analyze", &u]))["membership"], "Undermines");
}

#[test]
fn missing_or_malformed_keys_exit_with_one() {
    let dir = TempDir::new().unwrap();
    let no_x = write_instance(&dir, "a.json", r#"{"sigma2": [1, 4, 9]}"#);
    let out = wisdom(&["analyze", &no_x]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("\"x\""), "{}", stderr(&out));

    let bad = write_instance(&dir, "b.json", r#"{"sigma2": [1, 4, 9], "x": [0.5, 0.3]}"#);
    let out = wisdom(&["analyze", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("error: x:"));

    let neg = write_instance(&dir, "c.json", r#"{"sigma2": [1, 0, 9]}"#);
    let out = wisdom(&["mpg", &neg]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("sigma2[1]"));

    let out = wisdom(&["mpg", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn mpg_reports_original_labels() {
    let two = instances().join("two_cells.json");
    let r = json_ok(&wisdom(&["mpg", "--oracle", two.to_str().unwrap()]));
    assert_eq!(perms(&r["orderings"]), vec![vec![1, 2, 3], vec![2, 1, 3]]);
    assert_eq!(floats(&r["ascending_order"]), vec![2.0, 1.0, 3.0]);
    assert_eq!(r["oracle"]["agrees"], true);

    let dir = TempDir::new().unwrap();
    let none = write_instance(&dir, "n.json", r#"{"sigma2": [1, 2, 3]}"#);
    assert_eq!(json_ok(&wisdom(&["mpg", &none]))["count"], 0);

    let one = write_instance(&dir, "o.json", r#"{"sigma2": [1, 4, 9]}"#);
    let r = json_ok(&wisdom(&["mpg", "--oracle", &one]));
    assert_eq!(perms(&r["orderings"]), vec![vec![1, 2, 3]]);
    assert_eq!(r["oracle"]["agrees"], true);
}

#[test]
fn mpg_rational_mode_reads_decimal_text() {
    let dir = TempDir::new().unwrap();
    let q = write_instance(
        &dir,
        "q.json",
        r#"{"sigma2": ["16", 2, "1.0"], "rational": true}"#,
    );
    let r = json_ok(&wisdom(&["mpg", "--oracle", &q]));
    assert_eq!(r["arithmetic"], "rational");
    assert_eq!(perms(&r["orderings"]), vec![vec![2, 3, 1], vec![3, 2, 1]]);
    assert_eq!(r["oracle"]["agrees"], true);
}

#[test]
fn oracle_cap_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let big = write_instance(&dir, "big.json", r#"{"sigma2": [1, 2, 3, 4, 5, 6, 7, 8, 9, 10]}"#);
    assert_eq!(wisdom(&["mpg", &big]).status.code(), Some(0));
    let out = wisdom(&["mpg", "--oracle", &big]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("cap"));
}

#[test]
fn region_export_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let gap = instances().join("gap.json");
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let out = wisdom(&[
        "region",
        gap.to_str().unwrap(),
        "--resolution",
        "2",
        "--out",
        a.to_str().unwrap(),
    ]);
    let r = json_ok(&out);
    assert!(stderr(&out).contains("warning"));
    assert_eq!(r["points"], 6);
    let text = std::fs::read_to_string(&a).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "b1,b2,b3,membership,consistency,hypertriangle");
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[1], "0,0,1,Undermines,NotOrdering,3-1-2");

    for p in [&a, &b] {
        json_ok(&wisdom(&[
            "region",
            gap.to_str().unwrap(),
            "--resolution",
            "60",
            "--out",
            p.to_str().unwrap(),
        ]));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn region_fractions_follow_the_variances() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("r.csv");
    let csv = csv.to_str().unwrap();
    let s123 = write_instance(&dir, "s.json", r#"{"sigma2": [1, 2, 3]}"#);
    let r = json_ok(&wisdom(&["region", &s123, "--out", csv, "--check-convexity"]));
    assert_eq!(r["points"], 20301);
    let f = r["fractions"]["improves"].as_f64().unwrap();
    assert!(f > 0.0 && f < 0.5, "{f}");
    assert_eq!(r["gap_inclusion_violations"], 0);
    assert_eq!(r["convexity_violations"], 0);

    let flat = write_instance(&dir, "u.json", r#"{"sigma2": [5, 5, 5]}"#);
    let r = json_ok(&wisdom(&["region", &flat, "--resolution", "50", "--out", csv]));
    assert_eq!(r["counts"]["improves"], 0);

    let four = write_instance(&dir, "f.json", r#"{"sigma2": [1, 2, 3, 4]}"#);
    assert_eq!(wisdom(&["region", &four, "--out", csv]).status.code(), Some(1));
}

#[test]
fn fd_verdicts() {
    let run = |name: &str| json_ok(&wisdom(&["fd", instances().join(name).to_str().unwrap()]));

    let r = run("democratic_max_pap.json");
    assert_eq!(r["verdict"], "Optimal");
    assert_eq!(r["corollary2"]["kind"], "democratic");
    let x = floats(&r["social_power"]);
    let xstar = floats(&r["optimal_allocation"]);
    for (a, b) in x.iter().zip(&xstar) {
        assert!((a - b).abs() < 1e-9);
    }

    let r = run("star.json");
    assert_eq!(r["corollary2"]["kind"], "autocratic");
    assert_eq!(r["corollary2"]["center"], 1);
    assert_eq!(r["corollary2"]["verdict"], "Optimal");
    assert_eq!(r["verdict"], "Optimal");

    let r = run("reversed.json");
    assert_eq!(r["verdict"], "Undermines");
    assert_eq!(r["membership"], "Undermines");
}

#[test]
fn fd_power_and_trajectory_reach_the_limit() {
    let p = instances().join("democratic_max_pap.json");
    let r = json_ok(&wisdom(&[
        "fd",
        p.to_str().unwrap(),
        "--steps",
        "400",
        "--power",
        "4096",
    ]));
    assert!(r["power"]["max_deviation"].as_f64().unwrap() < 1e-9);
    assert!(r["trajectory"]["max_deviation"].as_f64().unwrap() < 1e-9);
    assert_eq!(floats(&r["W"][2]), vec![0.5, 0.5, 0.0]);
}

#[test]
fn fd_rejects_reducible_networks_with_sinks() {
    let dir = TempDir::new().unwrap();
    let red = write_instance(
        &dir,
        "r.json",
        r#"{"sigma2": [1, 2, 3], "gamma": [0.5, 0.5, 0.5], "C": [[0, 1, 0], [1, 0, 0], [0.5, 0.5, 0]]}"#,
    );
    let out = wisdom(&["fd", &red]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        stderr(&out).contains("sink components {1, 2}"),
        "{}",
        stderr(&out)
    );

    let bad_gamma = write_instance(
        &dir,
        "g.json",
        r#"{"sigma2": [1, 2], "gamma": [1, 1], "C": [[0, 1], [1, 0]]}"#,
    );
    let out = wisdom(&["fd", &bad_gamma]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("gamma"));

    let no_net = write_instance(&dir, "n.json", r#"{"sigma2": [1, 2], "gamma": [0.5, 0.5]}"#);
    assert_eq!(wisdom(&["fd", &no_net]).status.code(), Some(1));
}

#[test]
fn mc_gate_and_determinism() {
    let gap = instances().join("gap.json");
    let gap = gap.to_str().unwrap();
    for dist in ["gaussian", "uniform"] {
        let a = wisdom(&["mc", gap, "--trials", "20000", "--dist", dist]);
        let b = wisdom(&["mc", gap, "--trials", "20000", "--dist", dist]);
        let r = json_ok(&a);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(r["passed"], true);
        assert_eq!(r["distribution"], dist);
        assert!((r["analytic_variance"].as_f64().unwrap() - 0.97).abs() < 1e-12);
    }
    let out = wisdom(&["mc", gap, "--trials", "999"]);
    assert_eq!(out.status.code(), Some(1));
}
