use std::f64::consts::PI;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use collapse_lab::cli::{AnalyzeReport, GhMethod, GhReport};
use collapse_lab::collapse::{classify, profile, Family, ReproTable, SequenceSpec, VerdictKind};
use collapse_lab::{compute_breakdown, BoundBreakdown, FiniteMetricSpace, SubmersionBoundInput};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_collapse-lab"));
    c.env_remove("COLLAPSE_LAB_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_space(dir: &Path, name: &str, dist: Vec<Vec<f64>>) -> String {
    let path = dir.join(name);
    fs::write(&path, FiniteMetricSpace::from_matrix(dist).unwrap().to_json()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn analyze_writes_profile_and_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("profile.json");
    let o = run(&[
        "analyze", "--family", "torus", "--radii-rule", "1,1/i", "--range", "10:100", "--r", "0.5", "--mode",
        "exact", "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report: AnalyzeReport = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report.profile.rows.len(), 91);
    let spec = SequenceSpec::new(Family::Torus, "1,1/i", 10, 100, 0.5).unwrap();
    let p = profile(&spec).unwrap();
    assert_eq!(report.profile, p);
    assert_eq!(report.verdict, classify(&p, 0.1, 0.2).unwrap());
    assert_eq!(report.verdict.kind, VerdictKind::CodimAtMostOne);
}

#[test]
fn analyze_example_two_and_hopf() {
    let o = run(&["analyze", "--family", "torus", "--radii-rule", "1/i^2,1/i", "--range", "10:100", "--r", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"kind\": \"CODIM_AT_LEAST_TWO\""));

    let pi = PI.to_string();
    let o = run(&[
        "analyze", "--family", "berger", "--eps-rule", "1/i", "--range", "10:30", "--r", &pi, "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("index,inj,vol_ball,ratio,diam"));
    let ratios: Vec<f64> = lines
        .take_while(|l| !l.is_empty())
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    assert_eq!(ratios.len(), 21);
    assert!(ratios.iter().all(|r| (r - 2.0 * PI).abs() <= 1e-12 * 2.0 * PI));
    assert!(text.contains("CODIM_AT_MOST_ONE"));
}

#[test]
fn analyze_flag_errors_exit_two() {
    let o = run(&["analyze", "--family", "torus", "--radii-rule", "1,1/i", "--range", "10:9", "--r", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--range"));

    let o = run(&["analyze", "--family", "torus", "--radii-rule", "1,1/j", "--range", "1:9", "--r", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--radii-rule"));

    let o = run(&["analyze", "--family", "klein", "--radii-rule", "1", "--range", "1:9", "--r", "0.5"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["analyze", "--family", "torus", "--radii-rule", "1", "--range", "1:9", "--r", "0.5", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn analyze_domain_errors_exit_three() {
    // ε = i/5 leaves (0, 1] at i = 6
    let o = run(&["analyze", "--family", "berger", "--eps-rule", "i/5", "--range", "1:9", "--r", "0.5"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("index 6"));
}

#[test]
fn bounds_json_and_domain() {
    let o = run(&["bounds", "--ca", "1", "--ct", "1", "--k", "1", "--K", "1", "--ell", "0.1"]);
    assert_eq!(o.status.code(), Some(0));
    let b: BoundBreakdown = serde_json::from_str(&stdout(&o)).unwrap();
    let want = compute_breakdown(&SubmersionBoundInput::new(1.0, 1.0, 1, 1.0, 0.1).unwrap()).unwrap();
    assert_eq!(b, want);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_object().unwrap().len(), 7);

    let o = run(&["bounds", "--ca", "0", "--ct", "0", "--k", "2", "--K", "1", "--ell", "0.5"]);
    let b: BoundBreakdown = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(b.c_total, 1.0);

    let o = run(&["bounds", "--ca", "1", "--ct", "1", "--k", "1", "--K", "1", "--ell", "3.2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("ell < 2π/sqrt(K + 3·C_A²)"));

    let o = run(&["bounds", "--ca", "1", "--ct", "1", "--k", "1", "--K", "1", "--ell", "abc"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bounds_tau_grid() {
    let o = run(&[
        "bounds", "--ca", "1", "--ct", "1", "--k", "1", "--K", "1", "--ell", "0.1", "--tau-grid", "0.2,0.1,0.05",
        "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(text.lines().next(), Some("ell,p,l_minus_1,c_minus_1"));
    assert_eq!(rows.len(), 3);
    assert!(rows.windows(2).all(|w| w[1][1] < w[0][1]));
}

#[test]
fn gh_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let x = write_space(dir.path(), "x.json", vec![vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 1.0], vec![2.0, 1.0, 0.0]]);
    let p = write_space(dir.path(), "p.json", vec![vec![0.0]]);
    let parse = |o: &Output| serde_json::from_str::<GhReport>(&stdout(o)).unwrap();

    let o = run(&["gh", "--x", &x, "--y", &x]);
    assert_eq!(parse(&o), GhReport { method: GhMethod::Exact, distance: 0.0 });
    let o = run(&["gh", "--x", &p, "--y", &x, "--exact"]);
    assert_eq!(parse(&o).distance, 1.0);

    let n = 7;
    let line: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| (i as f64 - j as f64).abs()).collect()).collect();
    let big = write_space(dir.path(), "big.json", line);
    let o = run(&["gh", "--x", &big, "--y", &x, "--exact"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["gh", "--x", &big, "--y", &x]);
    assert_eq!(o.status.code(), Some(0));
    let r = parse(&o);
    assert_eq!(r.method, GhMethod::LowerBound);
    assert_eq!(r.distance, 2.0);

    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"labels\": [\"a\"], \"dist\": ").unwrap();
    let o = run(&["gh", "--x", bad.to_str().unwrap(), "--y", &x]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--x"));
    let o = run(&["gh", "--x", "/nonexistent/file.json", "--y", &x]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reproduce_writes_the_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("table.csv");
    let o = run(&["reproduce", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next(), Some(ReproTable::CSV_HEADER));
    assert_eq!(text.lines().count(), 29);
    assert!(text.lines().filter(|l| l.starts_with("thin_torus")).all(|l| l.contains("4*pi*r")));
}

#[test]
fn identical_flags_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let args = |name: &str| {
        vec![
            "reproduce".to_string(),
            "--mode".into(),
            "monte_carlo".into(),
            "--samples".into(),
            "20000".into(),
            "--format".into(),
            "json".into(),
            "--out".into(),
            dir.path().join(name).to_str().unwrap().to_string(),
        ]
    };
    for name in ["a.json", "b.json"] {
        assert!(bin().args(args(name)).env("COLLAPSE_LAB_SEED", "5").status().unwrap().success());
    }
    assert!(bin().args(args("c.json")).status().unwrap().success());
    let read = |n: &str| fs::read(dir.path().join(n)).unwrap();
    assert_eq!(read("a.json"), read("b.json"));
    assert_ne!(read("a.json"), read("c.json"));
    let table: ReproTable = serde_json::from_slice(&read("a.json")).unwrap();
    assert_eq!(table.seed, 5);
    let again = serde_json::to_string_pretty(&table).unwrap() + "\n";
    assert_eq!(again.as_bytes(), read("a.json").as_slice());
}

#[test]
fn seed_flag_beats_environment_and_bad_env_is_rejected() {
    let args = [
        "analyze", "--family", "torus", "--radii-rule", "1,1/i", "--range", "5:9", "--r", "0.5", "--mode", "mc",
        "--samples", "5000",
    ];
    let with_flag = bin().args(args).args(["--seed", "3"]).env("COLLAPSE_LAB_SEED", "9").output().unwrap();
    let with_env = bin().args(args).env("COLLAPSE_LAB_SEED", "3").output().unwrap();
    assert_eq!(with_flag.stdout, with_env.stdout);
    let report: AnalyzeReport = serde_json::from_slice(&with_env.stdout).unwrap();
    assert_eq!(report.spec.seed, 3);
    let bad = bin().args(args).env("COLLAPSE_LAB_SEED", "x").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    for sub in ["analyze", "bounds", "gh", "reproduce"] {
        assert!(stdout(&o).contains(sub));
    }
}
