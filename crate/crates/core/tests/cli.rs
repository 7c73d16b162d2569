use std::path::Path;
use std::process::{Command, Output};

use bctdcs::io::read_polygon_csv;
use bctdcs::regions::{RatePair, RegionPolygon};

const BLACKWELL: &str = r#"{"input_size": 3, "f1": [0, 1, 1], "f2": [0, 0, 1], "p1": 0.7, "p2": 0.3}"#;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bctdcs")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn region_writes_convex_polygon() {
    let dir = tempfile::tempdir().unwrap();
    let ch = write(dir.path(), "bw.json", BLACKWELL);
    let out = dir.path().join("region.csv");
    let o = bin(&["region", "--channel", &ch, "--lambda-count", "8", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("# p1=0.7,p2=0.3\nr1,r2\n"));
    let pts = read_polygon_csv(&text).unwrap();
    let poly = RegionPolygon::from_vertices("read", pts);
    assert!(poly.is_convex(1e-9));
    assert!((poly.support(1.0, 0.0) - 1.0).abs() < 1e-6);
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let ch = write(dir.path(), "bw.json", BLACKWELL);
    let a = bin(&["support", "--channel", &ch, "--lambda-count", "6"]);
    let b = bin(&["support", "--channel", &ch, "--lambda-count", "6"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn finite_field_example_has_corner() {
    let o = bin(&["example-ff", "--k", "2", "--p1", "0.7", "--p2", "0.4", "--normalize"]);
    assert!(o.status.success());
    let pts = read_polygon_csv(&stdout(&o)).unwrap();
    assert!(pts.iter().any(|p| (p.r1 - 0.7).abs() < 1e-9 && (p.r2 - 0.6).abs() < 1e-9));
    assert!(pts.contains(&RatePair::new(1.0, 0.0)));
}

#[test]
fn dof_prints_value() {
    let o = bin(&["dof", "--p1", "0.9", "--p2", "0.2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1.7");
}

#[test]
fn verify_passes_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let ch = write(dir.path(), "bw.json", BLACKWELL);
    let o = bin(&["verify", "--channel", &ch, "--lambda-count", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().last().unwrap().ends_with(",0.005,true"));
}

#[test]
fn verify_exit_code_follows_summary() {
    let dir = tempfile::tempdir().unwrap();
    let ch = write(dir.path(), "bw.json", BLACKWELL);
    let o = bin(&["verify", "--channel", &ch, "--lambda-count", "2", "--grid", "4", "--tol", "0"]);
    let pass = stdout(&o).lines().last().unwrap().ends_with(",true");
    assert_eq!(o.status.code(), Some(if pass { 0 } else { 1 }));
}

#[test]
fn bad_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let unknown = write(dir.path(), "u.json", r#"{"input_size": 2, "f1": [0, 1], "f2": [1, 0], "q": 1}"#);
    let short = write(dir.path(), "s.json", r#"{"input_size": 3, "f1": [0, 1], "f2": [1, 0, 0], "p1": 0.5, "p2": 0.5}"#);
    let garbage = write(dir.path(), "g.json", "not json");
    let nop = write(dir.path(), "n.json", r#"{"input_size": 2, "f1": [0, 1], "f2": [1, 0]}"#);
    for ch in [&unknown, &short, &garbage, &nop] {
        let o = bin(&["region", "--channel", ch]);
        assert_eq!(o.status.code(), Some(2), "{ch}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    }
    let o = bin(&["region", "--channel", &nop, "--p1", "1.5", "--p2", "0.2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = bin(&["example-ff", "--k", "4", "--p1", "0.5", "--p2", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn regions4_lists_eight_regions() {
    let dir = tempfile::tempdir().unwrap();
    let ch = write(dir.path(), "bw.json", BLACKWELL);
    let o = bin(&["regions4", "--channel", &ch, "--lambda-count", "6"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut labels: Vec<&str> = text
        .lines()
        .skip_while(|l| l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    labels.dedup();
    assert_eq!(labels.len(), 8, "{labels:?}");
}
