use std::process::{Command, Output};

use sphqi::harness::read_csv;

fn sphqi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sphqi")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// CSV with the `time_s` column removed.
fn without_time(csv: &str) -> Vec<String> {
    csv.lines().map(|l| l.rsplit_once(',').unwrap().0.to_string()).collect()
}

#[test]
fn converge_writes_one_row_per_n() {
    let o = sphqi(&["converge", "--kernel", "gaussian:K=3", "--target", "f1", "--n", "4,8,16", "--rho-c", "1.0"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "experiment,n,nodes,rho,method,error,rate,time_s");
    assert_eq!(lines.len(), 4);
    assert!(!text.contains('\r'));
    let first: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(first[0], "converge");
    assert_eq!(first[1], "4");
    assert!(lines[1].contains(",,"), "first row has an empty rate");
    assert!(lines[2].starts_with("converge,8,"));
}

#[test]
fn output_is_deterministic_apart_from_time() {
    let args = ["noise", "--n", "4,8", "--trials", "4", "--noise", "0.1,0.5", "--seed", "7"];
    let a = stdout(&sphqi(&args));
    let b = stdout(&sphqi(&args));
    assert_eq!(without_time(&a), without_time(&b));
    let c = stdout(&sphqi(&["noise", "--n", "4,8", "--trials", "4", "--noise", "0.1,0.5", "--seed", "8"]));
    assert_ne!(without_time(&a), without_time(&c));
}

#[test]
fn out_flag_writes_readable_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("conv.csv");
    let o = sphqi(&["converge", "--kernel", "cs:m=2", "--n", "4,8", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let rows = read_csv(&path).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0].method, "qi:cs:m=2");
    assert!(rows[0].rate.is_none() && rows[1].rate.is_some());
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# converge setup\nkernel = poisson:rho=0.5\nn = 4,8\nrho-fixed = true\n").unwrap();
    let o = sphqi(&["converge", "--config", cfg.to_str().unwrap(), "--n", "6"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 2);
    assert!(text.contains("converge,6,"));
    assert!(text.contains("qi:poisson"));
}

#[test]
fn quadcheck_reports_small_residual() {
    let o = sphqi(&["quadcheck", "--n", "24"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let residual: f64 = text.trim().rsplit_once("residual=").unwrap().1.parse().unwrap();
    assert!(residual <= 1e-9, "{text}");
}

#[test]
fn quadcheck_reads_node_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tet.txt");
    let s = 1.0 / 3f64.sqrt();
    let w = std::f64::consts::PI;
    let body: String = [[s, s, s], [s, -s, -s], [-s, s, -s], [-s, -s, s]]
        .iter()
        .map(|p| format!("{} {} {} {}\n", p[0], p[1], p[2], w))
        .collect();
    std::fs::write(&path, body).unwrap();
    let o = sphqi(&["quadcheck", "--n", "1", "--md-nodes", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("nodes=4"));
}

#[test]
fn coeffs_lists_each_degree() {
    let o = sphqi(&["coeffs", "--kernel", "poisson:rho=0.2", "--n", "5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "ell,flc");
    assert_eq!(lines.len(), 7);
    let last: f64 = lines[6].split(',').nth(1).unwrap().parse().unwrap();
    assert!((last - 0.8f64.powi(5)).abs() < 1e-14);
}

#[test]
fn exit_codes() {
    let o = sphqi(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(sphqi(&[]).status.code(), Some(1));
    assert_eq!(sphqi(&["converge", "--kernel", "bessel"]).status.code(), Some(1));
    assert_eq!(sphqi(&["converge", "--target", "f9"]).status.code(), Some(1));
    assert_eq!(sphqi(&["quadcheck", "--md-nodes", "/nonexistent/nodes.txt"]).status.code(), Some(1));
    assert_eq!(sphqi(&["--help"]).status.code(), Some(0));
    let nan = sphqi(&["converge", "--n", "4,8", "--rho-c", "1e-200"]);
    assert_eq!(nan.status.code(), Some(2));
    assert!(nan.stdout.is_empty());
}
