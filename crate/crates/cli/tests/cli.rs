use std::path::Path;
use std::process::{Command, Output};

use igfv_cli::output::{read_structured_volume, RunManifest};

fn igfv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_igfv")).args(args).output().expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn list_cases_prints_catalog() {
    let o = igfv(&["list-cases"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 19);
    assert!(text.lines().any(|l| l.starts_with("sod ")));
}

#[test]
fn missing_case_is_config_error() {
    let o = igfv(&["run", "--t-end", "0.1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no case"));
}

#[test]
fn cfl_above_limiter_bound_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = igfv(&["run", "--case", "sod", "--cfl", "0.2", "--alpha-mp", "7", "--out", out]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("1/(1+alpha_mp)"), "{}", stderr(&o));
    assert!(!dir.path().join("manifest.json").exists());
}

#[test]
fn unknown_config_key_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "case = sod\nspeed = 3\n").unwrap();
    let o = igfv(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("speed"));
}

#[test]
fn unknown_scheme_rejected() {
    let o = igfv(&["run", "--case", "sod", "--scheme", "weno9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn shock_tube_run_writes_profile_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sod.cfg");
    std::fs::write(&cfg, "case = sod\ncells = 50\nt_end = 0.5\n").unwrap();
    let out = dir.path().join("o");
    let o = igfv(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--t-end",
        "0.05",
        "--out",
        out.to_str().unwrap(),
        "--write-every",
        "5",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let m = RunManifest::read(&out.join("manifest.json")).unwrap();
    assert_eq!(m.case, "sod");
    assert_eq!(m.scheme, "ig4mp");
    assert_eq!(m.dims, vec![50]);
    assert!((m.time - 0.05).abs() < 1e-12);
    assert!(m.outputs.len() >= 2);

    let csv = std::fs::read_to_string(out.join("sod_final.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x,rho,u,v,w,p"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 50);
    assert!(rows.iter().all(|r| r.len() == 6 && r[1] > 0.0 && r[5] > 0.0));
    assert!(rows.windows(2).all(|w| w[1][0] > w[0][0]));
    assert!(out.join("sod_000005.csv").exists());
}

fn check_totals(path: &Path, m: &RunManifest) {
    let vol = read_structured_volume(path).unwrap();
    let rho = vol.scalar("rho").unwrap();
    let dv: f64 = vol.spacing[..2].iter().product();
    let mass: f64 = rho.iter().sum::<f64>() * dv;
    assert!((mass - m.totals_final[0]).abs() <= 1e-10 * mass.abs(), "{mass} vs {}", m.totals_final[0]);
}

#[test]
fn periodic_run_conserves_totals() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o");
    let o = igfv(&[
        "run",
        "--case",
        "ooa_advection",
        "--cells",
        "12x12",
        "--t-end",
        "0.02",
        "--scheme",
        "ig4mp",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let m = RunManifest::read(&out.join("manifest.json")).unwrap();
    assert!(m.steps > 0);
    for (k, d) in m.drift.iter().enumerate() {
        let scale = m.totals_initial[k].abs().max(1.0);
        assert!(d.abs() <= 1e-12 * scale, "variable {k} drifted by {d}");
    }
    check_totals(&out.join("ooa_advection_final.vtk"), &m);
}

#[test]
fn spectra_writes_one_file_per_scheme() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = igfv(&["spectra", "--schemes", "ig4,c5", "--samples", "16", "--out", out]);
    assert!(o.status.success(), "{}", stderr(&o));
    for name in ["ig4", "c5"] {
        let text = std::fs::read_to_string(dir.path().join(format!("spectrum_{name}.csv"))).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("theta,re_k,im_k"));
        assert_eq!(lines.count(), 16);
    }
    let bad = igfv(&["spectra", "--schemes", "nope", "--out", out]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn ooa_prints_table() {
    let o = igfv(&["ooa", "--schemes", "mp5", "--ns", "8,16", "--t-end", "0.05"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.contains("MP5"));
    assert!(text.contains("E-0"));
}
