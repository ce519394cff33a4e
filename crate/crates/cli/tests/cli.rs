use std::fs;
use std::process::Command;

use rhlab::harmonics::{e2_to_spectral, SpectralField};
use rhlab::lab::Report;
use rhlab::rotations::rotate_polar;
use rhlab::E2Coeffs;

fn rhlab() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rhlab"))
}

const SMALL: &[&str] = &["--set", "L=8", "--set", "dt=0.002", "--set", "diag_every=25"];

#[test]
fn rh_verify_writes_csv_and_snapshot() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("rh.cfg");
    fs::write(&cfg, "# short run\nt_end=0.2\nseed=9\nY=0.5,0.3,0.1,0.2,0.1\n").unwrap();
    let csv = dir.path().join("out.csv");
    let snap = dir.path().join("final.txt");
    let out = rhlab()
        .arg("rh-verify")
        .arg("--config")
        .arg(&cfg)
        .args(SMALL)
        .arg("--output")
        .arg(&csv)
        .arg("--snapshot")
        .arg(&snap)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rep = Report::from_csv(&fs::read_to_string(&csv).unwrap()).unwrap();
    assert!(rep.comments.iter().any(|c| c == "seed=9"));
    assert!(rep.comments.iter().any(|c| c == "config L=8"));
    assert_eq!(rep.columns, ["t", "rel_l2_error"]);
    assert!(rep.passed());
    let z = SpectralField::from_text(&fs::read_to_string(&snap).unwrap()).unwrap();
    assert_eq!(z.l(), 8);
}

#[test]
fn failing_assertion_sets_exit_code() {
    let out = rhlab()
        .arg("rh-verify")
        .args(SMALL)
        .args(["--set", "t_end=0.2", "--set", "dt=0.05", "--set", "tolerance=1e-30"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL rh_max_error"));
}

#[test]
fn stability_precondition_is_an_error() {
    let out = rhlab()
        .args(["stability", "--group", "polar", "--set", "alpha=0"])
        .args(SMALL)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("alpha"));
}

#[test]
fn bad_override_is_an_error() {
    let out = rhlab().args(["traversal", "--set", "bogus=1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invariants_row() {
    let out = rhlab()
        .args(["invariants", "--alpha", "1.2", "--y", "0.5,0.3,0.1,0.2,0.1"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "a,u,v,w,p1,p0,I2,I3,I4,I5,I6,I7");
    let row: Vec<f64> = lines.next().unwrap().split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(row.len(), 12);
    assert_eq!(row[0], 0.5);
    assert!((row[1] - 0.1).abs() < 1e-15);
}

#[test]
fn classify_reports_orbits() {
    let out = rhlab()
        .args(["classify", "--y", "0.5,0.3,0.1,0.2,0.1", "--other", "0.5,-0.3,0.1,0.2,-0.1"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("same_h_orbit=true"));
    assert!(text.contains("same_o3_orbit=true"));
    let out = rhlab().args(["classify", "--y", "0.2,0.3,-0.1", "--other", "0.3,0.3,-0.1"]).output().unwrap();
    assert!(String::from_utf8(out.stdout).unwrap().contains("same_h_orbit=false"));
}

#[test]
fn orbit_dist_finds_rotated_member() {
    let dir = tempfile::tempdir().unwrap();
    let t = e2_to_spectral(&E2Coeffs { a: 0.5, b: 0.3, c: 0.1, d: 0.2, e: 0.1 }, 4);
    let f = rotate_polar(&t, 1.1);
    let (fp, tp) = (dir.path().join("f.txt"), dir.path().join("t.txt"));
    fs::write(&fp, f.to_text()).unwrap();
    fs::write(&tp, t.to_text()).unwrap();
    for group in ["polar", "so3"] {
        let out = rhlab()
            .args(["orbit-dist", "--group", group, "--field"])
            .arg(&fp)
            .arg("--target")
            .arg(&tp)
            .output()
            .unwrap();
        assert!(out.status.success());
        let text = String::from_utf8(out.stdout).unwrap();
        let d: f64 = text.lines().nth(1).unwrap().split(',').next().unwrap().parse().unwrap();
        assert!(d < 1e-8, "{group}: {d}");
    }
}
