use std::process::{Command, Output};

use num_complex::Complex64;
use xdisc::checks::{check_ids, run_all, VerifyReport};
use xdisc::{construct, Family};
use xdisc_core::disc::Disc;
use xdisc_core::domains::{shilov_test, DomainId};
use xdisc_core::extremality::{certify_disc, NodeSet, PickCertificate, DEFAULT_PICK_TOL};
use xdisc_core::matrix2::CMatrix2;

fn xdisc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xdisc"))
        .args(args)
        .env_remove("XDISC_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes() {
    let inside = xdisc(&["check", "--domain", "Disc", "--point", "[[0.5, 0.0]]"]);
    assert_eq!(inside.status.code(), Some(0));
    let outside = xdisc(&["check", "--domain", "Disc", "--point", "[[1.5, 0.0]]"]);
    assert_eq!(outside.status.code(), Some(1));
    let bad_tag = xdisc(&["check", "--domain", "Nowhere", "--point", "[[0.5, 0.0]]"]);
    assert_eq!(bad_tag.status.code(), Some(2));
    let bad_json = xdisc(&["check", "--domain", "Disc", "--point", "[0.5"]);
    assert_eq!(bad_json.status.code(), Some(2));
    let bad_params = xdisc(&["construct", "--family", "ball3", "--params", r#"{"a1": 2.0}"#]);
    assert_eq!(bad_params.status.code(), Some(2));
    assert_eq!(xdisc(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn tiny_tolerance_scale_fails() {
    let o = xdisc(&["verify-paper", "--tol-scale", "1e-20"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().any(|l| l.starts_with("FAIL ")));
}

#[test]
fn reports_are_reproducible() {
    let a = xdisc(&["--seed", "7", "--json", "verify-paper"]);
    let b = xdisc(&["--seed", "7", "--json", "verify-paper"]);
    assert_eq!(a.stdout, b.stdout);
    let report: VerifyReport = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report.seed, 7);
    let ids: Vec<&str> = report.checks.iter().map(|c| c.id.as_str()).collect();
    assert_eq!(ids, check_ids());
}

#[test]
fn seed_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_xdisc"))
        .args(["--json", "verify-paper"])
        .env("XDISC_SEED", "11")
        .output()
        .unwrap();
    let report: VerifyReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report.seed, 11);
    assert_eq!(serde_json::to_value(&report).unwrap(), serde_json::to_value(run_all(11, 1.0)).unwrap());

    let bad = Command::new(env!("CARGO_BIN_EXE_xdisc")).args(["verify-paper"]).env("XDISC_SEED", "x").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn report_written_to_file() {
    let dir = std::env::temp_dir().join(format!("xdisc-report-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = xdisc(&["--seed", "3", "--out", path.to_str().unwrap(), "verify-paper"]);
    assert!(stdout(&o).starts_with("seed 3\n"));
    let report: VerifyReport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report.checks.len(), 11);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn json_round_trips() {
    let f = construct(Family::Ball3, r#"{"a1": 0.4}"#).unwrap();
    let back: Disc = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
    assert_eq!(back, f);

    let m = CMatrix2::new(Complex64::new(0.1, -0.2), Complex64::new(0.3, 0.0), Complex64::new(0.3, 0.0), Complex64::new(-0.4, 0.5));
    let text = serde_json::to_string(&m).unwrap();
    assert_eq!(serde_json::from_str::<CMatrix2>(&text).unwrap(), m);

    let id: Disc = serde_json::from_str(r#"{"components": [{"num": [[0, 0], [1, 0]], "den": [[1, 0]]}], "target": "Disc"}"#).unwrap();
    let nodes = NodeSet::new(vec![Complex64::new(0.1, 0.0), Complex64::new(-0.3, 0.2)]).unwrap();
    let cert = certify_disc(&id, &nodes, DEFAULT_PICK_TOL).unwrap();
    let back: PickCertificate = serde_json::from_str(&serde_json::to_string(&cert).unwrap()).unwrap();
    assert_eq!(back, cert);
}

#[test]
fn construct_then_verify_shape() {
    let o = xdisc(&["construct", "--family", "thlb", "--params", r#"{"b1": {"unimodular": [1, 0], "zeros": []}, "b2": {"unimodular": [1, 0], "zeros": [[0.5, 0]]}}"#]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let disc = stdout(&o);
    let v = xdisc(&["verify-shape", "--disc", &disc]);
    assert_eq!(v.status.code(), Some(0), "{}", String::from_utf8_lossy(&v.stderr));
    let c = xdisc(&["certify", "--disc", &disc, "--nodes", "[[0, 0], [0.3, 0], [-0.2, 0.4]]"]);
    assert_eq!(c.status.code(), Some(0), "{}", String::from_utf8_lossy(&c.stderr));
    let cert: PickCertificate = serde_json::from_slice(&c.stdout).unwrap();
    assert_eq!(cert.verdict, xdisc_core::extremality::Verdict::ExtremallySolvable);
}

fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines().skip(1).map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect()
}

#[test]
fn shilov_trace_lies_on_the_boundary() {
    let o = xdisc(&["trace", "shilov-g2", "--grid", "64"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 4096);
    for r in rows {
        let x = [Complex64::new(r[2], r[3]), Complex64::new(r[4], r[5])];
        assert!(shilov_test(DomainId::SymBidisc, &x, 1e-12).unwrap());
    }
}

#[test]
fn family_orbit_lies_on_the_boundary() {
    let o = xdisc(&[
        "trace",
        "family-orbit",
        "--family",
        "thlb",
        "--params",
        r#"{"b1": {"unimodular": [1, 0], "zeros": []}, "b2": {"unimodular": [1, 0], "zeros": [[0.5, 0]]}}"#,
        "--samples",
        "360",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 360);
    for r in rows {
        let x = [Complex64::new(r[1], r[2]), Complex64::new(r[3], r[4])];
        assert!(shilov_test(DomainId::SymBidisc, &x, 1e-10).unwrap());
    }
}

#[test]
fn empty_trace_is_header_only() {
    let o = xdisc(&["trace", "tetra-boundary", "--grid", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn check_modes() {
    let pt = "[[1.0, 0.0]]";
    assert_eq!(xdisc(&["check", "--domain", "Disc", "--point", pt]).status.code(), Some(1));
    assert_eq!(xdisc(&["check", "--domain", "Disc", "--point", pt, "--closed"]).status.code(), Some(0));
    let royal = "[[0.0, 0.0], [1.0, 0.0]]";
    let o = xdisc(&["check", "--domain", "SymBidisc", "--point", royal, "--shilov"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["member"], true);
    let short = xdisc(&["check", "--domain", "Tetrablock", "--point", royal]);
    assert_eq!(short.status.code(), Some(2));
}
