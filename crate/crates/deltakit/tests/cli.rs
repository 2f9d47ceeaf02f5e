//! End-to-end checks of the command-line surface: frozen report lines,
//! byte-determinism, and the exit-code contract.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("fixtures");
    p.push(name);
    p.display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deltakit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_line(output: &Output, needle: &str) -> bool {
    String::from_utf8_lossy(&output.stdout)
        .lines()
        .any(|l| l == needle)
}

#[test]
fn cohomology_of_torus_over_z() {
    let out = run(&[
        "cohomology",
        "--complex",
        &fixture("torus.dcx"),
        "--ring",
        "Z",
        "--degree",
        "1",
    ]);
    assert!(out.status.success());
    assert!(
        stdout_line(&out, "H^1 = Z^2"),
        "got: {}",
        String::from_utf8_lossy(&out.stdout)
    );
    assert!(stdout_line(&out, "status: ok"));
}

#[test]
fn kostant_on_z2_point_names_the_three_groups() {
    let out = run(&[
        "kostant",
        "--complex",
        &fixture("point.dcx"),
        "--group",
        &fixture("z2.grp"),
    ]);
    assert!(out.status.success());
    assert!(stdout_line(&out, "kernel = Z/2"));
    assert!(stdout_line(&out, "curvature_group = 0"));
    assert!(stdout_line(&out, "H2 = Z/2"));
    assert!(stdout_line(&out, "exact: true"));
}

#[test]
fn chern_number_of_unit_flux_sphere() {
    let out = run(&[
        "chern",
        "--complex",
        &fixture("sphere.dcx"),
        "--gauge",
        &fixture("flux1.gau"),
    ]);
    assert!(out.status.success());
    assert!(stdout_line(&out, "chern_number = 1"));
}

#[test]
fn holonomy_around_the_circle() {
    let out = run(&[
        "holonomy",
        "--complex",
        &fixture("circle.dcx"),
        "--gauge",
        &fixture("gauge_third.gau"),
        "--cycle",
        &fixture("fund_cycle.chn"),
    ]);
    assert!(out.status.success());
    assert!(stdout_line(&out, "holonomy = 1/6"));
}

#[test]
fn reports_are_byte_deterministic() {
    let args = [
        "descent-check",
        "--complex",
        &fixture("circle.dcx"),
        "--cover",
        &fixture("circle_arcs.cov"),
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(
        first.stdout, second.stdout,
        "identical invocations must match byte for byte"
    );
    let kostant = ["kostant", "--complex", &fixture("torus.dcx")];
    let a = run(&kostant);
    let b = run(&kostant);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn monopole_exits_with_mathematical_error() {
    let out = run(&[
        "chern",
        "--complex",
        &fixture("tet.dcx"),
        "--gauge",
        &fixture("monopole.gau"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("monopole"), "stderr: {err}");
    assert!(err.contains('T'), "the offending 3-simplex is named: {err}");
}

#[test]
fn malformed_input_exits_with_input_error() {
    // a gauge file naming a simplex absent from this complex
    let out = run(&[
        "chern",
        "--complex",
        &fixture("torus.dcx"),
        "--gauge",
        &fixture("flux1.gau"),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("line 3"),
        "diagnostics carry line numbers: {err}"
    );

    let missing = run(&[
        "cohomology",
        "--complex",
        "/nonexistent.dcx",
        "--ring",
        "Z",
        "--degree",
        "0",
    ]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn equivariant_and_dc_cohomology_lines() {
    let out = run(&[
        "equivariant",
        "--complex",
        &fixture("point.dcx"),
        "--group",
        &fixture("z2.grp"),
        "--degree",
        "2",
    ]);
    assert!(out.status.success());
    assert!(stdout_line(&out, "H^2_tot(Z) = Z/2"));

    let out = run(&[
        "dc-cohomology",
        "--complex",
        &fixture("circle.dcx"),
        "--s",
        "2",
        "--degree",
        "2",
    ]);
    assert!(out.status.success());
    assert!(stdout_line(&out, "H^2(s=2) = (Q/Z)^1"));

    let out = run(&[
        "preq",
        "--complex",
        &fixture("circle.dcx"),
        "--dc",
        &fixture("flat_half.dct"),
    ]);
    assert!(out.status.success());
    assert!(stdout_line(&out, "e01 = 1/2"));

    let out = run(&["weil", "--complex", &fixture("rp2.dcx")]);
    assert!(out.status.success());
    assert!(stdout_line(&out, "H^2(Z) = Z/2"));
    assert!(stdout_line(&out, "H^2(DC_1) = Z/2"));

    let out = run(&[
        "weil",
        "--complex",
        &fixture("sphere.dcx"),
        "--cocycle",
        &fixture("unit_class.coch"),
    ]);
    assert!(out.status.success());
    assert!(stdout_line(&out, "project_lift_identity: true"));
}
