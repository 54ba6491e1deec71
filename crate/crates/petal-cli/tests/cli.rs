//! End-to-end checks of the binary: exit codes, determinism, and the
//! bit-exact output formats.

use std::process::{Command, Output};

fn petal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_petal"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn verify_passes_and_exits_zero() {
    let out = petal(&["verify", "--csv"]);
    assert!(out.status.success(), "verify exited {:?}", out.status);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# petal verify"));
    assert!(text.lines().count() >= 9, "one row per check plus header");
    assert!(
        text.lines().skip(2).all(|l| l.ends_with(",true")),
        "all checks pass"
    );
}

#[test]
fn verify_json_shape() {
    let out = petal(&["verify", "--json"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.trim_start().starts_with('{') && text.trim_end().ends_with('}'));
    assert!(text.contains("\"name\":\"ellipse_minima\""));
    assert!(text.contains("\"pass\":true"));
}

#[test]
fn identical_argv_gives_identical_bytes() {
    let args = [
        "render",
        "--m",
        "2",
        "--alpha",
        "golden",
        "--res",
        "48",
        "--max-iter",
        "120",
    ];
    let a = petal(&args);
    let b = petal(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "PGM bytes must be reproducible");

    let args = ["cf", "--alpha", "golden", "--depth", "12"];
    let a = petal(&args);
    let b = petal(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn render_pgm_format() {
    let out = petal(&[
        "render",
        "--m",
        "2",
        "--alpha",
        "0",
        "--res",
        "64",
        "--max-iter",
        "200",
    ]);
    assert!(out.status.success());
    let bytes = out.stdout;
    assert!(bytes.starts_with(b"P5\n"));
    // header: magic, config comment, dims, maxval, then exactly res² bytes
    let header_end = {
        let mut newlines = 0;
        bytes
            .iter()
            .position(|&b| {
                if b == b'\n' {
                    newlines += 1;
                }
                newlines == 4
            })
            .unwrap()
            + 1
    };
    let header = String::from_utf8_lossy(&bytes[..header_end]);
    assert!(header.contains("64 64") && header.contains("255"));
    let pixels = &bytes[header_end..];
    assert_eq!(pixels.len(), 64 * 64);
    assert!(pixels.iter().all(|&p| p == 0 || p == 255));
    // pixel containing the fixed point is bounded, corners escaped
    assert_eq!(pixels[32 * 64 + 32], 255);
    assert_eq!(pixels[0], 0);
    assert_eq!(pixels[64 * 64 - 1], 0);
}

#[test]
fn cf_golden_gives_fibonacci() {
    let out = petal(&["cf", "--alpha", "golden", "--depth", "8"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let q: Vec<&str> = text
        .lines()
        .skip(2)
        .map(|l| l.split(',').nth(3).unwrap())
        .collect();
    assert_eq!(q, ["1", "1", "2", "3", "5", "8", "13", "21", "34"]);
}

#[test]
fn cf_exact_alpha_parses() {
    // cf:[0,2,3] = 3/7 round-trips through the expansion
    let out = petal(&["cf", "--alpha", "cf:[0,2,3]", "--depth", "6"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("terminated=true"));
    let entries: Vec<&str> = text
        .lines()
        .skip(2)
        .map(|l| l.split(',').nth(1).unwrap())
        .collect();
    assert_eq!(entries, ["0", "2", "3"]);
}

#[test]
fn area_emits_refinement_rows() {
    let out = petal(&[
        "area",
        "--m",
        "2",
        "--alpha",
        "golden",
        "--res",
        "32",
        "--max-iter",
        "80",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(2).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].contains(",32,") && rows[1].contains(",64,"));
}

#[test]
fn explode_reports_small_residuals() {
    let out = petal(&[
        "explode",
        "--m",
        "2",
        "--p",
        "1",
        "--q",
        "2",
        "--delta",
        "0.05",
        "--directions",
        "4",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().skip(2) {
        let residual: f64 = line.split(',').nth(5).unwrap().parse().unwrap();
        assert!(residual < 1e-10, "{line}");
    }
}

#[test]
fn usage_errors_exit_two() {
    let out = petal(&["render", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
    let out = petal(&["cf", "--alpha", "not-a-number"]);
    assert_eq!(out.status.code(), Some(2));
    let out = petal(&["render", "--m", "1"]);
    assert_eq!(out.status.code(), Some(2));
}
