//! End-to-end runs of the binary: spawn it, capture output, parse tables.

use std::path::Path;
use std::process::Command;

fn run(args: &[&str]) -> (Option<i32>, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_semidens"))
        .args(args)
        .output()
        .expect("binary should spawn");
    (
        out.status.code(),
        String::from_utf8(out.stdout).expect("stdout is text"),
        String::from_utf8(out.stderr).expect("stderr is text"),
    )
}

/// CSV body as (header, rows), comments stripped.
fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header: Vec<String> = lines
        .next()
        .expect("csv has a header")
        .split(',')
        .map(|s| s.to_string())
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(|c| c.parse().expect("numeric cell")).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<f64>], name: &str) -> Vec<f64> {
    let k = header.iter().position(|h| h == name).expect("column exists");
    rows.iter().map(|r| r[k]).collect()
}

const MORSE: &[&str] = &["--potential", "morse", "--params", "D=15,a=0.25"];

#[test]
fn morse_spectrum_tracks_the_closed_form() {
    let (code, stdout, _) = run(&[&["spectrum"], MORSE, &["--n", "21"]].concat());
    assert_eq!(code, Some(0));
    let (header, rows) = parse_csv(&stdout);
    assert_eq!(header, ["j", "e_wkb", "e_exact", "delta_e"]);
    assert_eq!(rows.len(), 21);
    for row in &rows {
        let rel = (row[3] / row[2]).abs();
        assert!(rel < 1e-8, "j = {}: relative gap {rel:.2e}", row[0]);
    }
}

#[test]
fn harmonic_spectrum_is_half_integers() {
    let (code, stdout, _) =
        run(&["spectrum", "--potential", "harmonic", "--params", "k=1", "--n", "5"]);
    assert_eq!(code, Some(0));
    let (header, rows) = parse_csv(&stdout);
    assert_eq!(rows.len(), 5);
    for row in &rows {
        assert!((row[1] - (row[0] + 0.5)).abs() < 1e-10, "j = {}", row[0]);
    }
    let e = column(&header, &rows, "e_exact");
    assert_eq!(e, [0.5, 1.5, 2.5, 3.5, 4.5]);
}

#[test]
fn missing_params_fail_usage() {
    let (code, _, stderr) = run(&["spectrum", "--potential", "morse", "--n", "5"]);
    assert_eq!(code, Some(2));
    assert!(stderr.contains("requires parameter"), "stderr: {stderr}");

    let (code, _, stderr) = run(&["spectrum", "--n", "5"]);
    assert_eq!(code, Some(2));
    assert!(stderr.contains("--potential"), "stderr: {stderr}");

    // A clap-level usage error: unknown flag.
    let (code, _, _) = run(&["spectrum", "--wat"]);
    assert_eq!(code, Some(2));
}

#[test]
fn overfilling_the_well_exits_with_the_capacity_code() {
    let (code, _, stderr) = run(&[&["density"], MORSE, &["--n", "25"]].concat());
    assert_eq!(code, Some(4));
    assert!(stderr.contains("capacity"), "stderr: {stderr}");

    // 22 levels exist but only 21 particles fit; the level listing allows
    // the former.
    let (code, _, _) = run(&[&["spectrum"], MORSE, &["--n", "22"]].concat());
    assert_eq!(code, Some(0));
    let (code, _, _) = run(&[&["spectrum"], MORSE, &["--n", "23"]].concat());
    assert_eq!(code, Some(4));
}

#[test]
fn reruns_are_byte_identical() {
    let args = [&["density"], MORSE, &["--n", "2"]].concat();
    let (code_a, out_a, _) = run(&args);
    let (code_b, out_b, _) = run(&args);
    assert_eq!(code_a, Some(0));
    assert_eq!(code_b, Some(0));
    assert_eq!(out_a, out_b);
}

#[test]
fn json_carries_the_same_payload_as_csv() {
    let base = [&["density"], MORSE, &["--n", "2", "--methods", "tf,uniform"]].concat();
    let (_, csv_text, _) = run(&base);
    let (code, json_text, _) = run(&[&base, &["--format", "json"] as &[&str]].concat());
    assert_eq!(code, Some(0));

    let doc: serde_json::Value = serde_json::from_str(&json_text).expect("valid json");
    let cols: Vec<&str> =
        doc["columns"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(cols, ["x", "tf", "uniform"]);
    let json_rows = doc["rows"].as_array().unwrap();
    let (header, csv_rows) = parse_csv(&csv_text);
    assert_eq!(header, cols);
    assert_eq!(json_rows.len(), csv_rows.len());
    for (jr, cr) in json_rows.iter().zip(csv_rows.iter()) {
        for (jc, cc) in jr.as_array().unwrap().iter().zip(cr.iter()) {
            // CSV prints 17 significant digits, so both channels carry the
            // exact same doubles.
            assert_eq!(jc.as_f64().unwrap(), *cc);
        }
    }
}

#[test]
fn harmonic_ground_state_density_is_supported_inside_sqrt2() {
    let (code, stdout, _) = run(&[
        "density", "--potential", "harmonic", "--params", "k=1", "--n", "1", "--methods", "tf",
        "--grid", "-2,2,401",
    ]);
    assert_eq!(code, Some(0));
    let (header, rows) = parse_csv(&stdout);
    let xs = column(&header, &rows, "x");
    let tf = column(&header, &rows, "tf");
    let r = 2f64.sqrt();
    for (&x, &v) in xs.iter().zip(tf.iter()) {
        if x.abs() < r - 0.01 {
            assert!(v > 0.0, "tf vanished inside the well at x = {x}");
        }
        if x.abs() > r + 0.01 {
            assert_eq!(v, 0.0, "tf leaked outside the well at x = {x}");
        }
    }
}

#[test]
fn observable_override_matches_the_ked_subcommand() {
    let tail = [MORSE, &["--n", "2", "--methods", "tf,uniform"] as &[&str]].concat();
    let (code_a, via_override, _) =
        run(&[&["density"] as &[&str], &tail, &["--observable", "ked"]].concat());
    let (code_b, via_subcommand, _) = run(&[&["ked"] as &[&str], &tail].concat());
    assert_eq!(code_a, Some(0));
    assert_eq!(code_b, Some(0));
    assert_eq!(via_override, via_subcommand);
    assert!(via_override.contains("# observable = ked"));
}

#[test]
fn density_only_methods_reject_the_kinetic_observable() {
    let (code, _, stderr) = run(&[
        &["density"],
        MORSE,
        &["--n", "2", "--methods", "local_functional"],
    ]
    .concat());
    assert_eq!(code, Some(2), "stderr: {stderr}");
}

#[test]
fn tabulated_potentials_run_through_the_grid_reference() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("well.dat");
    let mut text = String::from("# x   v(x)\n");
    for i in 0..=160 {
        let x = -8.0 + i as f64 * 0.1;
        text.push_str(&format!("{x} {}\n", 0.5 * x * x));
    }
    std::fs::write(&path, text).unwrap();

    let (code, stdout, stderr) =
        run(&["spectrum", "--table", path.to_str().unwrap(), "--n", "2"]);
    assert_eq!(code, Some(0), "stderr: {stderr}");
    assert!(stdout.contains("# reference = grid_oracle"));
    let (header, rows) = parse_csv(&stdout);
    let exact = column(&header, &rows, "e_exact");
    // Spline interpolation of the sampled well costs a few parts in 1e4.
    assert!((exact[0] - 0.5).abs() < 1e-2, "E0 = {}", exact[0]);
    assert!((exact[1] - 1.5).abs() < 1e-2, "E1 = {}", exact[1]);
}

#[test]
fn scan_reports_the_error_hierarchy() {
    let (code, stdout, stderr) =
        run(&[&["scan"], MORSE, &["--scan", "2..3"]].concat());
    assert_eq!(code, Some(0), "stderr: {stderr}");
    let (header, rows) = parse_csv(&stdout);
    assert_eq!(
        header,
        ["n", "eta_tf", "eta_uniform", "eta_t_tf", "eta_t_uniform", "eta_t_local", "near_capacity"]
    );
    assert_eq!(rows.len(), 2);
    for row in &rows {
        let (eta_tf, eta_uniform) = (row[1], row[2]);
        assert!(
            eta_uniform < eta_tf / 5.0,
            "N = {}: uniform {eta_uniform:.3e} vs tf {eta_tf:.3e}",
            row[0]
        );
        assert!(row[4] < row[3], "kinetic error should drop too");
        assert_eq!(row[6], 0.0, "far from capacity");
    }
}

#[test]
fn out_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("levels.csv");
    let (code, stdout, _) = run(&[
        "spectrum", "--potential", "harmonic", "--params", "k=2", "--n", "3", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, Some(0));
    assert!(stdout.is_empty());
    let written = std::fs::read_to_string(Path::new(&path)).unwrap();
    assert!(written.starts_with("# potential = harmonic(k=2)"));
    assert_eq!(parse_csv(&written).1.len(), 3);
}
