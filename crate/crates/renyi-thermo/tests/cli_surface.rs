//! Integration tests for the CLI surface: configuration validation, report
//! files, and byte-identical reruns.

use clap::Parser;

use renyi_thermo::cli::{run, RunConfig};

fn run_args(args: &[&str]) -> std::result::Result<i32, renyi_thermo::Error> {
    let mut full = vec!["renyi-thermo"];
    full.extend_from_slice(args);
    run(RunConfig::try_parse_from(full).expect("args parse"))
}

#[test]
fn clausius_csv_is_deterministic() {
    let dir = std::env::temp_dir();
    let out_a = dir.join("renyi_thermo_test_clausius_a.csv");
    let out_b = dir.join("renyi_thermo_test_clausius_b.csv");
    for out in [&out_a, &out_b] {
        let code = run_args(&[
            "clausius",
            "--dq",
            "0.001",
            "--out",
            out.to_str().unwrap(),
        ])
        .unwrap();
        assert_eq!(code, 0);
    }
    let a = std::fs::read(&out_a).unwrap();
    let b = std::fs::read(&out_b).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b, "clausius CSV must be byte-identical across reruns");
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("alpha,dS,beta_dQ1,beta_dQ2,beta_dU,dD_trad,dD_sand,dDeltaTildePrime\n"));
    // default grid 0.1..5.0 step 0.1
    assert_eq!(text.lines().count(), 51);
    let _ = std::fs::remove_file(out_a);
    let _ = std::fs::remove_file(out_b);
}

#[test]
fn carnot_csv_reports_efficiency() {
    let out = std::env::temp_dir().join("renyi_thermo_test_carnot.csv");
    let code = run_args(&[
        "carnot",
        "--Th",
        "2",
        "--Tc",
        "1",
        "--alpha",
        "2",
        "--steps",
        "100",
        "--out",
        out.to_str().unwrap(),
    ])
    .unwrap();
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("stroke,dU,heatTotal,heatExcess,heatHousekeeping,workExcess,entropyChange\n"));
    let cycle_row = text
        .lines()
        .find(|l| l.starts_with("cycle,"))
        .expect("cycle summary row");
    let cells: Vec<&str> = cycle_row.split(',').collect();
    let efficiency: f64 = cells[3].parse().unwrap();
    let analytic: f64 = cells[4].parse().unwrap();
    assert!((efficiency - 0.5).abs() <= 1e-6);
    assert_eq!(analytic, 0.5);
    let _ = std::fs::remove_file(out);
}

#[test]
fn thermal_writes_state_file() {
    let out = std::env::temp_dir().join("renyi_thermo_test_state.txt");
    let code = run_args(&[
        "thermal",
        "--H",
        "diag:0,1",
        "--beta",
        "0",
        "--alpha",
        "2",
        "--out",
        out.to_str().unwrap(),
    ])
    .unwrap();
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&out).unwrap();
    let parsed = renyi_thermo::operator::parse_matrix_text(&text).unwrap();
    assert_eq!(parsed[(0, 0)].re, 0.5);
    assert_eq!(parsed[(1, 1)].re, 0.5);
    let _ = std::fs::remove_file(out);
}

#[test]
fn matrix_file_hamiltonian_roundtrip() {
    let path = std::env::temp_dir().join("renyi_thermo_test_h.txt");
    std::fs::write(&path, "0, 0.2+0.1j\n0.2-0.1j, 1\n").unwrap();
    let code = run_args(&[
        "thermal",
        "--H",
        path.to_str().unwrap(),
        "--beta",
        "1",
        "--alpha",
        "2",
    ])
    .unwrap();
    assert_eq!(code, 0);
    let _ = std::fs::remove_file(path);
}

#[test]
fn dpi_reports_zero_violations() {
    let code = run_args(&["dpi", "--seed", "3", "--channels", "10"]).unwrap();
    assert_eq!(code, 0);
}

#[test]
fn invalid_config_is_rejected() {
    assert!(RunConfig::try_parse_from(["renyi-thermo", "thermal", "--beta", "1"]).is_err());
    assert!(run_args(&["dpi", "--dim", "3", "--channels", "1"]).is_err());
}
