//! Behavior of the command-line interface: parametrizations, output
//! formats, exit codes and the CSV contract.

use std::path::Path;
use std::process::{Command, Output};

fn gaussent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gaussent"))
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).unwrap()
}

#[test]
fn measure_json_round_trips_through_physical_parametrization() {
    let a = gaussent(&[
        "measure", "--lambda", "0.6", "--va", "0.2", "--vb", "0.1", "--json",
    ]);
    assert_eq!(code(&a), 0);
    let ja = json(&a);

    let (r, na, nb) = (
        ja["r"].as_f64().unwrap(),
        ja["n_a"].as_f64().unwrap(),
        ja["n_b"].as_f64().unwrap(),
    );
    let b = gaussent(&[
        "measure",
        "--r",
        &format!("{r:.17e}"),
        "--na",
        &format!("{na:.17e}"),
        "--nb",
        &format!("{nb:.17e}"),
        "--json",
    ]);
    assert_eq!(code(&b), 0);
    let jb = json(&b);
    for field in ["entropy", "e_g", "r_g", "e_ur", "i_a", "i_b"] {
        let (x, y) = (ja[field].as_f64().unwrap(), jb[field].as_f64().unwrap());
        assert!(
            (x - y).abs() <= 1e-12 * x.abs().max(1.0),
            "{field}: {x} vs {y}"
        );
    }
    assert_eq!(ja["log_base"], "2");
}

#[test]
fn measure_requires_exactly_one_parametrization() {
    assert_eq!(code(&gaussent(&["measure"])), 2);
    assert_eq!(
        code(&gaussent(&[
            "measure", "--lambda", "0.5", "--va", "0.1", "--vb", "0.1", "--na", "1.0"
        ])),
        2
    );
    let out = gaussent(&["measure", "--lambda", "1.0", "--va", "0.5", "--vb", "0.5"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("lambda"), "stderr should name the field: {err}");
}

#[test]
fn measure_separable_state_zeroes_entanglement() {
    let out = gaussent(&["measure", "--lambda", "0.3", "--va", "0.9", "--vb", "0.9", "--json"]);
    assert_eq!(code(&out), 0);
    let j = json(&out);
    assert_eq!(j["separable"], true);
    assert_eq!(j["e_g"].as_f64().unwrap(), 0.0);
    assert_eq!(j["e_ur"].as_f64().unwrap(), 0.0);
    assert_eq!(j["eur_diagnostics"]["short_circuit"], true);
}

#[test]
fn measure_thermal_product_in_physical_parametrization() {
    let out = gaussent(&["measure", "--r", "0", "--na", "1", "--nb", "1", "--json"]);
    assert_eq!(code(&out), 0);
    let j = json(&out);
    assert!((j["entropy"].as_f64().unwrap() - 4.0).abs() < 1e-12);
    for f in ["e_g", "e_ur", "i_a", "i_b", "r_g"] {
        assert_eq!(j[f].as_f64().unwrap(), 0.0, "{f}");
    }
}

#[test]
fn measure_natural_log_base() {
    let out = gaussent(&[
        "--log-base", "e", "measure", "--lambda", "0.6", "--va", "0", "--vb", "0", "--json",
    ]);
    assert_eq!(code(&out), 0);
    let j = json(&out);
    assert!((j["e_g"].as_f64().unwrap() - 1.020965929365159).abs() < 1e-12);
    assert_eq!(j["log_base"], "e");
}

fn read_rows(path: &Path) -> Vec<Vec<String>> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn sweep_degenerate_spec_yields_identical_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("deg.csv");
    let out = gaussent(&[
        "sweep", "--lambda", "0.5", "--ratio", "1.0", "--na-min", "0.7", "--na-max", "0.7",
        "--steps", "2", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let rows = read_rows(&path);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0], rows[1]);
}

#[test]
fn sweep_header_and_inequality_chain() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("chain.csv");
    let out = gaussent(&[
        "sweep", "--lambda", "0.8", "--ratio", "0.5", "--na-min", "0.05", "--na-max", "3.0",
        "--steps", "25", "--spacing", "log", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# gaussent"));
    assert_eq!(
        lines.next().unwrap(),
        "n_a,n_b,lambda,v_a,v_b,separable,entropy,e_g,r_g,e_ur,i_a,i_b,converged"
    );
    let mut prev_na = f64::NEG_INFINITY;
    for row in read_rows(&path) {
        let na: f64 = row[0].parse().unwrap();
        assert!(na > prev_na, "rows must ascend in n_a");
        prev_na = na;
        let e_ur: f64 = row[9].parse().unwrap();
        let i_a: f64 = row[10].parse().unwrap();
        let i_b: f64 = row[11].parse().unwrap();
        let converged = row[12] == "true";
        assert!(!converged || e_ur >= i_a.max(i_b) - 1e-6, "row {row:?}");
    }
}

#[test]
fn sweep_fig1_writes_four_monotone_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = gaussent(&["sweep", "--fig", "1", "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    for ratio in ["0.5", "1", "1.5", "2"] {
        let path = dir.path().join(format!("fig1_ratio_{ratio}.csv"));
        assert!(path.exists(), "{}", path.display());
        // e_g decreases strictly with n_a while the state stays entangled;
        // the large-n_a tail may cross the separability boundary and zero out
        let rows = read_rows(&path);
        assert!(rows[0][7].parse::<f64>().unwrap() > 0.0);
        let mut prev = f64::INFINITY;
        for row in rows {
            let e_g: f64 = row[7].parse().unwrap();
            assert!(
                e_g < prev || (e_g == 0.0 && prev == 0.0),
                "e_g not decreasing: {e_g} after {prev}"
            );
            let separable = row[5] == "true";
            assert_eq!(e_g == 0.0, separable, "zero GEoF iff separable");
            prev = e_g;
        }
    }
}

#[test]
fn sweep_rejects_bad_specs_and_paths() {
    // invalid spec: steps < 2
    let out = gaussent(&[
        "sweep", "--lambda", "0.5", "--ratio", "1.0", "--na-min", "0.1", "--na-max", "1.0",
        "--steps", "1", "--out", "/tmp/x.csv",
    ]);
    assert_eq!(code(&out), 2);
    // log spacing from zero
    let out = gaussent(&[
        "sweep", "--lambda", "0.5", "--ratio", "1.0", "--na-min", "0", "--na-max", "1.0",
        "--steps", "3", "--spacing", "log", "--out", "/tmp/x.csv",
    ]);
    assert_eq!(code(&out), 2);
    // unwritable output path
    let out = gaussent(&[
        "sweep", "--lambda", "0.5", "--ratio", "1.0", "--na-min", "0.1", "--na-max", "1.0",
        "--steps", "3", "--out", "/nonexistent-dir/x.csv",
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn verify_single_state_passes() {
    let out = gaussent(&["verify", "--state", "0.6,0.2,0.1"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("verification: PASS"));
}

#[test]
fn verify_scope_beyond_caps_needs_slow() {
    let out = gaussent(&["verify", "--lambda-max", "0.9"]);
    assert_eq!(code(&out), 2);
    let out = gaussent(&["verify", "--state", "0.9,0.1,0.1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_small_dim_trips_truncation_budget() {
    let out = gaussent(&["verify", "--dim", "10", "--state", "0.7,0.3,0.3"]);
    assert_eq!(code(&out), 4);
    assert!(stdout(&out).contains("truncation budget"));
}
