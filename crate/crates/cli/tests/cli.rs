use std::path::PathBuf;
use std::process::{Command, Output};

fn scenario() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/scenario.toml")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_m2causal"))
        .arg("--scenario")
        .arg(scenario())
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_bare(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_m2causal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value(text: &str, key: &str) -> String {
    let prefix = format!("{key}: ");
    text.lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no {key} in\n{text}"))
        .to_string()
}

fn rows(csv: &str) -> Vec<[f64; 4]> {
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,x,out_t,out_x"));
    lines
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|f| f.parse().unwrap()).collect();
            [v[0], v[1], v[2], v[3]]
        })
        .collect()
}

#[test]
fn eval_identity_reproduces_the_grid() {
    let o = run(&["eval", "id"]);
    assert_eq!(code(&o), 0);
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 25);
    for [t, x, ot, ox] in r {
        assert_eq!((t, x), (ot, ox));
    }
}

#[test]
fn eval_rindler_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let o = run(&["--out", out.to_str().unwrap(), "eval", "mr"]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    for [t, x, ot, ox] in rows(&std::fs::read_to_string(&out).unwrap()) {
        assert!((ot - x.exp() * t.sinh()).abs() < 1e-13);
        assert!((ox - x.exp() * t.cosh()).abs() < 1e-13);
    }
}

#[test]
fn unknown_names_are_invalid_input() {
    let o = run(&["eval", "nope"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown map"));
    assert_eq!(code(&run(&["counterexample", "i0", "ghost"])), 2);
    assert_eq!(code(&run(&["check", "mr", "bogus"])), 2);
}

#[test]
fn loggwave_needs_an_mw_map() {
    assert_eq!(code(&run(&["check", "sc", "loggwave"])), 2);
    let o = run(&["check", "mr", "loggwave"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn wave_check_passes_for_mw_maps() {
    for m in ["mpi", "mr"] {
        let o = run(&["check", m, "wave"]);
        assert_eq!(code(&o), 0, "{}", stdout(&o));
        assert_eq!(value(&stdout(&o), "verdict"), "pass");
    }
}

#[test]
fn conjugated_map_is_not_holomorphic() {
    let o = run(&["check", "cj", "holo"]);
    assert_eq!(code(&o), 1);
    assert_eq!(value(&stdout(&o), "verdict"), "fail");
    assert_eq!(code(&run(&["check", "cj", "antiholo"])), 0);
}

#[test]
fn anisotropic_scale_is_not_conformal() {
    let o = run(&["check", "sc", "conformal"]);
    assert_eq!(code(&o), 1);
    assert_eq!(code(&run(&["check", "mpi", "conformal"])), 0);
}

#[test]
fn causal_suite_passes_for_perturbed_observer() {
    let o = run(&["--pairs", "2000", "causal", "mpi"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = stdout(&o);
    for item in ["chronology_forward", "chronology_inverse", "radar_round_trip", "orientation", "axis_restriction"] {
        assert_eq!(value(&text, item), "pass");
    }
}

#[test]
fn causal_on_rindler_falls_back_with_notice() {
    let o = run(&["--pairs", "2000", "causal", "mr"]);
    let text = stdout(&o);
    assert_eq!(value(&text, "automorphism_suite"), "not applicable");
    assert!(value(&text, "lip_status").starts_with("FailsLip"));
    assert_eq!(code(&o), 0);
}

#[test]
fn causal_on_low_map_reports_witness() {
    let o = run(&["--pairs", "2000", "causal", "low"]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    assert_eq!(value(&text, "chronology"), "violation");
    let f = |k: &str| value(&text, k).parse::<f64>().unwrap();
    // Inputs spacelike, images chronologically ordered.
    let (dt, dx) = (f("z2_t") - f("z1_t"), f("z2_x") - f("z1_x"));
    assert!(dt.abs() < dx.abs());
    let (it, ix) = (f("image2_t") - f("image1_t"), f("image2_x") - f("image1_x"));
    assert!(it.abs() > ix.abs());
}

#[test]
fn propertime_twin_is_consistent() {
    let o = run(&["propertime", "twin", "--a", "a", "--b", "r", "--s0", "-0.5", "--s1", "0.5"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(value(&text, "younger"), "a");
    let tau_b: f64 = value(&text, "tau_b_by_b").parse().unwrap();
    assert!((tau_b - 3f64.ln()).abs() < 1e-9);
}

#[test]
fn propertime_rest_clock_and_dilation() {
    let o = run_bare(&["propertime", "inertial", "--t1", "2.5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(value(&stdout(&o), "tau"), "2.5");

    let o = run_bare(&["propertime", "inertial", "--velocity", "0.6", "--t0", "-1", "--t1", "1"]);
    let tau: f64 = value(&stdout(&o), "tau").parse().unwrap();
    assert!((tau - 1.6).abs() < 1e-12);

    let o = run_bare(&["propertime", "dilation", "--accel", "1", "--x1", "0", "--x2", "1", "--dt", "1"]);
    assert_eq!(code(&o), 0);
    let ratio: f64 = value(&stdout(&o), "ratio").parse().unwrap();
    assert!((ratio - 1f64.exp()).abs() < 1e-12);

    // Superluminal input is a domain error.
    assert_eq!(code(&run_bare(&["propertime", "inertial", "--velocity", "1.5", "--t1", "1"])), 3);
}

#[test]
fn accelerated_needs_a_scenario() {
    assert_eq!(code(&run_bare(&["propertime", "accelerated", "--observer", "r", "--t1", "1"])), 2);
    let o = run(&["propertime", "accelerated", "--observer", "r", "--t1", "1"]);
    assert_eq!(code(&o), 0);
    let tau: f64 = value(&stdout(&o), "tau").parse().unwrap();
    assert!((tau - 1.0).abs() < 1e-9);
}

#[test]
fn counterexample_outcomes() {
    let o = run(&["--pairs", "2000", "counterexample", "i0", "i5"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(value(&stdout(&o), "certified"), "true");

    let o = run(&["--pairs", "2000", "counterexample", "i0", "osc"]);
    assert_eq!(code(&o), 3);
    assert!(o.stdout.is_empty());
}

#[test]
fn validation_failure_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never.csv");
    let o = run(&["--out", out.to_str().unwrap(), "--grid", "n_t=1", "eval", "id"]);
    assert_eq!(code(&o), 2);
    assert!(!out.exists());

    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "[observers.x]\nkind = \"rindler\"\na = 1.0\ncolour = 3\n").unwrap();
    let o = run_bare(&["--scenario", bad.to_str().unwrap(), "--out", out.to_str().unwrap(), "eval", "id"]);
    assert_eq!(code(&o), 2);
    assert!(!out.exists());
}

#[test]
fn grid_overrides_apply() {
    let o = run(&["--grid", "n_t=3", "--grid", "n_x=4", "eval", "id"]);
    assert_eq!(rows(&stdout(&o)).len(), 12);
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        &["--pairs", "1000", "causal", "low"][..],
        &["--pairs", "1000", "--seed", "99", "counterexample", "i0", "i5"][..],
        &["eval", "mpi"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(code(&a), code(&b));
    }
    // Seed on the command line wins over the file.
    let a = stdout(&run(&["--pairs", "1000", "--seed", "99", "causal", "low"]));
    assert_eq!(value(&a, "seed"), "99");
}
