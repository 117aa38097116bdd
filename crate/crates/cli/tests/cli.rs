use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_curvkepler"));
    c.env_remove("CURVKEPLER_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn column(csv: &str, name: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = header.iter().position(|h| *h == name).unwrap();
    lines
        .filter_map(|l| l.split(',').nth(idx).and_then(|v| v.parse().ok()))
        .collect()
}

const CIRCULAR: &str = "1,1.5707963267948966,0,0,0,1";

#[test]
fn full_suite_on_the_sphere_passes() {
    let o = run(&["verify", "--suite", "all", "--preset", "spherical", "--samples", "100", "--seed", "7"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["passed"], true);
    assert_eq!(v["reports"].as_array().unwrap().len(), 4);
    assert!(v["max_residual"].as_f64().unwrap() < 1e-8);
}

#[test]
fn classical_limit_and_degenerate_signature() {
    assert_eq!(code(&run(&["verify", "--suite", "sl2z", "--z", "0"])), 0);
    let o = run(&["verify", "--suite", "so4", "--z", "0.5", "--kappa2", "0"]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
    assert_eq!(code(&run(&["verify", "--suite", "bogus", "--z", "0"])), 2);
    assert_eq!(code(&run(&["verify", "--suite", "all"])), 2);
}

#[test]
fn perturbation_is_flagged_by_every_suite() {
    for suite in ["sl2z", "casimirs", "so4", "lrl"] {
        let o = run(&["verify", "--suite", suite, "--z", "0.5", "--perturb", "1.01", "--samples", "50"]);
        assert_eq!(code(&o), 1, "{suite}");
        assert!(json(&o)["max_residual"].as_f64().unwrap() > 1e-3, "{suite}");
    }
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["verify", "--suite", "lrl", "--preset", "desitter", "--samples", "20", "--seed", "3"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let sim = ["simulate", "--family", "kepler-nc", "--z", "0.3", "--state", "0.9,1.1,0.4,0.1,0.2,0.6", "--t-end", "2"];
    let (a, b) = (run(&sim), run(&sim));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stderr, b.stderr);
}

#[test]
fn seed_falls_back_to_environment() {
    let args = ["verify", "--suite", "sl2z", "--z", "0.2", "--samples", "5"];
    let flag = json(&run(&[&args[..], &["--seed", "11"]].concat()));
    let env = json(&bin().args(args).env("CURVKEPLER_SEED", "11").output().unwrap());
    assert_eq!(flag, env);
    let both = json(
        &bin()
            .args([&args[..], &["--seed", "4"]].concat())
            .env("CURVKEPLER_SEED", "11")
            .output()
            .unwrap(),
    );
    assert_eq!(both["seed"], 4);
    let bad = bin().args(args).env("CURVKEPLER_SEED", "abc").output().unwrap();
    assert_eq!(code(&bad), 2);
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "preset = \"hyperbolic\"\nsuite = \"so4\"\nsamples = 12\nseed = 9\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let v = json(&run(&["verify", "--config", cfg]));
    assert_eq!(v["suite"], "so4");
    assert_eq!(v["samples"], 12);
    assert_eq!(v["seed"], 9);
    assert_eq!(v["params"]["z"], -1.0);
    let v = json(&run(&["verify", "--config", cfg, "--z", "0.25", "--samples", "3"]));
    assert_eq!(v["params"]["z"], 0.25);
    assert_eq!(v["params"]["kappa2"], 1.0);
    assert_eq!(v["samples"], 3);

    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "zeta = 1\n").unwrap();
    assert_eq!(code(&run(&["verify", "--config", bad.to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["verify", "--config", "/nonexistent/run.toml"])), 2);
}

#[test]
fn euclidean_circular_orbit_conserves_everything() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("orbit.csv");
    let o = run(&[
        "simulate", "--family", "kepler-cc", "--preset", "euclidean", "--state", CIRCULAR, "--t-end",
        "6.283185307179586", "-o", csv.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let summary = json(&o);
    assert_eq!(summary["schema"], 1);
    assert_eq!(summary["termination"]["status"], "completed");
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("t,r,theta,phi,p_r,p_theta,p_phi,H,C2,C2mid,C3,L1,L2,L3\n"));
    let h = column(&text, "H");
    let worst = h.iter().map(|v| (v - h[0]).abs() / h[0].abs().max(1.0)).fold(0.0, f64::max);
    assert!(worst < 1e-9, "{worst}");
    for d in summary["drift"].as_array().unwrap() {
        assert!(d["max_drift"].as_f64().unwrap() < 1e-9, "{d}");
    }
}

#[test]
fn radial_plunge_on_the_sphere_stops_at_the_pole() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("plunge.csv");
    let summary = dir.path().join("plunge.json");
    let o = run(&[
        "simulate", "--family", "kepler-cc", "--preset", "spherical", "--state", "1,1.2,0,-0.2,0,0", "--t-end", "10",
        "-o", csv.to_str().unwrap(), "--summary", summary.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("stopped at t ="));
    let s: Value = serde_json::from_str(&std::fs::read_to_string(&summary).unwrap()).unwrap();
    assert_eq!(s["termination"]["status"], "singularity");
    let t = column(&std::fs::read_to_string(&csv).unwrap(), "t");
    assert!(t.len() > 2 && *t.last().unwrap() < 10.0);
}

#[test]
fn zero_length_run_writes_one_row() {
    let o = run(&["simulate", "--family", "kepler-cc", "--preset", "euclidean", "--state", CIRCULAR, "--t-end", "0"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
    let summary: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(summary["samples"], 1);
}

#[test]
fn beltrami_states_are_moved_to_the_polar_chart() {
    let o = run(&[
        "simulate", "--family", "free-nc", "--z", "0.4", "--state", "0.5,0.6,0.7,0.1,-0.2,0.3", "--state-chart",
        "beltrami", "--t-end", "1", "--monitors", "none",
    ]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("t,rho,theta,phi,p_rho,p_theta,p_phi,H\n"));
}

#[test]
fn simulate_rejects_bad_input() {
    let base = ["simulate", "--family", "kepler-cc", "--preset", "euclidean"];
    assert_eq!(code(&run(&[&base[..], &["--state", "1,2,3"]].concat())), 2);
    assert_eq!(code(&run(&[&base[..], &["--state", "0,1.5,0,0,0,1"]].concat())), 2);
    assert_eq!(code(&run(&[&base[..], &["--state", CIRCULAR, "--rel-tol", "0"]].concat())), 2);
    assert_eq!(code(&run(&[&base[..], &["--state", CIRCULAR, "--method", "midpoint"]].concat())), 2);
    assert_eq!(code(&run(&["simulate", "--preset", "euclidean", "--state", CIRCULAR])), 2);
}

#[test]
fn midpoint_method_runs() {
    let o = run(&[
        "simulate", "--family", "kepler-cc", "--preset", "euclidean", "--state", CIRCULAR, "--t-end", "1", "--method",
        "midpoint", "--step", "0.01",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(column(&String::from_utf8(o.stdout).unwrap(), "t").len(), 101);
}

fn scan(args: &[&str]) -> (i32, String) {
    let o = run(&[&["curvature"], args].concat());
    (code(&o), String::from_utf8(o.stdout).unwrap())
}

#[test]
fn constant_curvature_grid_reports_six_z() {
    let (c, text) = scan(&["--kind", "cc", "--z", "0.5"]);
    assert_eq!(c, 0);
    let k = column(&text, "K");
    assert_eq!(k.len(), 125);
    assert!(k.iter().all(|v| (v - 3.0).abs() < 1e-4));
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("max_abs_diff,"));
    let d: f64 = last.rsplit(',').next().unwrap().parse().unwrap();
    assert!(d < 1e-4);
}

#[test]
fn flat_and_near_origin_grids() {
    let (_, text) = scan(&["--kind", "nc", "--z", "0", "--n", "3"]);
    assert!(column(&text, "K").iter().all(|v| v.abs() < 1e-6));
    let (_, text) = scan(&["--kind", "nc", "--z", "0.8", "--lo", "0.01,0.01,0.01", "--hi", "0.05,0.05,0.05", "--n", "3"]);
    let rows = column(&text, "x1").len().min(column(&text, "K").len());
    let (x1, x2, x3, k) = (column(&text, "x1"), column(&text, "x2"), column(&text, "x3"), column(&text, "K"));
    for i in 0..rows {
        let q2 = x1[i] * x1[i] + x2[i] * x2[i] + x3[i] * x3[i];
        assert!((k[i] + 5.0 * 0.8 * (0.8 * q2).sinh()).abs() < 1e-6, "row {i}");
    }
    let (_, text) = scan(&["--kind", "nc", "--chart", "pv", "--z", "-0.5", "--n", "3"]);
    assert!(column(&text, "abs_diff").iter().all(|v| *v < 1e-4));
}

#[test]
fn singular_grid_is_rejected() {
    let (c, _) = scan(&["--kind", "cc", "--chart", "pc", "--z", "0.5", "--lo", "0,0.5,0.5", "--hi", "1,1,1", "--n", "2"]);
    assert_eq!(c, 2);
    let (c, _) = scan(&["--kind", "cc", "--z", "0.5", "--lo", "0,0"]);
    assert_eq!(c, 2);
}

#[test]
fn rank_expectations() {
    let o = run(&["rank", "--family", "kepler-cc", "--preset", "spherical", "--observables", "C2,C2mid,C3,H,L1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["modal_rank"], 5);
    let o = run(&["rank", "--family", "free-nc", "--z", "0.5", "--seed", "2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["modal_rank"], 4);
    assert_eq!(v["histogram"]["4"], 50);
    let o = run(&["rank", "--family", "free-nc", "--z", "0.5", "--observables", "C2,C2,C3"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["modal_rank"], 2);
    assert_eq!(code(&run(&["rank", "--family", "free-nc", "--z", "0.5", "--observables", "L1"])), 2);
}

#[test]
fn presets_export() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("presets.json");
    assert_eq!(code(&run(&["export-presets", "-o", path.to_str().unwrap()])), 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(Path::new(&path)).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    let names: Vec<&str> = v["presets"].as_array().unwrap().iter().map(|p| p["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["spherical", "euclidean", "hyperbolic", "antidesitter", "minkowski", "desitter"]);
    assert_eq!(v["presets"][4]["riemannian"], false);
}
