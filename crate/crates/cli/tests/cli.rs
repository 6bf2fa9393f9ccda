//! End-to-end runs of the `foxbarnes` binary.

use std::path::Path;
use std::process::{Command, Output};

use foxbarnes_cli::commands::fig1_file_name;
use foxbarnes_cli::document::ParamFile;
use foxbarnes::kilbas_saigo::FIG1_PAIRS;
use serde_json::Value;

const I_DOC: &str = r#"{
  "m": 1, "n": 1,
  "upper": [{"a": [0.3, 0.0], "alpha": 1.0}, {"a": [0.2, 0.0], "alpha": 0.5}],
  "lower": [{"a": [0.1, 0.0], "alpha": 2.0}, {"a": [0.4, 0.0], "alpha": 0.7}],
  "tau": 1.4
}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_foxbarnes")).args(args).output().expect("binary runs")
}

fn run_env(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_foxbarnes"))
        .args(args)
        .env("FOXBARNES_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Real part of `value` in a `--json` point document.
fn json_value(o: &Output) -> (f64, f64) {
    assert_eq!(o.status.code(), Some(0), "stderr: {}", stderr(o));
    let v: Value = serde_json::from_str(stdout(o).trim()).expect("JSON output");
    (v["value"][0].as_f64().unwrap(), v["value"][1].as_f64().unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn dgamma_values_and_zero_lattice() {
    let (re, im) = json_value(&run(&["eval-dgamma", "--z", "1,0", "--tau", "0.7", "--json"]));
    assert!((re - 1.0).abs() < 1e-10 && im.abs() < 1e-10);
    let (re, _) = json_value(&run(&["eval-dgamma", "--z", "3,0", "--tau", "1", "--json"]));
    assert!((re - 1.0).abs() < 1e-10);
    let text = stdout(&run(&["eval-dgamma", "--z", "1,0", "--tau", "0.7"]));
    assert!(text.starts_with("G(z; tau) = 1.00000000000 "), "{text}");

    let zero = run(&["eval-dgamma", "--z", "0,0", "--tau", "1"]);
    assert_eq!(zero.status.code(), Some(3));
    assert!(stderr(&zero).contains("zero lattice"), "{}", stderr(&zero));
}

#[test]
fn parse_errors_exit_2() {
    assert_eq!(run(&["eval-dgamma", "--z", "one", "--tau", "1"]).status.code(), Some(2));
    assert_eq!(run(&["eval-dgamma", "--tau", "1"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"m": 1, "n": 0, "upper": [], "lower": [], "tau": -1}"#);
    assert_eq!(run(&["eval-i", "--params", &bad, "--z", "1"]).status.code(), Some(2));
    let neg = run(&["ks-laplace", "--alpha", "0.8", "--gamma", "0.5", "--lambda", "-1", "--z", "1"]);
    assert_eq!(neg.status.code(), Some(2));
}

#[test]
fn laplace_limits() {
    let at = |z: &str| json_value(&run(&["ks-laplace", "--alpha", "0.8", "--gamma", "0.5", "--lambda", "1", "--z", z, "--json"])).0;
    // Initial value theorem: z L(z) → E(0) = 1.
    assert!((at("1000") - 1e-3).abs() < 1e-6);
    // At z = 10⁻³ the next residue, −0.9425 z^{0.3}, still holds the value
    // about 6.5% below the limit.
    assert!((at("0.001") - 1.73453).abs() < 1e-5, "{}", at("0.001"));
    assert!((at("0") - 1.85457).abs() < 1e-3);
    // ν = 1 has no finite limit.
    let nu1 = run(&["ks-laplace", "--alpha", "0.7", "--gamma", "0.3", "--z", "0"]);
    assert_eq!(nu1.status.code(), Some(3));
}

#[test]
fn laplace_routes_agree_from_the_command_line() {
    let base = ["ks-laplace", "--alpha", "0.6", "--gamma", "-0.1", "--z", "2", "--json", "--method"];
    let values: Vec<f64> = ["contour", "image", "series"]
        .iter()
        .map(|m| {
            let mut args = base.to_vec();
            args.push(m);
            json_value(&run(&args)).0
        })
        .collect();
    for v in &values[1..] {
        assert!((v - values[0]).abs() < 1e-6 * values[0], "{values:?}");
    }
    let diverges = run(&["ks-laplace", "--alpha", "0.8", "--gamma", "0.5", "--z", "2", "--method", "series"]);
    assert_eq!(diverges.status.code(), Some(3));
}

#[test]
fn series_and_h_function() {
    // E_{1,1,0}(x) = eˣ.
    let (re, _) = json_value(&run(&["ks-series", "--a", "1", "--m", "1", "--l", "0", "--nu", "1", "--t", "0.7", "--json"]));
    assert!((re - (-0.7f64).exp()).abs() < 1e-14);
    let dir = tempfile::tempdir().unwrap();
    // H^{1,0}_{0,1}[z | (0, 1)] = e^{−z}.
    let h = write(dir.path(), "h.json", r#"{"m": 1, "n": 0, "upper": [], "lower": [{"a": [0, 0], "alpha": 1}]}"#);
    let (re, im) = json_value(&run(&["eval-h", "--params", &h, "--z", "0.7,0.2", "--json"]));
    let want = (-foxbarnes::Complex64::new(0.7, 0.2)).exp();
    assert!((re - want.re).abs() < 1e-6 && (im - want.im).abs() < 1e-6);
}

#[test]
fn classification_reports() {
    let dir = tempfile::tempdir().unwrap();
    let i = write(dir.path(), "i.json", I_DOC);
    let out = run(&["classify", "--params", &i, "--z", "0.8,0.1"]);
    assert!(stdout(&out).contains("VL condition 1"), "{}", stdout(&out));

    let ks = write(dir.path(), "ks.json", r#"{"alpha": 0.8, "gamma": 0.5, "lambda": 1}"#);
    let out = stdout(&run(&["classify", "--params", &ks, "--z", "0.5"]));
    assert!(out.contains("clause 3 analogue, case (o)"), "{out}");

    let below = write(dir.path(), "below.json", r#"{"alpha": 0.6, "gamma": -0.1}"#);
    let out = stdout(&run(&["classify", "--params", &below, "--z", "2", "--laplace"]));
    assert!(out.contains("right loop, case (h)"), "{out}");

    let json = run(&["classify", "--params", &i, "--z", "0.8,0.1", "--json"]);
    let v: Value = serde_json::from_str(stdout(&json).trim()).unwrap();
    assert_eq!(v["vl_condition"], 1);
    assert!(v["kind"].as_str().unwrap().starts_with("vertical line"));
}

#[test]
fn no_contour_exits_4_with_report() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "flat.json",
        r#"{"m": 1, "n": 0, "upper": [{"a": [0.3, 0], "alpha": 1}], "lower": [{"a": [0.3, 0], "alpha": 1}], "tau": 1}"#,
    );
    let out = run(&["classify", "--params", &p, "--z", "0.8775825618903728,0.479425538604203"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stdout(&out).contains("no case applies"), "{}", stdout(&out));
    assert!(stdout(&out).contains("Δ₂ = "));
}

#[test]
fn evaluation_failure_exits_5() {
    let dir = tempfile::tempdir().unwrap();
    let i = write(dir.path(), "i.json", I_DOC);
    let out = run(&["eval-i", "--params", &i, "--z", "0.9", "--tol", "1e-16"]);
    assert_eq!(out.status.code(), Some(5), "{}", stderr(&out));
    assert!(stderr(&out).contains("quadrature failure"), "{}", stderr(&out));
}

#[test]
fn grid_csv_is_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let i = write(dir.path(), "i.json", I_DOC);
    let args = ["eval-i", "--params", &i, "--grid", "0.5:1.5:0.1"];
    let one = run_env(&args, "1");
    let four = run_env(&args, "4");
    assert_eq!(one.status.code(), Some(0), "{}", stderr(&one));
    assert_eq!(one.stdout, four.stdout);
    let text = stdout(&one);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "z,re,im,abs_err");
    assert_eq!(lines.len(), 12);
    assert!(lines[1].starts_with("0.500000000000,"));
    assert!(lines[11].starts_with("1.50000000000,"));
    assert_eq!(run_env(&args, "zero").status.code(), Some(2));
}

#[test]
fn saved_parameters_reload_identically() {
    let dir = tempfile::tempdir().unwrap();
    let doc = r#"{"m": 1, "n": 1, "upper": [{"a": [0.30000000000000004, 0.1], "alpha": 1.0},
        {"a": [0.2, 0.0], "alpha": 0.5}], "lower": [{"a": [0.1, 0.0], "alpha": 2.0},
        {"a": [0.4, 0.0], "alpha": 0.7}], "tau": 1.4142135623730951, "epsilon": [0.05, 0.0], "tol": 1e-7}"#;
    let original = write(dir.path(), "orig.json", doc);
    let saved = dir.path().join("saved.json");
    let first = run(&["eval-i", "--params", &original, "--z", "0.9", "--save-params", saved.to_str().unwrap()]);
    assert_eq!(first.status.code(), Some(0), "{}", stderr(&first));
    let a = ParamFile::load(Path::new(&original)).unwrap();
    let b = ParamFile::load(&saved).unwrap();
    assert_eq!(a, b);
    let second = run(&["eval-i", "--params", saved.to_str().unwrap(), "--z", "0.9"]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn fig1_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["ks-laplace", "--fig1", "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    for (alpha, gamma) in FIG1_PAIRS {
        let text = std::fs::read_to_string(dir.path().join(fig1_file_name(alpha, gamma))).unwrap();
        let rows: Vec<Vec<f64>> =
            text.lines().skip(1).map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
        assert_eq!(rows.len(), 101);
        assert!(rows.iter().flatten().all(|x| x.is_finite()));
        assert_eq!(rows[100][0], 5.0);
    }
}
