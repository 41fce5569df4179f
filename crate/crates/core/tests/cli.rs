use gpt_thermo::cli::{run, EXIT_DOMAIN, EXIT_OK, EXIT_PARSE};
use serde_json::Value;
use std::process::Command;

const QUBIT: &str = r#"{"model":{"kind":"quantum","params":{"d":2}},"coords":[0.75,0.25,0,0]}"#;
const MIXED: &str = r#"{"model":{"kind":"quantum","params":{"d":2}},"coords":[0.5,0.5,0,0]}"#;
const PURE: &str = r#"{"model":{"kind":"quantum","params":{"d":2}},"coords":[1,0,0,0]}"#;
const EGG: &str = r#"{"model":{"kind":"egg","params":{"r":1,"R":2}},"coords":[0.1,0.2]}"#;
const GBIT_CENTER: &str = r#"{"model":{"kind":"gbit","params":{}},"coords":[0.5,0.5,1]}"#;

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("gpt-thermo").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).expect("valid JSON output")
}

#[test]
fn entropy_spectral() {
    let (code, out, _) = cli(&["entropy", "--state", QUBIT]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert!((v["value"].as_f64().unwrap() - 0.562335).abs() < 1e-6);
    assert_eq!(v["base"], "e");

    let (code, out, _) = cli(&["entropy", "--state", PURE]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["value"].as_f64().unwrap(), 0.0);
}

#[test]
fn entropy_egg_is_a_domain_error() {
    let (code, _, err) = cli(&["entropy", "--state", EGG]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(err.contains("entropy not well-defined"));
}

#[test]
fn entropy_sweep_csv() {
    let (code, out, _) = cli(&["entropy", "--state", QUBIT, "--sweep", "0,1,2,inf"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "alpha,value,method");
    assert_eq!(lines.len(), 5);
    let values: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(values.windows(2).all(|w| w[0] >= w[1]));
    assert!((values[2] + (0.625f64).log2()).abs() < 1e-12);
}

#[test]
fn searches_are_reproducible() {
    let args = ["entropy", "--state", QUBIT, "--method", "decomposition", "--alpha", "2", "--budget", "500", "--seed", "4"];
    let (code, a, _) = cli(&args);
    let (_, b, _) = cli(&args);
    assert_eq!(code, EXIT_OK);
    assert_eq!(a, b);
    let v = json(&a);
    assert!((v["value"].as_f64().unwrap() + (0.625f64).log2()).abs() < 1e-9);
    assert_eq!(v["method"], "decomposition-search");
}

#[test]
fn parse_errors() {
    assert_eq!(cli(&["entropy", "--state", "{not json"]).0, EXIT_PARSE);
    assert_eq!(cli(&["entropy", "--state", "/no/such/file.json"]).0, EXIT_PARSE);
    assert_eq!(cli(&["frobnicate"]).0, EXIT_PARSE);
    assert_eq!(cli(&["entropy", "--state", QUBIT, "--unknown"]).0, EXIT_PARSE);
    let (code, out, _) = cli(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("entropy"));
}

#[test]
fn check_suites() {
    let (code, out, _) = cli(&["check", "--suite", "klein", "--trials", "1000", "--seed", "1"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["passed"], 1000);
    assert!(v["worst_residual"].as_f64().unwrap() < 1e-8);

    let (code, out, _) = cli(&["check", "--suite", "second-law", "--trials", "50"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["expected_failures"].as_array().unwrap().len(), 1);

    let (code, out, _) = cli(&["check", "--suite", "well-defined", "--trials", "50", "--format", "text"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("well-defined: 50/50 passed"));
}

#[test]
fn egg_subcommand() {
    let (code, out, _) = cli(&["egg", "--r", "1", "--R", "2", "--witness"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["vertical"]["weights"], serde_json::json!([0.5, 0.5]));
    let h: Vec<f64> = serde_json::from_value(v["horizontal"]["weights"].clone()).unwrap();
    assert!((h[0] - 1.0 / 3.0).abs() < 1e-15 && (h[1] - 2.0 / 3.0).abs() < 1e-15);

    let (code, out, _) = cli(&["egg", "--r", "1", "--R", "1", "--witness"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["vertical"]["weights"], v["horizontal"]["weights"]);

    let (code, out, _) = cli(&["egg", "--r", "1", "--R", "2", "--grid", "50"]);
    assert_eq!(code, EXIT_OK);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 2500);
    let worst = rows
        .iter()
        .map(|r| r.split(',').nth(4).unwrap().parse::<f64>().unwrap())
        .fold(0.0, f64::max);
    assert!(worst < 1e-8);

    assert_eq!(cli(&["egg", "--r", "1", "--R", "2", "--point", "3,0"]).0, EXIT_DOMAIN);
    assert_eq!(cli(&["egg", "--r", "1", "--R", "2", "--point", "-1.5,0.1"]).0, EXIT_OK);
}

#[test]
fn vn_subcommand() {
    let (code, out, _) = cli(&["vn", "--state", MIXED, "--N", "1000"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert!((v["final_S_GPT"].as_f64().unwrap() - 693.147).abs() < 1e-3);
    let labels: Vec<&str> = v["steps"].as_array().unwrap().iter().map(|s| s["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["separate", "compress", "compress", "convert", "merge"]);

    let (_, out, _) = cli(&["vn", "--state", PURE]);
    assert_eq!(json(&out)["final_S_GPT"].as_f64().unwrap(), 0.0);

    assert_eq!(cli(&["vn", "--state", GBIT_CENTER]).0, EXIT_DOMAIN);

    let comps = r#"[{"model":{"kind":"quantum","params":{"d":2}},"coords":[1,0,0,0]},
                    {"model":{"kind":"quantum","params":{"d":2}},"coords":[0,1,0,0]}]"#;
    let (code, out, _) = cli(&["vn", "--protocol", "petz", "--components", comps, "--weights", "0.5,0.5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["pass"], true);
    let (code, out, _) = cli(&["vn", "--protocol", "mixing", "--components", comps, "--N", "10"]);
    assert_eq!(code, EXIT_OK);
    assert!((json(&out)["delta"].as_f64().unwrap() - 10.0 * std::f64::consts::LN_2).abs() < 1e-9);
    let (code, out, _) = cli(&["vn", "--protocol", "petz", "--gbit-a", "0.5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["pass"], false);
}

#[test]
fn stirling_subcommand() {
    let (code, out, _) = cli(&["stirling", "--counts", "500,300,200"]);
    assert_eq!(code, EXIT_OK);
    assert!(json(&out)["relative_error"].as_f64().unwrap() < 0.01);
}

#[test]
fn binary_reads_seed_from_environment() {
    let bin = env!("CARGO_BIN_EXE_gpt-thermo");
    let go = |seed: &str| {
        Command::new(bin)
            .args(["entropy", "--state", QUBIT, "--method", "measurement", "--budget", "300"])
            .env("GPT_THERMO_SEED", seed)
            .output()
            .unwrap()
    };
    let (a, b) = (go("3"), go("3"));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let failing = Command::new(bin).args(["egg", "--r", "1", "--R", "2", "--point", "5,5"]).output().unwrap();
    assert_eq!(failing.status.code(), Some(EXIT_DOMAIN));
}
