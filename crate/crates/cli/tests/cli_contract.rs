use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

fn wrm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wrm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    wrm(args).status.code().expect("exit code")
}

fn json(args: &[&str]) -> Value {
    let out = wrm(args);
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    })
}

fn config_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["solve", "exp-ode", "--n", "8", "--jacobian", "sjt"], 0),
        (&["solve", "--problem", "sin-ode"], 0),
        (&["solve", "heat-slab", "--scheme", "traditional", "--jacobian", "fd"], 0),
        (&["solve", "beam", "--n", "6", "--max-iter", "1"], 2),
        (&["solve", "beam", "--method", "picard"], 3),
        (&["solve", "beam", "--scheme", "traditional"], 3),
        (&["solve", "heat-slab", "--length", "-1"], 3),
        (&["solve", "exp-ode", "--basis", "monomial", "--n", "11"], 3),
        (&["solve", "exp-ode", "--n", "1"], 3),
        (&["solve", "exp-ode", "--damping", "0"], 3),
        (&["solve", "exp-ode", "--n", "eight"], 3),
        (&["solve", "exp-ode", "--problem", "beam"], 3),
        (&["solve"], 3),
        (&["solve", "exp-ode", "--frobnicate"], 3),
        (&["transmogrify"], 3),
        (&[], 3),
        (&["--help"], 0),
        (&["solve", "--help"], 0),
        (&["--version"], 0),
        (&["jacobian-check", "exp-ode", "--trials", "20", "--seed", "7"], 0),
        (&["jacobian-check", "beam", "--n", "2"], 0),
        (&["jacobian-check", "exp-ode", "--trials", "0"], 3),
        (&["properties", "--cases", "20"], 0),
        (&["properties", "--cases", "0"], 3),
        (&["compare", "--ns", "4,6"], 0),
        (&["compare", "--ns", "1"], 3),
        (&["list"], 0),
        (&["list", "--output", "xml"], 3),
        (&["solve", "exp-ode", "--config", "/nonexistent/wrm.json"], 3),
    ];
    for (args, want) in cases {
        assert_eq!(code(args), *want, "wrm {}", args.join(" "));
    }
}

#[test]
fn invalid_config_names_the_field() {
    let out = wrm(&["solve", "exp-ode", "--basis", "chebyshev"]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("invalid basis"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn solve_output_is_byte_stable() {
    for args in [
        &["solve", "beam", "--n", "6"][..],
        &["solve", "heat-slab", "--scheme", "traditional", "--output", "csv"][..],
        &["jacobian-check", "sin-ode", "--seed", "3"][..],
        &["properties", "--cases", "30", "--seed", "9"][..],
        &["compare", "--ns", "3,5", "--output", "json"][..],
    ] {
        let a = wrm(args).stdout;
        let b = wrm(args).stdout;
        assert!(!a.is_empty());
        assert_eq!(a, b, "wrm {}", args.join(" "));
    }
}

#[test]
fn record_schema_is_complete() {
    let v = json(&["solve", "sin-ode"]);
    for key in [
        "problem",
        "scheme",
        "n",
        "converged",
        "iterations",
        "residual_history",
        "solution_samples",
        "exact_error_max",
        "jacobian_mode",
        "flops",
        "wall_seconds",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert!(v["exact_error_max"].is_null());
    assert!(v["wall_seconds"].is_null());
    assert_eq!(v["solution_samples"].as_array().unwrap().len(), 11);
    assert_eq!(v["solution_samples"][10]["x"], 1.0);
    // The lift fixes y(1) = 1.
    assert!((v["solution_samples"][10]["value"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(v["flops"]["analytic"].is_u64() && v["flops"]["finite_difference"].is_u64());

    let t = json(&["solve", "sin-ode", "--timing"]);
    assert!(t["wall_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn heat_slab_traditional_matches_reference() {
    let v = json(&["solve", "heat-slab", "--scheme", "traditional", "--alpha", "1", "--n", "8"]);
    assert_eq!(v["converged"], true);
    assert!(v["exact_error_max"].as_f64().unwrap() <= 1e-3);
}

#[test]
fn starved_beam_reports_non_convergence() {
    let out = wrm(&["solve", "beam", "--n", "6", "--max-iter", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["converged"], false);
    assert_eq!(v["iterations"], 1);
}

#[test]
fn config_file_is_layered_under_flags() {
    let f = config_file(r#"{"problem": "heat-slab", "scheme": "traditional", "n": 5, "max_iter": 30, "alpha": 0.5}"#);
    let path = f.path().to_str().unwrap();
    let v = json(&["solve", "--config", path]);
    assert_eq!(v["scheme"], "traditional");
    assert_eq!(v["n"], 5);
    let v = json(&["solve", "--config", path, "--n", "7", "--scheme", "novel"]);
    assert_eq!(v["n"], 7);
    assert_eq!(v["scheme"], "novel");

    let by_flags = wrm(&["solve", "heat-slab", "--scheme", "traditional", "--n", "5", "--alpha", "0.5"]).stdout;
    assert_eq!(wrm(&["solve", "--config", path]).stdout, by_flags);

    let bad = config_file(r#"{"problem": "heat-slab", "nn": 5}"#);
    assert_eq!(code(&["solve", "--config", bad.path().to_str().unwrap()]), 3);
    let bad = config_file("{not json");
    assert_eq!(code(&["solve", "--config", bad.path().to_str().unwrap()]), 3);
}

#[test]
fn jacobian_check_reports_cheaper_analytic_jacobians() {
    for p in ["exp-ode", "sin-ode", "heat-slab", "beam"] {
        let v = json(&["jacobian-check", p, "--n", "8", "--trials", "5"]);
        assert_eq!(v["passed"], true, "{p}");
        assert!(v["max_relative_error"].as_f64().unwrap() <= 1e-5);
        let a = v["flops"]["analytic"].as_u64().unwrap();
        let f = v["flops"]["finite_difference"].as_u64().unwrap();
        assert!(a < f, "{p}: {a} vs {f}");
    }
}

#[test]
fn compare_sweep_rows() {
    let out = wrm(&["compare", "--problem", "heat-slab", "--ns", "4,6,8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "problem,scheme,n,iters,res_norm,err_max,seconds");
    assert_eq!(lines.len(), 7);
    let rows: Vec<Vec<&str>> = lines[1..].iter().map(|l| l.split(',').collect()).collect();
    let order: Vec<(&str, &str)> = rows.iter().map(|r| (r[1], r[2])).collect();
    assert_eq!(
        order,
        [("novel", "4"), ("novel", "6"), ("novel", "8"), ("traditional", "4"), ("traditional", "6"), ("traditional", "8")]
    );
    let trad: Vec<f64> = rows[3..].iter().map(|r| r[5].parse().unwrap()).collect();
    assert!(trad.windows(2).all(|w| w[1] <= w[0]), "{trad:?}");
    assert!(rows[..3].iter().all(|r| r[5].parse::<f64>().is_ok()));
}

#[test]
fn list_is_stable() {
    let a = wrm(&["list"]).stdout;
    assert_eq!(a, wrm(&["list"]).stdout);
    let text = String::from_utf8(a).unwrap();
    for name in ["exp-ode", "sin-ode", "heat-slab", "beam"] {
        assert!(text.contains(name));
    }
    for line in text.lines() {
        if line.contains("traditional") {
            assert!(line.starts_with("heat-slab"), "{line}");
        }
    }
    assert!(text.lines().any(|l| l.starts_with("heat-slab") && l.contains("novel")));
}

#[test]
fn in_process_run_matches_binary() {
    let args = ["wrm", "solve", "exp-ode", "--n", "5"];
    let mut out = Vec::new();
    let mut err = Vec::new();
    assert_eq!(wrm_cli::run(args, &mut out, &mut err), 0);
    assert_eq!(out, wrm(&args[1..]).stdout);
}
