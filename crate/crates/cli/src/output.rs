//! Serializable records and their JSON, CSV and table renderings.

use std::fmt::Write as _;

use serde::Serialize;
use wrm_core::hadamard::properties::PropertyReport;

use crate::config::OutputFormat;
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    pub x: f64,
    pub value: f64,
}

/// Multiplications spent on one Jacobian, analytic and finite-difference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlopCounts {
    pub analytic: Option<u64>,
    pub finite_difference: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputRecord {
    pub problem: String,
    pub scheme: String,
    pub n: usize,
    pub basis: String,
    pub method: String,
    pub converged: bool,
    pub iterations: usize,
    /// Residual max-norm at the start and after every iteration.
    pub residual_history: Vec<f64>,
    pub solution_samples: Vec<Sample>,
    pub exact_error_max: Option<f64>,
    pub jacobian_mode: String,
    pub flops: FlopCounts,
    pub wall_seconds: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JacobianCheckRecord {
    pub problem: String,
    pub scheme: String,
    pub n: usize,
    pub basis: String,
    pub seed: u64,
    pub trials: usize,
    pub max_relative_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub flops: FlopCounts,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertiesRecord {
    pub all_passed: bool,
    #[serde(flatten)]
    pub report: PropertyReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareRow {
    pub problem: String,
    pub scheme: String,
    pub n: usize,
    pub converged: bool,
    pub iters: Option<usize>,
    pub res_norm: Option<f64>,
    pub err_max: Option<f64>,
    pub seconds: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProblemEntry {
    pub name: String,
    pub schemes: Vec<String>,
    pub default_basis: String,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Listing {
    pub problems: Vec<ProblemEntry>,
    pub bases: Vec<String>,
    pub methods: Vec<String>,
    pub jacobian_modes: Vec<String>,
    pub outputs: Vec<String>,
}

/// Shortest round-trip text, in exponent form for very small or large
/// magnitudes.
pub fn num(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || !a.is_finite() || (1e-4..1e15).contains(&a) {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

trait Cell {
    fn cell(&self) -> String;
}

impl Cell for f64 {
    fn cell(&self) -> String {
        num(*self)
    }
}

impl Cell for u64 {
    fn cell(&self) -> String {
        self.to_string()
    }
}

impl Cell for usize {
    fn cell(&self) -> String {
        self.to_string()
    }
}

fn opt<T: Cell>(v: Option<T>) -> String {
    v.map(|v| v.cell()).unwrap_or_default()
}

fn opt_table<T: Cell>(v: Option<T>) -> String {
    v.map(|v| v.cell()).unwrap_or_else(|| "-".into())
}

fn table(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

fn grid(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        out.push_str(&r.join(","));
        out.push('\n');
    }
    out
}

fn json<T: Serialize + ?Sized>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub trait Render: Serialize {
    fn csv(&self) -> String;
    fn table(&self) -> String;

    fn render(&self, format: OutputFormat) -> Result<String, CliError> {
        match format {
            OutputFormat::Json => json(self),
            OutputFormat::Csv => Ok(self.csv()),
            OutputFormat::Table => Ok(self.table()),
        }
    }
}

impl OutputRecord {
    fn final_residual(&self) -> Option<f64> {
        self.residual_history.last().copied()
    }
}

impl Render for OutputRecord {
    fn csv(&self) -> String {
        let header = [
            "problem",
            "scheme",
            "n",
            "basis",
            "method",
            "converged",
            "iterations",
            "res_norm",
            "exact_error_max",
            "jacobian_mode",
            "flops_analytic",
            "flops_finite_difference",
            "wall_seconds",
        ];
        let row = vec![
            self.problem.clone(),
            self.scheme.clone(),
            self.n.to_string(),
            self.basis.clone(),
            self.method.clone(),
            self.converged.to_string(),
            self.iterations.to_string(),
            opt(self.final_residual()),
            opt(self.exact_error_max),
            self.jacobian_mode.clone(),
            opt(self.flops.analytic),
            opt(self.flops.finite_difference),
            opt(self.wall_seconds),
        ];
        let mut out = csv(&header, &[row]);
        out.push('\n');
        let samples: Vec<Vec<String>> = self
            .solution_samples
            .iter()
            .map(|s| vec![num(s.x), num(s.value)])
            .collect();
        out.push_str(&csv(&["x", "value"], &samples));
        out
    }

    fn table(&self) -> String {
        let mut out = table(&[
            ("problem", self.problem.clone()),
            ("scheme", self.scheme.clone()),
            ("n", self.n.to_string()),
            ("basis", self.basis.clone()),
            ("method", self.method.clone()),
            ("jacobian", self.jacobian_mode.clone()),
            ("converged", self.converged.to_string()),
            ("iterations", self.iterations.to_string()),
            ("residual", opt_table(self.final_residual())),
            ("exact error", opt_table(self.exact_error_max)),
            ("flops (sjt)", opt_table(self.flops.analytic)),
            ("flops (fd)", opt_table(self.flops.finite_difference)),
            ("seconds", opt_table(self.wall_seconds)),
        ]);
        out.push('\n');
        let rows: Vec<Vec<String>> = self
            .solution_samples
            .iter()
            .map(|s| vec![format!("{:.4}", s.x), format!("{:.10e}", s.value)])
            .collect();
        out.push_str(&grid(&["x", "value"], &rows));
        out
    }
}

impl Render for JacobianCheckRecord {
    fn csv(&self) -> String {
        csv(
            &[
                "problem",
                "scheme",
                "n",
                "basis",
                "seed",
                "trials",
                "max_relative_error",
                "tolerance",
                "passed",
                "flops_analytic",
                "flops_finite_difference",
            ],
            &[vec![
                self.problem.clone(),
                self.scheme.clone(),
                self.n.to_string(),
                self.basis.clone(),
                self.seed.to_string(),
                self.trials.to_string(),
                num(self.max_relative_error),
                num(self.tolerance),
                self.passed.to_string(),
                opt(self.flops.analytic),
                opt(self.flops.finite_difference),
            ]],
        )
    }

    fn table(&self) -> String {
        table(&[
            ("problem", self.problem.clone()),
            ("scheme", self.scheme.clone()),
            ("n", self.n.to_string()),
            ("basis", self.basis.clone()),
            ("seed", self.seed.to_string()),
            ("trials", self.trials.to_string()),
            ("max rel error", format!("{:.3e}", self.max_relative_error)),
            ("tolerance", format!("{:.0e}", self.tolerance)),
            ("passed", self.passed.to_string()),
            ("flops (sjt)", opt_table(self.flops.analytic)),
            ("flops (fd)", opt_table(self.flops.finite_difference)),
        ])
    }
}

impl Render for PropertiesRecord {
    fn csv(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .report
            .checks
            .iter()
            .map(|c| {
                vec![
                    c.name.to_string(),
                    c.cases.to_string(),
                    c.failures.to_string(),
                    num(c.max_error),
                    num(c.tolerance),
                    c.passed().to_string(),
                ]
            })
            .collect();
        csv(&["property", "cases", "failures", "max_error", "tolerance", "passed"], &rows)
    }

    fn table(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .report
            .checks
            .iter()
            .map(|c| {
                vec![
                    c.name.to_string(),
                    c.cases.to_string(),
                    c.failures.to_string(),
                    format!("{:.3e}", c.max_error),
                    format!("{:.0e}", c.tolerance),
                    if c.passed() { "pass" } else { "FAIL" }.to_string(),
                ]
            })
            .collect();
        let mut out = format!("seed {}  size {}\n", self.report.seed, self.report.size);
        out.push_str(&grid(&["property", "cases", "failures", "max error", "tol", "result"], &rows));
        out
    }
}

pub const COMPARE_COLUMNS: [&str; 7] = ["problem", "scheme", "n", "iters", "res_norm", "err_max", "seconds"];

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct CompareTable(pub Vec<CompareRow>);

impl CompareTable {
    fn cells(&self, fmt: fn(Option<f64>) -> String) -> Vec<Vec<String>> {
        self.0
            .iter()
            .map(|r| {
                vec![
                    r.problem.clone(),
                    r.scheme.clone(),
                    r.n.to_string(),
                    opt(r.iters),
                    fmt(r.res_norm),
                    fmt(r.err_max),
                    fmt(r.seconds),
                ]
            })
            .collect()
    }
}

impl Render for CompareTable {
    fn csv(&self) -> String {
        csv(&COMPARE_COLUMNS, &self.cells(opt))
    }

    fn table(&self) -> String {
        grid(
            &COMPARE_COLUMNS,
            &self.cells(|v| v.map(|v| format!("{v:.3e}")).unwrap_or_else(|| "-".into())),
        )
    }
}

impl Render for Listing {
    fn csv(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .problems
            .iter()
            .map(|p| vec![p.name.clone(), p.schemes.join(" "), p.default_basis.clone()])
            .collect();
        csv(&["problem", "schemes", "default_basis"], &rows)
    }

    fn table(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .problems
            .iter()
            .map(|p| {
                vec![
                    p.name.clone(),
                    p.schemes.join(","),
                    p.default_basis.clone(),
                    p.description.clone(),
                ]
            })
            .collect();
        let mut out = grid(&["problem", "schemes", "basis", "equation"], &rows);
        let _ = writeln!(out);
        let _ = writeln!(out, "bases: {}", self.bases.join(", "));
        let _ = writeln!(out, "methods: {}", self.methods.join(", "));
        let _ = writeln!(out, "jacobian modes: {}", self.jacobian_modes.join(", "));
        let _ = writeln!(out, "outputs: {}", self.outputs.join(", "));
        out
    }
}
