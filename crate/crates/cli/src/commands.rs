use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use wrm_core::assembly::BasisKind;
use wrm_core::formulation::{fd_jacobian_fn, FdScheme, DEFAULT_FD_STEP};
use wrm_core::hadamard::properties::run_property_suite;
use wrm_core::hadamard::{RealMatrix, RealVector};
use wrm_core::problems::{build_problem, Problem, ProblemKind, ProblemSpec, Scheme};
use wrm_core::solvers::{Method, ResidualSystem};
use wrm_core::{Error, Flops};

use crate::config::{CommandKind, OutputFormat, RunConfig, PROPERTY_SIZE};
use crate::error::{exit, CliError};
use crate::output::{
    CompareRow, CompareTable, FlopCounts, JacobianCheckRecord, Listing, OutputRecord, ProblemEntry,
    PropertiesRecord, Render, Sample,
};

/// Jacobian agreement required by `jacobian-check`.
pub const JACOBIAN_TOLERANCE: f64 = 1e-5;

/// Rendered output plus the exit code it implies.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn new(stdout: String, code: i32) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code,
        }
    }
}

pub fn execute(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match cfg.command {
        CommandKind::Solve => cmd_solve(cfg),
        CommandKind::JacobianCheck => cmd_jacobian_check(cfg),
        CommandKind::Properties => cmd_properties(cfg),
        CommandKind::Compare => cmd_compare(cfg),
        CommandKind::List => cmd_list(cfg.output),
    }
}

fn build(spec: &ProblemSpec) -> Result<Problem, CliError> {
    build_problem(spec).map_err(|e| match e {
        Error::InvalidArgument(_) | Error::BoundaryCondition(_) => CliError::config("problem", e),
        other => CliError::Core(other),
    })
}

fn solver_error(e: Error) -> CliError {
    match e {
        Error::InvalidArgument(_) => CliError::config("method", e),
        other => CliError::Solver(other),
    }
}

fn target_spec(cfg: &RunConfig) -> ProblemSpec {
    cfg.spec(cfg.problem.expect("validated"), cfg.scheme, cfg.n)
}

/// `‖a − b‖max / max(‖a‖max, ‖b‖max)`, zero when both vanish.
pub fn relative_error(a: &RealMatrix, b: &RealMatrix) -> f64 {
    let diff = a.sub(b).map(|d| d.max_abs()).unwrap_or(f64::INFINITY);
    let scale = a.max_abs().max(b.max_abs());
    if diff == 0.0 {
        0.0
    } else {
        diff / scale
    }
}

fn jacobian_costs(system: &dyn ResidualSystem, x: &RealVector) -> FlopCounts {
    let analytic = system.jacobian(x).ok().map(|(_, s)| s.multiplications);
    let mut flops = Flops::new();
    let fd = fd_jacobian_fn(|v, f| system.defect(v, f), x, DEFAULT_FD_STEP, FdScheme::Central, &mut flops)
        .ok()
        .map(|_| flops.multiplications);
    FlopCounts {
        analytic,
        finite_difference: fd,
    }
}

fn cmd_solve(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let spec = target_spec(cfg);
    let problem = build(&spec)?;
    let sol = problem.solve(&cfg.solve).map_err(solver_error)?;
    let report = &sol.report;
    let at = if sol.coefficients.all_finite() {
        sol.coefficients.clone()
    } else {
        RealVector::zeros(problem.dim())
    };
    let flops = problem.with_residual_system(|s| jacobian_costs(s, &at));
    let samples = if sol.coefficients.all_finite() {
        problem
            .sample(&sol.coefficients)?
            .into_iter()
            .map(|(x, value)| Sample { x, value })
            .collect()
    } else {
        Vec::new()
    };
    let exact_error_max = if sol.coefficients.all_finite() {
        problem.exact_error_max(&sol.coefficients)?
    } else {
        None
    };
    let mut residual_history = vec![report.initial_residual_norm];
    residual_history.extend(&report.residual_norm_history);
    let record = OutputRecord {
        problem: spec.kind.name().into(),
        scheme: spec.scheme.name().into(),
        n: spec.n,
        basis: spec.basis.name().into(),
        method: cfg.solve.method.name().into(),
        converged: report.converged,
        iterations: report.iterations,
        residual_history,
        solution_samples: samples,
        exact_error_max,
        jacobian_mode: cfg.solve.jacobian.name().into(),
        flops,
        wall_seconds: cfg.timing.then_some(report.wall_seconds),
    };
    let mut out = Outcome::new(record.render(cfg.output)?, exit::SUCCESS);
    if !report.converged {
        out.code = exit::NOT_CONVERGED;
        out.stderr = format!(
            "not converged after {} iterations ({:?}), residual {:e}\n",
            report.iterations,
            report.stop_reason,
            report.final_residual_norm()
        );
    }
    Ok(out)
}

fn cmd_jacobian_check(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let spec = target_spec(cfg);
    let problem = build(&spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = problem.dim();
    let (max_err, flops) = problem.with_residual_system(|s| -> Result<(f64, FlopCounts), CliError> {
        let mut max_err = 0.0f64;
        let mut counts = None;
        for _ in 0..cfg.trials {
            let x = RealVector::from_fn(n, |_| rng.gen_range(-1.0..1.0))?;
            let (analytic, stats) = s.jacobian(&x)?;
            let mut fd_flops = Flops::new();
            let fd = fd_jacobian_fn(|v, f| s.defect(v, f), &x, DEFAULT_FD_STEP, FdScheme::Central, &mut fd_flops)?;
            max_err = max_err.max(relative_error(&analytic, &fd));
            counts.get_or_insert(FlopCounts {
                analytic: Some(stats.multiplications),
                finite_difference: Some(fd_flops.multiplications),
            });
        }
        Ok((max_err, counts.expect("at least one trial")))
    })?;
    let passed = max_err <= JACOBIAN_TOLERANCE;
    let record = JacobianCheckRecord {
        problem: spec.kind.name().into(),
        scheme: spec.scheme.name().into(),
        n: spec.n,
        basis: spec.basis.name().into(),
        seed: cfg.seed,
        trials: cfg.trials,
        max_relative_error: max_err,
        tolerance: JACOBIAN_TOLERANCE,
        passed,
        flops,
    };
    let mut out = Outcome::new(record.render(cfg.output)?, exit::SUCCESS);
    if !passed {
        out.code = exit::FAILURE;
        out.stderr = format!("Jacobian mismatch {max_err:e} exceeds {JACOBIAN_TOLERANCE:e}\n");
    }
    Ok(out)
}

fn cmd_properties(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let report = run_property_suite(cfg.cases, cfg.seed, PROPERTY_SIZE)?;
    let record = PropertiesRecord {
        all_passed: report.all_passed(),
        report,
    };
    let mut out = Outcome::new(record.render(cfg.output)?, exit::SUCCESS);
    if !record.all_passed {
        out.code = exit::FAILURE;
        out.stderr = "property suite reported failures\n".into();
    }
    Ok(out)
}

fn compare_row(cfg: &RunConfig, kind: ProblemKind, scheme: Scheme, n: usize) -> CompareRow {
    let mut row = CompareRow {
        problem: kind.name().into(),
        scheme: scheme.name().into(),
        n,
        converged: false,
        iters: None,
        res_norm: None,
        err_max: None,
        seconds: None,
    };
    let Ok(problem) = build_problem(&cfg.spec(kind, Some(scheme), n)) else {
        return row;
    };
    let opts = if kind == ProblemKind::Beam && cfg.solve.method == Method::Picard {
        wrm_core::solvers::SolveOptions {
            method: Method::Newton,
            ..cfg.solve
        }
    } else {
        cfg.solve
    };
    if let Ok(sol) = problem.solve(&opts) {
        row.converged = sol.report.converged;
        row.iters = Some(sol.report.iterations);
        row.res_norm = Some(sol.report.final_residual_norm());
        row.seconds = cfg.timing.then_some(sol.report.wall_seconds);
        if sol.coefficients.all_finite() {
            row.err_max = problem.exact_error_max(&sol.coefficients).ok().flatten();
        }
    }
    row
}

fn cmd_compare(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let jobs: Vec<(ProblemKind, Scheme, usize)> = cfg
        .sweep_targets()?
        .into_iter()
        .flat_map(|(k, s)| cfg.ns.iter().map(move |&n| (k, s, n)))
        .collect();
    // Indexed collection keeps the job order regardless of completion order.
    let rows: Vec<CompareRow> = jobs
        .par_iter()
        .map(|&(k, s, n)| compare_row(cfg, k, s, n))
        .collect();
    let failed: Vec<String> = rows
        .iter()
        .filter(|r| !r.converged)
        .map(|r| format!("{}/{}/n={}", r.problem, r.scheme, r.n))
        .collect();
    let mut out = Outcome::new(CompareTable(rows).render(cfg.output)?, exit::SUCCESS);
    if !failed.is_empty() {
        out.code = exit::NOT_CONVERGED;
        out.stderr = format!("not converged: {}\n", failed.join(", "));
    }
    Ok(out)
}

pub fn listing() -> Listing {
    Listing {
        problems: ProblemKind::ALL
            .into_iter()
            .map(|k| ProblemEntry {
                name: k.name().into(),
                schemes: k.schemes().iter().map(|s| s.name().to_string()).collect(),
                default_basis: k.default_basis().name().into(),
                description: k.description().into(),
            })
            .collect(),
        bases: BasisKind::ALL.iter().map(|b| b.name().to_string()).collect(),
        methods: vec!["newton".into(), "picard".into()],
        jacobian_modes: vec!["sjt".into(), "fd".into()],
        outputs: OutputFormat::ALL.iter().map(|o| o.name().to_string()).collect(),
    }
}

fn cmd_list(format: OutputFormat) -> Result<Outcome, CliError> {
    Ok(Outcome::new(listing().render(format)?, exit::SUCCESS))
}
