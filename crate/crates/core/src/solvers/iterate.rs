use std::time::Instant;

use crate::error::{Error, Result, Shape};
use crate::flops::Flops;
use crate::formulation::{fd_jacobian_fn, FdScheme, JacobianStats};
use crate::hadamard::{RealMatrix, RealVector};
use crate::solvers::lu::LuFactors;
use crate::solvers::options::{JacobianMode, Method, SolveOptions, SolveReport, StopReason};
use crate::solvers::system::ResidualSystem;

/// Solves with the method selected in `opts`.
pub fn solve<S: ResidualSystem + ?Sized>(
    system: &S,
    x0: &RealVector,
    opts: &SolveOptions,
) -> Result<SolveReport> {
    match opts.method {
        Method::Newton => newton(system, x0, opts),
        Method::Picard => picard(system, x0, opts),
    }
}

/// Newton iteration `x ← x − damping·J(x)⁻¹·F(x)`.
pub fn newton<S: ResidualSystem + ?Sized>(
    system: &S,
    x0: &RealVector,
    opts: &SolveOptions,
) -> Result<SolveReport> {
    opts.validate()?;
    let mut stats = JacobianStats::default();
    iterate(system, x0, opts, |x, r| {
        let j = jacobian_for(system, x, opts.jacobian, &mut stats)?;
        LuFactors::factor(&j)?.solve(r)
    })
    .map(|mut report| {
        report.jacobian_stats = stats;
        report
    })
}

/// Fixed-point iteration `x ← x − D⁻¹·F(x)`, i.e. `D·x_{k+1} = rhs − N(x_k)`
/// for the designated linear part `D`.
pub fn picard<S: ResidualSystem + ?Sized>(
    system: &S,
    x0: &RealVector,
    opts: &SolveOptions,
) -> Result<SolveReport> {
    opts.validate()?;
    let d = system.linear_matrix().ok_or_else(|| {
        Error::InvalidArgument("Picard iteration needs a designated linear part".into())
    })?;
    let lu = LuFactors::factor(&d)?;
    let damped = SolveOptions { damping: 1.0, ..*opts };
    iterate(system, x0, &damped, |_, r| lu.solve(r))
}

fn jacobian_for<S: ResidualSystem + ?Sized>(
    system: &S,
    x: &RealVector,
    mode: JacobianMode,
    stats: &mut JacobianStats,
) -> Result<RealMatrix> {
    match mode {
        JacobianMode::Analytic => {
            let (j, s) = system.jacobian(x)?;
            stats.merge(s);
            Ok(j)
        }
        JacobianMode::FiniteDifference { step } => {
            let mut flops = Flops::new();
            let j = fd_jacobian_fn(
                |v, fl| system.defect(v, fl),
                x,
                step,
                FdScheme::Central,
                &mut flops,
            )?;
            stats.multiplications += flops.multiplications;
            Ok(j)
        }
    }
}

fn iterate<S, F>(system: &S, x0: &RealVector, opts: &SolveOptions, mut step: F) -> Result<SolveReport>
where
    S: ResidualSystem + ?Sized,
    F: FnMut(&RealVector, &RealVector) -> Result<RealVector>,
{
    if x0.len() != system.dim() {
        return Err(Error::Dimension {
            op: "initial guess",
            lhs: Shape::vector(system.dim()),
            rhs: x0.shape(),
        });
    }
    let start = Instant::now();
    let mut flops = Flops::new();
    let mut x = x0.clone();
    let mut r = system.defect(&x, &mut flops)?;
    let initial = r.norm_inf();
    let mut report = SolveReport {
        converged: false,
        iterations: 0,
        stop_reason: StopReason::MaxIterations,
        initial_residual_norm: initial,
        residual_norm_history: Vec::new(),
        step_norm_history: Vec::new(),
        solution: x.clone(),
        jacobian_stats: JacobianStats::default(),
        wall_seconds: 0.0,
    };
    if !initial.is_finite() {
        report.stop_reason = StopReason::NonFinite;
        report.wall_seconds = start.elapsed().as_secs_f64();
        return Ok(report);
    }
    if initial <= opts.tol_residual {
        report.converged = true;
        report.stop_reason = StopReason::ResidualTolerance;
        report.wall_seconds = start.elapsed().as_secs_f64();
        return Ok(report);
    }
    for k in 1..=opts.max_iter {
        let delta = step(&x, &r).map_err(|e| Error::Iteration {
            iteration: k,
            source: Box::new(e),
        })?;
        let delta = delta.scale(opts.damping);
        let next = x.sub(&delta)?;
        report.iterations = k;
        report.step_norm_history.push(delta.norm_inf());
        if !next.all_finite() {
            report.residual_norm_history.push(f64::NAN);
            report.stop_reason = StopReason::NonFinite;
            break;
        }
        x = next;
        let rn = match system.defect(&x, &mut flops) {
            Ok(v) if v.all_finite() => {
                let n = v.norm_inf();
                r = v;
                n
            }
            Ok(_) | Err(Error::Domain { .. }) | Err(Error::NonFinite { .. }) => f64::NAN,
            Err(e) => return Err(e),
        };
        report.residual_norm_history.push(rn);
        if !rn.is_finite() {
            report.stop_reason = StopReason::NonFinite;
            break;
        }
        if rn <= opts.tol_residual {
            report.converged = true;
            report.stop_reason = StopReason::ResidualTolerance;
            break;
        }
        if delta.norm_inf() <= opts.tol_step {
            report.stop_reason = StopReason::StepTolerance;
            break;
        }
    }
    report.solution = x;
    report.wall_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}
