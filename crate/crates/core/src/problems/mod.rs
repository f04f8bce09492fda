//! Benchmark problems assembled into formulation-H (and, for the heat slab,
//! traditional) systems, with closed-form references where they exist.

pub mod beam;
pub mod common;
pub mod exact;
pub mod exp_ode;
pub mod heat;
pub mod sin_ode;
pub mod spec;

pub use beam::{
    build_beam, eliminate_u, reduced_jacobian, reduced_residual, relative_jacobian,
    solve_monolithic, solve_uncoupled, CoupledSolution, CoupledSystem, ReducedBeam,
};
pub use exact::{exact_solution, ExactSolution};
pub use exp_ode::build_exp_ode;
pub use heat::{build_heat_novel, build_heat_traditional};
pub use sin_ode::build_sin_ode;
pub use spec::{BeamParams, HeatParams, ProblemKind, ProblemSpec, Scheme, DEFAULT_N};

use crate::assembly::{BasisSet, TraditionalForm};
use crate::error::{Error, Result};
use crate::formulation::HSystem;
use crate::hadamard::RealVector;
use crate::solvers::{solve, Method, ResidualSystem, SolveOptions, SolveReport};

pub const SAMPLE_POINTS: usize = 11;

pub enum ProblemSystem {
    Novel(HSystem),
    Traditional(TraditionalForm),
    Coupled(Box<CoupledSystem>),
}

/// A built problem: its system, the basis used to expand solutions, and
/// the reference solution.
pub struct Problem {
    pub spec: ProblemSpec,
    pub basis: BasisSet,
    pub system: ProblemSystem,
    pub exact: ExactSolution,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSolution {
    pub report: SolveReport,
    /// Coefficients of the primary field (`W` for the beam).
    pub coefficients: RealVector,
    /// Eliminated axial coefficients for the beam.
    pub secondary: Option<RealVector>,
}

pub fn build_problem(spec: &ProblemSpec) -> Result<Problem> {
    spec.validate()?;
    let exact = exact_solution(spec);
    let (basis, system) = match spec.kind {
        ProblemKind::ExpOde => {
            let basis = exp_ode::exp_ode_basis(spec.basis, spec.n)?;
            let sys = exp_ode::build_exp_ode_on(&basis)?;
            (basis, ProblemSystem::Novel(sys))
        }
        ProblemKind::SinOde => {
            let basis = sin_ode::sin_ode_basis(spec.basis, spec.n)?;
            let sys = sin_ode::build_sin_ode_on(&basis)?;
            (basis, ProblemSystem::Novel(sys))
        }
        ProblemKind::HeatSlab => {
            let basis = heat::heat_basis(spec.basis, spec.n, &spec.heat)?;
            let sys = match spec.scheme {
                Scheme::Novel => ProblemSystem::Novel(build_heat_novel(&basis, &spec.heat)?),
                Scheme::Traditional => {
                    ProblemSystem::Traditional(build_heat_traditional(&basis, &spec.heat)?)
                }
            };
            (basis, sys)
        }
        ProblemKind::Beam => {
            let cs = build_beam(&spec.beam, spec.n, spec.basis)?;
            (cs.w_basis().clone(), ProblemSystem::Coupled(Box::new(cs)))
        }
    };
    Ok(Problem {
        spec: *spec,
        basis,
        system,
        exact,
    })
}

impl Problem {
    /// Runs `f` with the system Newton iterates on (the reduced `W`
    /// system for the beam).
    pub fn with_residual_system<T>(&self, f: impl FnOnce(&dyn ResidualSystem) -> T) -> T {
        match &self.system {
            ProblemSystem::Novel(s) => f(s),
            ProblemSystem::Traditional(t) => f(t),
            ProblemSystem::Coupled(c) => f(&ReducedBeam(c)),
        }
    }

    pub fn dim(&self) -> usize {
        self.with_residual_system(|s| s.dim())
    }

    pub fn solve(&self, opts: &SolveOptions) -> Result<ProblemSolution> {
        let x0 = RealVector::zeros(self.dim());
        self.solve_from(&x0, opts)
    }

    pub fn solve_from(&self, x0: &RealVector, opts: &SolveOptions) -> Result<ProblemSolution> {
        if let ProblemSystem::Coupled(cs) = &self.system {
            if opts.method == Method::Picard {
                return Err(Error::InvalidArgument(
                    "Picard iteration is not available for the beam".into(),
                ));
            }
            let sol = solve_uncoupled(cs, x0, opts)?;
            return Ok(ProblemSolution {
                report: sol.report,
                coefficients: sol.w,
                secondary: Some(sol.u),
            });
        }
        let report = self.with_residual_system(|s| solve(s, x0, opts))?;
        Ok(ProblemSolution {
            coefficients: report.solution.clone(),
            report,
            secondary: None,
        })
    }

    /// `(x, û(x))` at equispaced points over the domain.
    pub fn sample(&self, coeffs: &RealVector) -> Result<Vec<(f64, f64)>> {
        let (lo, hi) = self.basis.domain();
        (0..SAMPLE_POINTS)
            .map(|i| {
                let x = lo + (hi - lo) * i as f64 / (SAMPLE_POINTS - 1) as f64;
                Ok((x, self.basis.expand(coeffs.as_slice(), x, 0)?))
            })
            .collect()
    }

    /// Largest deviation from the reference at the sample points.
    pub fn exact_error_max(&self, coeffs: &RealVector) -> Result<Option<f64>> {
        if !self.exact.is_present() {
            return Ok(None);
        }
        let samples = self.sample(coeffs)?;
        Ok(Some(samples.iter().fold(0.0f64, |m, &(x, v)| {
            m.max((v - self.exact.value(x).expect("present")).abs())
        })))
    }
}
