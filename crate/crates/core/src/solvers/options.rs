use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formulation::{JacobianStats, DEFAULT_FD_STEP};
use crate::hadamard::RealVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    #[default]
    Newton,
    Picard,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Newton => "newton",
            Method::Picard => "picard",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "newton" => Ok(Method::Newton),
            "picard" => Ok(Method::Picard),
            other => Err(Error::InvalidArgument(format!(
                "unknown method `{other}` (expected newton or picard)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum JacobianMode {
    /// Closed-form SJT Jacobian.
    #[default]
    Analytic,
    /// Central differences with step `step·max(1, |x_j|)`.
    FiniteDifference { step: f64 },
}

impl JacobianMode {
    pub fn finite_difference() -> Self {
        JacobianMode::FiniteDifference { step: DEFAULT_FD_STEP }
    }

    pub fn name(self) -> &'static str {
        match self {
            JacobianMode::Analytic => "sjt",
            JacobianMode::FiniteDifference { .. } => "fd",
        }
    }
}

impl FromStr for JacobianMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sjt" | "analytic" => Ok(JacobianMode::Analytic),
            "fd" | "finite-difference" => Ok(JacobianMode::finite_difference()),
            other => Err(Error::InvalidArgument(format!(
                "unknown jacobian mode `{other}` (expected sjt or fd)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub method: Method,
    pub jacobian: JacobianMode,
    pub tol_residual: f64,
    pub tol_step: f64,
    pub max_iter: usize,
    pub damping: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            method: Method::Newton,
            jacobian: JacobianMode::Analytic,
            tol_residual: 1e-10,
            tol_step: 1e-12,
            max_iter: 50,
            damping: 1.0,
        }
    }
}

impl SolveOptions {
    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v > 0.0 && v.is_finite();
        if !positive(self.tol_residual) {
            return Err(Error::InvalidArgument(format!(
                "tol_residual must be positive, got {}",
                self.tol_residual
            )));
        }
        if !positive(self.tol_step) {
            return Err(Error::InvalidArgument(format!(
                "tol_step must be positive, got {}",
                self.tol_step
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidArgument("max_iter must be at least 1".into()));
        }
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "damping must lie in (0, 1], got {}",
                self.damping
            )));
        }
        if let JacobianMode::FiniteDifference { step } = self.jacobian {
            if !positive(step) {
                return Err(Error::InvalidArgument(format!(
                    "finite-difference step must be positive, got {step}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    ResidualTolerance,
    StepTolerance,
    MaxIterations,
    NonFinite,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub converged: bool,
    pub iterations: usize,
    pub stop_reason: StopReason,
    /// Residual max-norm at the starting point.
    pub initial_residual_norm: f64,
    /// Residual max-norm after each iteration.
    pub residual_norm_history: Vec<f64>,
    /// Max-norm of each applied step.
    pub step_norm_history: Vec<f64>,
    pub solution: RealVector,
    pub jacobian_stats: JacobianStats,
    pub wall_seconds: f64,
}

impl SolveReport {
    pub fn final_residual_norm(&self) -> f64 {
        self.residual_norm_history
            .last()
            .copied()
            .unwrap_or(self.initial_residual_norm)
    }
}
