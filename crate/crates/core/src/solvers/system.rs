use crate::assembly::{eval_traditional_counted, jacobian_traditional_counted, TraditionalForm};
use crate::error::Result;
use crate::flops::Flops;
use crate::formulation::{JacobianStats, HSystem};
use crate::hadamard::{RealMatrix, RealVector};

/// A square nonlinear system `F(x) = 0` the iterative solvers can drive.
pub trait ResidualSystem {
    fn dim(&self) -> usize;

    /// `F(x)`, counting multiplications into `flops`.
    fn defect(&self, x: &RealVector, flops: &mut Flops) -> Result<RealVector>;

    /// Closed-form Jacobian of `F` at `x`.
    fn jacobian(&self, x: &RealVector) -> Result<(RealMatrix, JacobianStats)>;

    /// The matrix `D` of a designated linear part `F(x) = D·x + N(x)`.
    fn linear_matrix(&self) -> Option<RealMatrix> {
        None
    }
}

impl ResidualSystem for HSystem {
    fn dim(&self) -> usize {
        HSystem::dim(self)
    }

    fn defect(&self, x: &RealVector, flops: &mut Flops) -> Result<RealVector> {
        self.defect_counted(x, flops)
    }

    fn jacobian(&self, x: &RealVector) -> Result<(RealMatrix, JacobianStats)> {
        HSystem::jacobian(self, x)
    }

    fn linear_matrix(&self) -> Option<RealMatrix> {
        self.linear_part().map(|(d, _)| d.clone())
    }
}

impl ResidualSystem for TraditionalForm {
    fn dim(&self) -> usize {
        TraditionalForm::dim(self)
    }

    fn defect(&self, x: &RealVector, flops: &mut Flops) -> Result<RealVector> {
        eval_traditional_counted(self, x, flops)
    }

    fn jacobian(&self, x: &RealVector) -> Result<(RealMatrix, JacobianStats)> {
        let mut flops = Flops::new();
        let j = jacobian_traditional_counted(self, x, &mut flops)?;
        Ok((
            j,
            JacobianStats {
                multiplications: flops.multiplications,
                node_visits: 0,
            },
        ))
    }

    fn linear_matrix(&self) -> Option<RealMatrix> {
        Some(self.d().clone())
    }
}
