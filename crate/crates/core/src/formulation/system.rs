use crate::error::{Error, Result, Shape};
use crate::flops::Flops;
use crate::formulation::eval::eval_node_counted;
use crate::formulation::jacobian::{value_and_jacobian, JacobianStats};
use crate::formulation::node::{HNode, NodeKind};
use crate::hadamard::{RealMatrix, RealVector};

/// A formulation-H system `residual(x) = rhs`.
///
/// For Picard iteration one affine summand of a top-level sum can be
/// designated as the linear part `D·x + d`.
#[derive(Debug, Clone, PartialEq)]
pub struct HSystem {
    residual: HNode,
    rhs: RealVector,
    linear_part: Option<usize>,
}

impl HSystem {
    pub fn new(residual: HNode, rhs: RealVector) -> Result<Self> {
        if residual.len() != rhs.len() {
            return Err(Error::Dimension {
                op: "formulation-H system",
                lhs: Shape::vector(residual.len()),
                rhs: rhs.shape(),
            });
        }
        Ok(Self {
            residual,
            rhs,
            linear_part: None,
        })
    }

    /// Designates child `index` of the top-level sum as the linear part.
    pub fn with_linear_part(mut self, index: usize) -> Result<Self> {
        let children = match self.residual.kind() {
            NodeKind::Sum { children } => children,
            _ => {
                return Err(Error::InvalidArgument(
                    "linear part needs a top-level sum".into(),
                ))
            }
        };
        match children.get(index).map(HNode::kind) {
            Some(NodeKind::Affine { matrix, .. }) if matrix.is_square() => {}
            Some(NodeKind::Affine { matrix, .. }) => {
                return Err(Error::InvalidArgument(format!(
                    "linear part matrix must be square, got {}",
                    matrix.shape()
                )))
            }
            Some(_) => {
                return Err(Error::InvalidArgument(format!(
                    "sum child {index} is not an affine node"
                )))
            }
            None => {
                return Err(Error::InvalidArgument(format!(
                    "sum has {} children, no child {index}",
                    children.len()
                )))
            }
        }
        self.linear_part = Some(index);
        Ok(self)
    }

    pub fn residual_node(&self) -> &HNode {
        &self.residual
    }

    pub fn rhs(&self) -> &RealVector {
        &self.rhs
    }

    pub fn dim(&self) -> usize {
        self.residual.dim()
    }

    /// `(D, d)` of the designated linear part.
    pub fn linear_part(&self) -> Option<(&RealMatrix, &RealVector)> {
        let idx = self.linear_part?;
        match self.residual.kind() {
            NodeKind::Sum { children } => match children[idx].kind() {
                NodeKind::Affine { matrix, offset, .. } => Some((matrix, offset)),
                _ => None,
            },
            _ => None,
        }
    }

    /// `residual(x) - rhs`.
    pub fn defect(&self, x: &RealVector) -> Result<RealVector> {
        self.defect_counted(x, &mut Flops::new())
    }

    pub fn defect_counted(&self, x: &RealVector, flops: &mut Flops) -> Result<RealVector> {
        eval_node_counted(&self.residual, x, flops)?.sub(&self.rhs)
    }

    pub fn jacobian(&self, x: &RealVector) -> Result<(RealMatrix, JacobianStats)> {
        let (_, j, s) = value_and_jacobian(&self.residual, x, false)?;
        Ok((j, s))
    }
}
