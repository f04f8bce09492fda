//! Formulation-H analogues of frequently met nonlinear operators, built
//! from differentiation matrices `A_x`, `A_y` acting on nodal unknowns `U`.

use crate::error::{Error, Result};
use crate::formulation::node::HNode;
use crate::hadamard::{ElementwiseFn, RealMatrix, RealVector};

#[derive(Debug, Clone, PartialEq)]
pub enum CatalogForm {
    /// `c(x, y)·u_x` as `{c_j} ∘ (A_x U)`.
    CoeffTimesDerivative { coeff: RealVector, ax: RealMatrix },
    /// `(u_x)^q` as `(A_x U)^{∘q}`.
    Power { ax: RealMatrix, exponent: f64 },
    /// `(u^m)_x (u^n)_y` as `(A_x U^{∘m}) ∘ (A_y U^{∘n})`.
    ProductOfPowers {
        ax: RealMatrix,
        ay: RealMatrix,
        m: f64,
        n: f64,
    },
    /// `sin(u_x)` as `sin^∘(A_x U)`.
    Sine { ax: RealMatrix },
    /// `exp(u_x)` as `exp^∘(A_x U)`.
    Exp { ax: RealMatrix },
}

fn power_of_unknown(dim: usize, exponent: f64) -> Result<HNode> {
    if exponent == 1.0 {
        Ok(HNode::identity(dim))
    } else {
        HNode::had_power(HNode::identity(dim), exponent)
    }
}

fn require_square(m: &RealMatrix, what: &str) -> Result<()> {
    if !m.is_square() {
        return Err(Error::InvalidArgument(format!(
            "{what} must be square, got {}",
            m.shape()
        )));
    }
    Ok(())
}

pub fn build_catalog_form(form: &CatalogForm) -> Result<HNode> {
    match form {
        CatalogForm::CoeffTimesDerivative { coeff, ax } => {
            let deriv = HNode::linear_map(ax.clone());
            let c = HNode::constant(coeff.clone(), ax.cols())?;
            HNode::had_product(c, deriv)
        }
        CatalogForm::Power { ax, exponent } => {
            let deriv = HNode::linear_map(ax.clone());
            if *exponent == 1.0 {
                Ok(deriv)
            } else {
                HNode::had_power(deriv, *exponent)
            }
        }
        CatalogForm::ProductOfPowers { ax, ay, m, n } => {
            require_square(ax, "A_x")?;
            require_square(ay, "A_y")?;
            let left = if *m == 1.0 {
                HNode::linear_map(ax.clone())
            } else {
                HNode::linear(ax.clone(), power_of_unknown(ax.cols(), *m)?)?
            };
            let right = if *n == 1.0 {
                HNode::linear_map(ay.clone())
            } else {
                HNode::linear(ay.clone(), power_of_unknown(ay.cols(), *n)?)?
            };
            HNode::had_product(left, right)
        }
        CatalogForm::Sine { ax } => Ok(HNode::had_func(
            ElementwiseFn::sin(),
            HNode::linear_map(ax.clone()),
        )),
        CatalogForm::Exp { ax } => Ok(HNode::had_func(
            ElementwiseFn::exp(),
            HNode::linear_map(ax.clone()),
        )),
    }
}
