use crate::assembly::basis::{BasisSet, MAX_DERIVATIVE_ORDER};
use crate::assembly::operator::LinearOperator1D;
use crate::assembly::quadrature::QuadratureRule;
use crate::assembly::weighting::{WeightFamily, WeightingScheme};
use crate::error::{Error, Result};
use crate::formulation::HNode;
use crate::hadamard::{RealMatrix, RealVector};

/// Affine factor `matrix·x + offset` of one weighted operator.
#[derive(Debug, Clone, PartialEq)]
pub struct AssembledOperator {
    pub matrix: RealMatrix,
    pub offset: RealVector,
}

impl AssembledOperator {
    pub fn new(matrix: RealMatrix, offset: RealVector) -> Result<Self> {
        if matrix.rows() != offset.len() {
            return Err(Error::InvalidArgument(format!(
                "offset of length {} for a {} matrix",
                offset.len(),
                matrix.shape()
            )));
        }
        Ok(Self { matrix, offset })
    }

    pub fn scale(&self, k: f64) -> Self {
        Self {
            matrix: self.matrix.scale(k),
            offset: self.offset.scale(k),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            matrix: self.matrix.add(&other.matrix)?,
            offset: self.offset.add(&other.offset)?,
        })
    }

    pub fn to_node(&self) -> Result<HNode> {
        HNode::affine(self.matrix.clone(), self.offset.clone())
    }
}

/// Concrete weights for one operator.
enum Weights<'a> {
    Functions {
        count: usize,
        eval: Box<dyn Fn(usize, f64) -> f64 + 'a>,
        degree: Option<usize>,
    },
    Points(&'a [f64]),
}

fn resolve<'a>(
    family: &'a WeightFamily,
    test: &'a BasisSet,
    op: Option<&'a LinearOperator1D>,
) -> Result<Weights<'a>> {
    let (lo, hi) = test.domain();
    family.validate(lo, hi)?;
    Ok(match family {
        WeightFamily::Galerkin => Weights::Functions {
            count: test.len(),
            eval: Box::new(move |j, x| test.eval_unchecked(j, x, 0)),
            degree: test.max_degree(),
        },
        WeightFamily::BasisDerivative(order) => {
            let order = *order;
            if order > MAX_DERIVATIVE_ORDER {
                return Err(Error::DerivativeOrder {
                    kind: test.kind().name(),
                    max: MAX_DERIVATIVE_ORDER,
                    requested: order,
                });
            }
            Weights::Functions {
                count: test.len(),
                eval: Box::new(move |j, x| test.eval_unchecked(j, x, order)),
                degree: test.max_degree().map(|d| d.saturating_sub(order)),
            }
        }
        WeightFamily::LeastSquares => {
            let op = op.ok_or_else(|| {
                Error::InvalidArgument("least-squares weights need an operator".into())
            })?;
            Weights::Functions {
                count: test.len(),
                eval: Box::new(move |j, x| op.apply_basis(test, j, x)),
                degree: test.max_degree().and_then(|d| op.image_degree(d)),
            }
        }
        WeightFamily::Custom {
            count,
            weight,
            degree,
        } => Weights::Functions {
            count: *count,
            eval: Box::new(move |j, x| weight(j, x)),
            degree: *degree,
        },
        WeightFamily::Collocation(nodes) => Weights::Points(nodes),
    })
}

fn check_same_domain(a: &BasisSet, quad: &QuadratureRule) -> Result<()> {
    let (lo, hi) = a.domain();
    let (qlo, qhi) = quad.domain();
    if (lo - qlo).abs() > 1e-14 * lo.abs().max(1.0) || (hi - qhi).abs() > 1e-14 * hi.abs().max(1.0) {
        return Err(Error::InvalidArgument(format!(
            "quadrature on [{qlo}, {qhi}] for a basis on [{lo}, {hi}]"
        )));
    }
    Ok(())
}

/// Weighted residual of a linear operator on the trial basis (with its lift):
/// `matrix[j][k] = ∫ op(φ_k)·W_j`, `offset[j] = ∫ op(g)·W_j`.
pub fn assemble_operator(
    op: &LinearOperator1D,
    basis: &BasisSet,
    weights: &WeightingScheme,
    tag: &str,
    quad: &QuadratureRule,
) -> Result<AssembledOperator> {
    assemble_operator_mixed(op, basis, basis, weights, tag, quad)
}

/// As [`assemble_operator`] with weights drawn from a separate test basis.
pub fn assemble_operator_mixed(
    op: &LinearOperator1D,
    trial: &BasisSet,
    test: &BasisSet,
    weights: &WeightingScheme,
    tag: &str,
    quad: &QuadratureRule,
) -> Result<AssembledOperator> {
    check_same_domain(trial, quad)?;
    check_same_domain(test, quad)?;
    let n = trial.len();
    match resolve(weights.resolve(tag), test, Some(op))? {
        Weights::Points(nodes) => {
            let matrix = RealMatrix::from_fn(nodes.len(), n, |j, k| op.apply_basis(trial, k, nodes[j]))?;
            let offset = RealVector::from_fn(nodes.len(), |j| op.apply_lift(trial, nodes[j]))?;
            AssembledOperator::new(matrix, offset)
        }
        Weights::Functions { count, eval, degree } => {
            if let (Some(wd), Some(td)) = (degree, trial.max_degree()) {
                let lift_deg = if trial.lift().is_zero() {
                    Some(0)
                } else {
                    op.image_degree(trial.lift().degree())
                };
                if let (Some(opd), Some(ld)) = (op.image_degree(td), lift_deg) {
                    quad.require_degree(opd.max(ld) + wd)?;
                }
            }
            let pts = quad.points();
            let qw = quad.weights();
            let w: Vec<Vec<f64>> = pts
                .iter()
                .map(|&x| (0..count).map(|j| eval(j, x)).collect())
                .collect();
            let phi: Vec<Vec<f64>> = pts
                .iter()
                .map(|&x| (0..n).map(|k| op.apply_basis(trial, k, x)).collect())
                .collect();
            let lift: Vec<f64> = pts.iter().map(|&x| op.apply_lift(trial, x)).collect();
            let matrix = RealMatrix::from_fn(count, n, |j, k| {
                (0..pts.len()).map(|q| qw[q] * w[q][j] * phi[q][k]).sum()
            })?;
            let offset = RealVector::from_fn(count, |j| {
                (0..pts.len()).map(|q| qw[q] * w[q][j] * lift[q]).sum()
            })?;
            AssembledOperator::new(matrix, offset)
        }
    }
}

/// `∫ f·W_j` (or `f(x_j)` under collocation).
pub fn assemble_load(
    f: impl Fn(f64) -> f64,
    basis: &BasisSet,
    weights: &WeightingScheme,
    tag: &str,
    quad: &QuadratureRule,
) -> Result<RealVector> {
    load_impl(&f, basis, weights.resolve(tag), None, quad)
}

/// Load vector for least-squares weighting, where `W_j = op(φ_j)`.
pub fn assemble_load_with_operator(
    f: impl Fn(f64) -> f64,
    op: &LinearOperator1D,
    basis: &BasisSet,
    weights: &WeightingScheme,
    tag: &str,
    quad: &QuadratureRule,
) -> Result<RealVector> {
    load_impl(&f, basis, weights.resolve(tag), Some(op), quad)
}

fn load_impl(
    f: &dyn Fn(f64) -> f64,
    basis: &BasisSet,
    family: &WeightFamily,
    op: Option<&LinearOperator1D>,
    quad: &QuadratureRule,
) -> Result<RealVector> {
    check_same_domain(basis, quad)?;
    match resolve(family, basis, op)? {
        Weights::Points(nodes) => RealVector::from_fn(nodes.len(), |j| f(nodes[j])),
        Weights::Functions { count, eval, .. } => {
            RealVector::from_fn(count, |j| quad.integrate(|x| f(x) * eval(j, x)))
        }
    }
}

/// `M[j][k] = test_j^{(a)}(x)·trial_k^{(b)}(x)`, the shape of boundary
/// terms left by integration by parts.
pub fn boundary_outer(
    test: &BasisSet,
    test_order: usize,
    trial: &BasisSet,
    trial_order: usize,
    x: f64,
) -> Result<RealMatrix> {
    let a = test.eval_all(x, test_order)?;
    let b = trial.eval_all(x, trial_order)?;
    RealMatrix::from_fn(a.len(), b.len(), |j, k| a[j] * b[k])
}

/// `[φ_0^{(order)}(x), ..., φ_{n-1}^{(order)}(x)]`.
pub fn trace(basis: &BasisSet, x: f64, order: usize) -> Result<RealVector> {
    RealVector::new(basis.eval_all(x, order)?)
}
