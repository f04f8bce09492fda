//! The conventional discretisation of a quadratic operator: the quadratic
//! term is stored as a third-order coefficient array `G` (n × n²) acting
//! on `x ⊗ x`.

use crate::assembly::basis::BasisSet;
use crate::assembly::operator::LinearOperator1D;
use crate::assembly::quadrature::QuadratureRule;
use crate::assembly::weighting::{WeightFamily, WeightingScheme};
use crate::error::{Error, Result, Shape};
use crate::flops::Flops;
use crate::hadamard::{RealMatrix, RealVector};

/// Residual `D·x + G·(x ⊗ x) − b`.
#[derive(Debug, Clone, PartialEq)]
pub struct TraditionalForm {
    d: RealMatrix,
    g: RealMatrix,
    b: RealVector,
}

impl TraditionalForm {
    pub fn new(d: RealMatrix, g: RealMatrix, b: RealVector) -> Result<Self> {
        let n = d.rows();
        if !d.is_square() || g.rows() != n || g.cols() != n * n || b.len() != n {
            return Err(Error::InvalidArgument(format!(
                "traditional form needs D n x n, G n x n^2, b n; got {}, {}, {}",
                d.shape(),
                g.shape(),
                b.shape()
            )));
        }
        Ok(Self { d, g, b })
    }

    pub fn dim(&self) -> usize {
        self.d.rows()
    }

    pub fn d(&self) -> &RealMatrix {
        &self.d
    }

    pub fn g(&self) -> &RealMatrix {
        &self.g
    }

    pub fn b(&self) -> &RealVector {
        &self.b
    }

    pub fn into_parts(self) -> (RealMatrix, RealMatrix, RealVector) {
        (self.d, self.g, self.b)
    }

    fn check(&self, x: &RealVector) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::Dimension {
                op: "traditional form",
                lhs: self.d.shape(),
                rhs: Shape::vector(x.len()),
            });
        }
        Ok(())
    }
}

pub fn eval_traditional(tf: &TraditionalForm, x: &RealVector) -> Result<RealVector> {
    eval_traditional_counted(tf, x, &mut Flops::new())
}

/// Residual with `n² + n³ + n²` multiplications: `x ⊗ x`, `G·(x ⊗ x)`, `D·x`.
pub fn eval_traditional_counted(
    tf: &TraditionalForm,
    x: &RealVector,
    flops: &mut Flops,
) -> Result<RealVector> {
    tf.check(x)?;
    let n = tf.dim();
    let xs = x.as_slice();
    let xx: Vec<f64> = (0..n * n).map(|i| xs[i / n] * xs[i % n]).collect();
    flops.add(n * n);
    let quad = tf.g.matvec_counted(&RealVector::from_raw(xx), flops)?;
    let lin = tf.d.matvec_counted(x, flops)?;
    Ok(RealVector::from_raw(
        (0..n).map(|j| lin[j] + quad[j] - tf.b[j]).collect(),
    ))
}

pub fn jacobian_traditional(tf: &TraditionalForm, x: &RealVector) -> Result<RealMatrix> {
    jacobian_traditional_counted(tf, x, &mut Flops::new())
}

/// `D + G·(I ⊗ x + x ⊗ I)`, costing `2n³` multiplications.
pub fn jacobian_traditional_counted(
    tf: &TraditionalForm,
    x: &RealVector,
    flops: &mut Flops,
) -> Result<RealMatrix> {
    tf.check(x)?;
    let n = tf.dim();
    let mut data = tf.d.as_slice().to_vec();
    for j in 0..n {
        let grow = tf.g.row(j);
        for m in 0..n {
            let mut s = 0.0;
            for l in 0..n {
                s += grow[m * n + l] * x[l] + grow[l * n + m] * x[l];
            }
            data[j * n + m] += s;
        }
    }
    flops.add(2 * n * n * n);
    RealMatrix::new(n, n, data)
}

/// Assembles `Σ_p p(û)·r(û) + L(û) − f` with `û = g + Σ x_k φ_k` into
/// traditional form: lift cross terms go into `D`, constant parts into `b`.
pub fn assemble_traditional_quadratic(
    products: &[(LinearOperator1D, LinearOperator1D)],
    linear: &LinearOperator1D,
    f: impl Fn(f64) -> f64,
    basis: &BasisSet,
    weights: &WeightingScheme,
    tag: &str,
    quad: &QuadratureRule,
) -> Result<TraditionalForm> {
    let n = basis.len();
    let family = weights.resolve(tag);
    let (lo, hi) = basis.domain();
    family.validate(lo, hi)?;
    let weight_degree = match family {
        WeightFamily::Galerkin => basis.max_degree(),
        WeightFamily::BasisDerivative(d) => basis.max_degree().map(|m| m.saturating_sub(*d)),
        WeightFamily::Custom { degree, .. } => *degree,
        WeightFamily::Collocation(_) => None,
        WeightFamily::LeastSquares => {
            return Err(Error::InvalidArgument(
                "least-squares weights are undefined for the traditional quadratic form".into(),
            ))
        }
    };
    if let (Some(wd), Some(td)) = (weight_degree, basis.max_degree()) {
        let lin = linear.image_degree(td);
        let quad_deg = products.iter().try_fold(0usize, |acc, (p, r)| {
            Some(acc.max(p.image_degree(td)? + r.image_degree(td)?))
        });
        if let (Some(a), Some(b)) = (lin, quad_deg) {
            quad.require_degree(a.max(b) + wd)?;
        }
    }

    // Pointwise integrand pieces at a location x.
    let pieces = |x: f64| {
        let lin_k: Vec<f64> = (0..n).map(|k| linear.apply_basis(basis, k, x)).collect();
        let mut cross = vec![0.0; n];
        let mut pair = vec![0.0; n * n];
        let mut constant = f(x) - linear.apply_lift(basis, x);
        for (p, r) in products {
            let pg = p.apply_lift(basis, x);
            let rg = r.apply_lift(basis, x);
            let pk: Vec<f64> = (0..n).map(|k| p.apply_basis(basis, k, x)).collect();
            let rk: Vec<f64> = (0..n).map(|k| r.apply_basis(basis, k, x)).collect();
            constant -= pg * rg;
            for k in 0..n {
                cross[k] += pg * rk[k] + pk[k] * rg;
                for l in 0..n {
                    pair[k * n + l] += pk[k] * rk[l];
                }
            }
        }
        let dk: Vec<f64> = (0..n).map(|k| lin_k[k] + cross[k]).collect();
        (dk, pair, constant)
    };

    let mut d = vec![0.0; n * n];
    let mut g = vec![0.0; n * n * n];
    let mut b = vec![0.0; n];
    let mut accumulate = |x: f64, weight_of: &dyn Fn(usize) -> f64, scale: f64, rows: &[usize]| {
        let (dk, pair, constant) = pieces(x);
        for &j in rows {
            let w = scale * weight_of(j);
            for k in 0..n {
                d[j * n + k] += w * dk[k];
            }
            for (i, v) in pair.iter().enumerate() {
                g[j * n * n + i] += w * v;
            }
            b[j] += w * constant;
        }
    };
    let all: Vec<usize> = (0..n).collect();
    match family {
        WeightFamily::Collocation(nodes) => {
            if nodes.len() != n {
                return Err(Error::InvalidArgument(format!(
                    "{} collocation nodes for {n} unknowns",
                    nodes.len()
                )));
            }
            for (j, &x) in nodes.iter().enumerate() {
                accumulate(x, &|_| 1.0, 1.0, &[j]);
            }
        }
        _ => {
            let wfn = |j: usize, x: f64| match family {
                WeightFamily::Galerkin => basis.eval_unchecked(j, x, 0),
                WeightFamily::BasisDerivative(d) => basis.eval_unchecked(j, x, *d),
                WeightFamily::Custom { weight, .. } => weight(j, x),
                _ => unreachable!("handled above"),
            };
            if let WeightFamily::Custom { count, .. } = family {
                if *count != n {
                    return Err(Error::InvalidArgument(format!(
                        "{count} custom weights for {n} unknowns"
                    )));
                }
            }
            for (&x, &qw) in quad.points().iter().zip(quad.weights()) {
                accumulate(x, &|j| wfn(j, x), qw, &all);
            }
        }
    }
    TraditionalForm::new(
        RealMatrix::new(n, n, d)?,
        RealMatrix::new(n, n * n, g)?,
        RealVector::new(b)?,
    )
}
