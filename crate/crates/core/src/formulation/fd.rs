//! Finite-difference Jacobians, used as an independent check on the
//! analytic SJT rules and as an optional Newton mode.

use crate::error::{Error, Result};
use crate::flops::Flops;
use crate::formulation::eval::{check_input, eval_rec};
use crate::formulation::node::HNode;
use crate::hadamard::{RealMatrix, RealVector};

/// Relative step used when none is given: `h_j = 1e-6·max(1, |x_j|)`.
pub const DEFAULT_FD_STEP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FdScheme {
    /// One-sided: `n + 1` evaluations.
    Forward,
    /// Central: `2n` evaluations.
    #[default]
    Central,
}

/// Finite-difference Jacobian of an arbitrary vector map.
///
/// `f` receives the flop counter so the whole oracle can be instrumented.
pub fn fd_jacobian_fn<F>(
    f: F,
    x: &RealVector,
    h_scale: f64,
    scheme: FdScheme,
    flops: &mut Flops,
) -> Result<RealMatrix>
where
    F: Fn(&RealVector, &mut Flops) -> Result<RealVector>,
{
    if !(h_scale > 0.0 && h_scale.is_finite()) {
        return Err(Error::InvalidArgument(format!("step scale {h_scale} must be positive")));
    }
    let n = x.len();
    let base = match scheme {
        FdScheme::Forward => Some(f(x, flops)?),
        FdScheme::Central => None,
    };
    let mut columns: Vec<RealVector> = Vec::with_capacity(n);
    for j in 0..n {
        let h = h_scale * x[j].abs().max(1.0);
        let shifted = |delta: f64| {
            let mut v = x.as_slice().to_vec();
            v[j] += delta;
            RealVector::from_raw(v)
        };
        let wrap = |e: Error| Error::FiniteDifference {
            column: j,
            source: Box::new(e),
        };
        let col = match &base {
            Some(f0) => {
                let xp = shifted(h);
                let step = xp[j] - x[j];
                let fp = f(&xp, flops).map_err(wrap)?;
                flops.add(fp.len());
                fp.zip_map(f0, |a, b| (a - b) / step)
            }
            None => {
                let xp = shifted(h);
                let xm = shifted(-h);
                let step = xp[j] - xm[j];
                let fp = f(&xp, flops).map_err(wrap)?;
                let fm = f(&xm, flops).map_err(wrap)?;
                flops.add(fp.len());
                fp.zip_map(&fm, |a, b| (a - b) / step)
            }
        };
        columns.push(col);
    }
    let rows = columns[0].len();
    RealMatrix::from_fn(rows, n, |i, j| columns[j][i])
}

/// Central-difference Jacobian of a tree with step `h_scale·max(1, |x_j|)`.
pub fn fd_jacobian(node: &HNode, x: &RealVector, h_scale: f64) -> Result<RealMatrix> {
    fd_jacobian_with_stats(node, x, h_scale, FdScheme::Central).map(|(j, _)| j)
}

/// Finite-difference Jacobian of a tree with the multiplications spent on
/// every evaluation and difference quotient.
pub fn fd_jacobian_with_stats(
    node: &HNode,
    x: &RealVector,
    h_scale: f64,
    scheme: FdScheme,
) -> Result<(RealMatrix, Flops)> {
    check_input(node, x)?;
    let mut flops = Flops::new();
    let j = fd_jacobian_fn(|v, fl| eval_rec(node, v, fl), x, h_scale, scheme, &mut flops)?;
    Ok((j, flops))
}
