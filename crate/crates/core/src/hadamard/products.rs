//! Hadamard product, power, inverse and function; Kronecker product and the
//! selection matrix bridging the two; SJT row and column scalings.

use crate::error::{Error, Result};
use crate::flops::Flops;
use crate::hadamard::func::ElementwiseFn;
use crate::hadamard::matrix::{RealMatrix, RealVector};

/// Entrywise `A ∘ B`.
pub fn had_product(a: &RealMatrix, b: &RealMatrix) -> Result<RealMatrix> {
    if a.shape() != b.shape() {
        return Err(Error::Dimension {
            op: "Hadamard product",
            lhs: a.shape(),
            rhs: b.shape(),
        });
    }
    Ok(a.zip_map(b, |x, y| x * y))
}

/// Real power of a scalar under the Hadamard-power domain rules.
///
/// Nonnegative integer exponents accept any base, negative integer
/// exponents need a nonzero base, and non-integer exponents need a
/// strictly positive base.
pub(crate) fn checked_pow(base: f64, q: f64) -> std::result::Result<f64, String> {
    let is_int = q.fract() == 0.0 && q.abs() < i32::MAX as f64;
    let v = if is_int {
        if q < 0.0 && base == 0.0 {
            return Err(format!("zero raised to negative power {q}"));
        }
        base.powi(q as i32)
    } else {
        if base <= 0.0 {
            return Err(format!("nonpositive value {base} raised to non-integer power {q}"));
        }
        base.powf(q)
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{base}^{q} overflows"))
    }
}

/// Entrywise power `A^{∘q}`.
pub fn had_power(a: &RealMatrix, q: f64) -> Result<RealMatrix> {
    if !q.is_finite() {
        return Err(Error::InvalidArgument(format!("exponent {q} is not finite")));
    }
    let mut data = Vec::with_capacity(a.rows() * a.cols());
    for (idx, &v) in a.as_slice().iter().enumerate() {
        match checked_pow(v, q) {
            Ok(p) => data.push(p),
            Err(reason) => {
                return Err(Error::Domain {
                    op: "Hadamard power",
                    row: idx / a.cols(),
                    col: idx % a.cols(),
                    reason,
                })
            }
        }
    }
    Ok(RealMatrix::from_raw(a.rows(), a.cols(), data))
}

/// Entrywise reciprocal `A^{∘(-1)}`.
pub fn had_inverse(a: &RealMatrix) -> Result<RealMatrix> {
    if let Some(idx) = a.as_slice().iter().position(|&v| v == 0.0) {
        return Err(Error::Domain {
            op: "Hadamard inverse",
            row: idx / a.cols(),
            col: idx % a.cols(),
            reason: "zero entry".into(),
        });
    }
    Ok(a.map(|v| 1.0 / v))
}

/// Entrywise function `f^∘(A)`.
pub fn had_func(f: &ElementwiseFn, a: &RealMatrix) -> Result<RealMatrix> {
    let mut data = Vec::with_capacity(a.rows() * a.cols());
    for (idx, &v) in a.as_slice().iter().enumerate() {
        let y = f.value(v);
        if !y.is_finite() {
            return Err(Error::Domain {
                op: "Hadamard function",
                row: idx / a.cols(),
                col: idx % a.cols(),
                reason: format!("{}({v}) is not finite", f.name()),
            });
        }
        data.push(y);
    }
    Ok(RealMatrix::from_raw(a.rows(), a.cols(), data))
}

/// Kronecker product `A ⊗ B`.
pub fn kron(a: &RealMatrix, b: &RealMatrix) -> RealMatrix {
    let (ra, ca, rb, cb) = (a.rows(), a.cols(), b.rows(), b.cols());
    let cols = ca * cb;
    let mut data = vec![0.0; ra * rb * cols];
    for i in 0..ra {
        for j in 0..ca {
            let aij = a.get(i, j);
            for k in 0..rb {
                let row = i * rb + k;
                for l in 0..cb {
                    data[row * cols + j * cb + l] = aij * b.get(k, l);
                }
            }
        }
    }
    RealMatrix::from_raw(ra * rb, cols, data)
}

/// `E_N`: the `N²×N` matrix whose k-th column is `e_k ⊗ e_k`.
pub fn selection_matrix(n: usize) -> Result<RealMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("selection matrix needs N >= 1".into()));
    }
    let mut m = vec![0.0; n * n * n];
    for k in 0..n {
        m[(k * n + k) * n + k] = 1.0;
    }
    Ok(RealMatrix::from_raw(n * n, n, m))
}

/// Postmultiplying SJT product `A ◇ U`: row `i` of `A` scaled by `U[i]`.
pub fn sjt_post(a: &RealMatrix, u: &RealVector) -> Result<RealMatrix> {
    sjt_post_counted(a, u, &mut Flops::new())
}

pub fn sjt_post_counted(a: &RealMatrix, u: &RealVector, flops: &mut Flops) -> Result<RealMatrix> {
    if u.len() != a.rows() {
        return Err(Error::Dimension {
            op: "SJT post product",
            lhs: a.shape(),
            rhs: u.shape(),
        });
    }
    flops.add(a.rows() * a.cols());
    let cols = a.cols();
    let mut data = a.clone().into_vec();
    for (i, row) in data.chunks_mut(cols).enumerate() {
        let s = u[i];
        row.iter_mut().for_each(|v| *v *= s);
    }
    Ok(RealMatrix::from_raw(a.rows(), cols, data))
}

/// Premultiplying SJT product `Vᵀ ◇ A`: column `j` of `A` scaled by `V[j]`.
pub fn sjt_pre(v: &RealVector, a: &RealMatrix) -> Result<RealMatrix> {
    sjt_pre_counted(v, a, &mut Flops::new())
}

pub fn sjt_pre_counted(v: &RealVector, a: &RealMatrix, flops: &mut Flops) -> Result<RealMatrix> {
    if v.len() != a.cols() {
        return Err(Error::Dimension {
            op: "SJT pre product",
            lhs: v.shape(),
            rhs: a.shape(),
        });
    }
    flops.add(a.rows() * a.cols());
    let cols = a.cols();
    let mut data = a.clone().into_vec();
    for row in data.chunks_mut(cols) {
        row.iter_mut().zip(v.iter()).for_each(|(x, s)| *x *= s);
    }
    Ok(RealMatrix::from_raw(a.rows(), cols, data))
}
