//! Dense LU factorization with partial pivoting.

use crate::error::{Error, Result};
use crate::flops::Flops;
use crate::hadamard::{RealMatrix, RealVector};

/// `P·A = L·U` stored compactly; unit lower triangle implicit.
#[derive(Debug, Clone)]
pub struct LuFactors {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
    sign: f64,
}

impl LuFactors {
    pub fn factor(a: &RealMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Dimension {
                op: "LU factorization",
                lhs: a.shape(),
                rhs: a.transpose().shape(),
            });
        }
        let n = a.rows();
        let mut lu = a.as_slice().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let tiny = f64::EPSILON * n as f64 * a.norm_inf();

        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[i * n + k].abs()))
                .fold((k, -1.0), |best, c| if c.1 > best.1 { c } else { best });
            if pmax <= tiny || pmax == 0.0 {
                return Err(Error::Singular { pivot: k });
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = lu[k * n + k];
            for i in k + 1..n {
                let factor = lu[i * n + k] / pivot;
                lu[i * n + k] = factor;
                if factor != 0.0 {
                    for j in k + 1..n {
                        lu[i * n + j] -= factor * lu[k * n + j];
                    }
                }
            }
        }
        Ok(Self { n, lu, perm, sign })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn solve(&self, b: &RealVector) -> Result<RealVector> {
        self.solve_counted(b, &mut Flops::new())
    }

    /// Forward and back substitution; counts `n²` multiplications.
    #[allow(clippy::needless_range_loop)]
    pub fn solve_counted(&self, b: &RealVector, flops: &mut Flops) -> Result<RealVector> {
        let n = self.n;
        if b.len() != n {
            return Err(Error::Dimension {
                op: "LU solve",
                lhs: crate::error::Shape::new(n, n),
                rhs: b.shape(),
            });
        }
        flops.add(n * n);
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu[i * n + j] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= self.lu[i * n + j] * x[j];
            }
            x[i] = s / self.lu[i * n + i];
        }
        RealVector::new(x).map_err(|_| Error::Singular { pivot: n - 1 })
    }

    /// Solves `A·X = B` column by column.
    pub fn solve_matrix_counted(&self, b: &RealMatrix, flops: &mut Flops) -> Result<RealMatrix> {
        let cols: Vec<RealVector> = (0..b.cols())
            .map(|j| self.solve_counted(&b.column(j), flops))
            .collect::<Result<_>>()?;
        RealMatrix::from_fn(b.rows(), b.cols(), |i, j| cols[j][i])
    }

    pub fn determinant(&self) -> f64 {
        (0..self.n).fold(self.sign, |d, i| d * self.lu[i * self.n + i])
    }
}

/// Solves `A·x = b` by LU with partial pivoting.
pub fn lu_solve(a: &RealMatrix, b: &RealVector) -> Result<RealVector> {
    LuFactors::factor(a)?.solve(b)
}

/// Determinant by LU; exactly zero when the factorization breaks down.
pub fn determinant(a: &RealMatrix) -> Result<f64> {
    match LuFactors::factor(a) {
        Ok(lu) => Ok(lu.determinant()),
        Err(Error::Singular { .. }) => Ok(0.0),
        Err(e) => Err(e),
    }
}
