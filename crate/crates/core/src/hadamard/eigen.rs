//! Cyclic Jacobi eigenvalue iteration for small symmetric matrices.

use crate::error::{Error, Result};
use crate::hadamard::RealMatrix;

/// Eigenvalues of a symmetric matrix in ascending order.
///
/// Only the upper triangle is trusted; the input is symmetrized first.
pub fn symmetric_eigenvalues(a: &RealMatrix) -> Result<Vec<f64>> {
    if !a.is_square() {
        return Err(Error::Dimension {
            op: "symmetric eigenvalues",
            lhs: a.shape(),
            rhs: a.transpose().shape(),
        });
    }
    let n = a.rows();
    let mut m: Vec<f64> = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            0.5 * (a.get(i, j) + a.get(j, i))
        })
        .collect();

    let scale = m.iter().map(|v| v * v).sum::<f64>().sqrt();
    if scale == 0.0 {
        return Ok(vec![0.0; n]);
    }
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i * n + j] * m[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k * n + p];
                    let mkq = m[k * n + q];
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p * n + k];
                    let mqk = m[q * n + k];
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| m[i * n + i]).collect();
    eig.sort_by(|a, b| a.total_cmp(b));
    Ok(eig)
}
