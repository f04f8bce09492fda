//! Analytic Jacobians of formulation-H trees by the SJT-product chain rules.
//!
//! | node              | Jacobian                                   |
//! |-------------------|--------------------------------------------|
//! | `M·x + c`         | `M`                                        |
//! | `M·u(x)`          | `M·J_u` (`Vᵀ ◇ M` when `J_u` is diagonal)  |
//! | `u ∘ v`           | `J_u ◇ v + J_v ◇ u`                        |
//! | `u^{∘q}`          | `J_u ◇ (q·u^{∘(q-1)})`                     |
//! | `f^∘(u)`          | `J_u ◇ f'^∘(u)`                            |
//! | `k·u`, `Σ u_i`    | `k·J_u`, `Σ J_i`                           |
//! | constant          | zero                                       |
//!
//! Intermediate Jacobians keep their structure (zero, diagonal, dense) so
//! an SJT product against a diagonal costs `n` rather than `n²`
//! multiplications. Child values are evaluated only where a rule needs them.

use serde::Serialize;

use crate::error::Result;
use crate::flops::Flops;
use crate::formulation::eval::{check_input, domain, func_values, power_values};
use crate::formulation::node::{HNode, NodeKind};
use crate::hadamard::{sjt_post_counted, sjt_pre_counted, RealMatrix, RealVector};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct JacobianStats {
    pub multiplications: u64,
    pub node_visits: u64,
}

impl JacobianStats {
    pub fn merge(&mut self, other: JacobianStats) {
        self.multiplications += other.multiplications;
        self.node_visits += other.node_visits;
    }
}

enum Jac {
    Zero,
    Diagonal(RealVector),
    Dense(RealMatrix),
}

impl Jac {
    fn sjt_post(self, v: &RealVector, flops: &mut Flops) -> Result<Jac> {
        Ok(match self {
            Jac::Zero => Jac::Zero,
            Jac::Diagonal(d) => {
                flops.add(d.len());
                Jac::Diagonal(d.zip_map(v, |a, b| a * b))
            }
            Jac::Dense(m) => Jac::Dense(sjt_post_counted(&m, v, flops)?),
        })
    }

    fn scale(self, k: f64, flops: &mut Flops) -> Jac {
        match self {
            Jac::Zero => Jac::Zero,
            Jac::Diagonal(d) => {
                flops.add(d.len());
                Jac::Diagonal(d.scale(k))
            }
            Jac::Dense(m) => {
                flops.add(m.rows() * m.cols());
                Jac::Dense(m.scale(k))
            }
        }
    }

    fn add(self, other: Jac) -> Jac {
        match (self, other) {
            (Jac::Zero, j) | (j, Jac::Zero) => j,
            (Jac::Diagonal(a), Jac::Diagonal(b)) => Jac::Diagonal(a.zip_map(&b, |x, y| x + y)),
            (Jac::Diagonal(d), Jac::Dense(m)) | (Jac::Dense(m), Jac::Diagonal(d)) => {
                let n = m.cols();
                let mut data = m.into_vec();
                for (i, v) in d.iter().enumerate() {
                    data[i * n + i] += v;
                }
                Jac::Dense(RealMatrix::from_raw(d.len(), n, data))
            }
            (Jac::Dense(a), Jac::Dense(b)) => Jac::Dense(a.zip_map(&b, |x, y| x + y)),
        }
    }

    fn premultiply(self, m: &RealMatrix, flops: &mut Flops) -> Result<Jac> {
        Ok(match self {
            Jac::Zero => Jac::Zero,
            Jac::Diagonal(d) => Jac::Dense(sjt_pre_counted(&d, m, flops)?),
            Jac::Dense(j) => Jac::Dense(m.matmul_counted(&j, flops)?),
        })
    }

    fn into_matrix(self, rows: usize, cols: usize) -> RealMatrix {
        match self {
            Jac::Zero => RealMatrix::zeros(rows, cols),
            Jac::Diagonal(d) => RealMatrix::diagonal(&d),
            Jac::Dense(m) => m,
        }
    }
}

struct Walker<'a> {
    x: &'a RealVector,
    flops: Flops,
    visits: u64,
}

impl Walker<'_> {
    /// Jacobian of `node`, plus its value when `want_value` is set.
    fn visit(&mut self, node: &HNode, want_value: bool) -> Result<(Option<RealVector>, Jac)> {
        self.visits += 1;
        let flops = &mut self.flops;
        match node.kind() {
            NodeKind::Affine {
                matrix,
                offset,
                identity,
            } => {
                if *identity {
                    let v = want_value.then(|| self.x.clone());
                    return Ok((v, Jac::Diagonal(RealVector::ones(node.len()))));
                }
                let v = if want_value {
                    Some(matrix.matvec_counted(self.x, flops)?.zip_map(offset, |a, b| a + b))
                } else {
                    None
                };
                Ok((v, Jac::Dense(matrix.clone())))
            }
            NodeKind::Linear { matrix, child } => {
                let (cv, cj) = self.visit(child, want_value)?;
                let flops = &mut self.flops;
                let v = cv.map(|c| matrix.matvec_counted(&c, flops)).transpose()?;
                Ok((v, cj.premultiply(matrix, flops)?))
            }
            NodeKind::HadProduct { left, right } => {
                let (lv, lj) = self.visit(left, true)?;
                let (rv, rj) = self.visit(right, true)?;
                let (lv, rv) = (lv.expect("requested"), rv.expect("requested"));
                let flops = &mut self.flops;
                let j = lj.sjt_post(&rv, flops)?.add(rj.sjt_post(&lv, flops)?);
                let v = want_value.then(|| {
                    flops.add(lv.len());
                    lv.zip_map(&rv, |a, b| a * b)
                });
                Ok((v, j))
            }
            NodeKind::HadPower { child, exponent } => {
                let q = *exponent;
                let (cv, cj) = self.visit(child, true)?;
                let u = cv.expect("requested");
                let flops = &mut self.flops;
                let v = if want_value {
                    flops.add(u.len());
                    Some(power_values(&u, q, "Hadamard power node")?)
                } else {
                    None
                };
                if q == 0.0 {
                    return Ok((v, Jac::Zero));
                }
                flops.add(2 * u.len());
                let slope = power_values(&u, q - 1.0, "Hadamard power derivative")
                    .map_err(|e| match e {
                        crate::error::Error::Domain { row, reason, .. } => domain(
                            "Hadamard power derivative",
                            row,
                            format!("exponent {q} < 1 at a zero entry ({reason})"),
                        ),
                        other => other,
                    })?
                    .scale(q);
                Ok((v, cj.sjt_post(&slope, flops)?))
            }
            NodeKind::HadFunc { func, child } => {
                let (cv, cj) = self.visit(child, true)?;
                let u = cv.expect("requested");
                let flops = &mut self.flops;
                let v = if want_value {
                    flops.add(u.len());
                    Some(func_values(&u, |t| func.value(t), func.name(), "Hadamard function node")?)
                } else {
                    None
                };
                flops.add(u.len());
                let slope = func_values(
                    &u,
                    |t| func.derivative(t),
                    func.name(),
                    "Hadamard function derivative",
                )?;
                Ok((v, cj.sjt_post(&slope, flops)?))
            }
            NodeKind::Scale { factor, child } => {
                let (cv, cj) = self.visit(child, want_value)?;
                let flops = &mut self.flops;
                let v = cv.map(|c| {
                    flops.add(c.len());
                    c.scale(*factor)
                });
                Ok((v, cj.scale(*factor, flops)))
            }
            NodeKind::Sum { children } => {
                let mut value: Option<RealVector> = None;
                let mut jac = Jac::Zero;
                for c in children {
                    let (cv, cj) = self.visit(c, want_value)?;
                    jac = jac.add(cj);
                    if let Some(cv) = cv {
                        value = Some(match value {
                            Some(acc) => acc.zip_map(&cv, |a, b| a + b),
                            None => cv,
                        });
                    }
                }
                Ok((value, jac))
            }
            NodeKind::Const { value } => Ok((want_value.then(|| value.clone()), Jac::Zero)),
        }
    }
}

/// Analytic Jacobian of the tree at `x`.
pub fn jacobian_node(node: &HNode, x: &RealVector) -> Result<RealMatrix> {
    Ok(jacobian_with_stats(node, x)?.0)
}

/// Analytic Jacobian with the exact multiplication count of every product
/// and scaling performed, including child values the rules required.
pub fn jacobian_with_stats(node: &HNode, x: &RealVector) -> Result<(RealMatrix, JacobianStats)> {
    let (_, jac, stats) = value_and_jacobian(node, x, false)?;
    Ok((jac, stats))
}

/// Jacobian and (optionally) value in a single pass.
pub(crate) fn value_and_jacobian(
    node: &HNode,
    x: &RealVector,
    want_value: bool,
) -> Result<(Option<RealVector>, RealMatrix, JacobianStats)> {
    check_input(node, x)?;
    let mut w = Walker {
        x,
        flops: Flops::new(),
        visits: 0,
    };
    let (v, j) = w.visit(node, want_value)?;
    let stats = JacobianStats {
        multiplications: w.flops.multiplications,
        node_visits: w.visits,
    };
    Ok((v, j.into_matrix(node.len(), node.dim()), stats))
}
