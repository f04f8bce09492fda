use crate::error::{Error, Result, Shape};
use crate::flops::Flops;
use crate::formulation::node::{HNode, NodeKind};
use crate::hadamard::products::checked_pow;
use crate::hadamard::RealVector;

pub(crate) fn check_input(node: &HNode, x: &RealVector) -> Result<()> {
    if x.len() != node.dim() {
        return Err(Error::Dimension {
            op: "formulation-H evaluation",
            lhs: Shape::new(node.len(), node.dim()),
            rhs: x.shape(),
        });
    }
    Ok(())
}

pub(crate) fn domain(op: &'static str, index: usize, reason: String) -> Error {
    Error::Domain {
        op,
        row: index,
        col: 0,
        reason,
    }
}

pub(crate) fn power_values(u: &RealVector, q: f64, op: &'static str) -> Result<RealVector> {
    let mut out = Vec::with_capacity(u.len());
    for (i, &v) in u.iter().enumerate() {
        out.push(checked_pow(v, q).map_err(|r| domain(op, i, r))?);
    }
    Ok(RealVector::from_raw(out))
}

pub(crate) fn func_values(
    u: &RealVector,
    f: impl Fn(f64) -> f64,
    name: &str,
    op: &'static str,
) -> Result<RealVector> {
    let mut out = Vec::with_capacity(u.len());
    for (i, &v) in u.iter().enumerate() {
        let y = f(v);
        if !y.is_finite() {
            return Err(domain(op, i, format!("{name} is not finite at {v}")));
        }
        out.push(y);
    }
    Ok(RealVector::from_raw(out))
}

/// Evaluates the tree at `x`.
pub fn eval_node(node: &HNode, x: &RealVector) -> Result<RealVector> {
    eval_node_counted(node, x, &mut Flops::new())
}

/// Evaluates the tree at `x`, counting scalar multiplications.
pub fn eval_node_counted(node: &HNode, x: &RealVector, flops: &mut Flops) -> Result<RealVector> {
    check_input(node, x)?;
    eval_rec(node, x, flops)
}

pub(crate) fn eval_rec(node: &HNode, x: &RealVector, flops: &mut Flops) -> Result<RealVector> {
    Ok(match node.kind() {
        NodeKind::Affine {
            matrix,
            offset,
            identity,
        } => {
            if *identity {
                x.clone()
            } else {
                matrix.matvec_counted(x, flops)?.zip_map(offset, |a, b| a + b)
            }
        }
        NodeKind::Linear { matrix, child } => {
            let v = eval_rec(child, x, flops)?;
            matrix.matvec_counted(&v, flops)?
        }
        NodeKind::HadProduct { left, right } => {
            let l = eval_rec(left, x, flops)?;
            let r = eval_rec(right, x, flops)?;
            flops.add(l.len());
            l.zip_map(&r, |a, b| a * b)
        }
        NodeKind::HadPower { child, exponent } => {
            let u = eval_rec(child, x, flops)?;
            flops.add(u.len());
            power_values(&u, *exponent, "Hadamard power node")?
        }
        NodeKind::HadFunc { func, child } => {
            let u = eval_rec(child, x, flops)?;
            flops.add(u.len());
            func_values(&u, |v| func.value(v), func.name(), "Hadamard function node")?
        }
        NodeKind::Scale { factor, child } => {
            let u = eval_rec(child, x, flops)?;
            flops.add(u.len());
            u.scale(*factor)
        }
        NodeKind::Sum { children } => {
            let mut acc = eval_rec(&children[0], x, flops)?;
            for c in &children[1..] {
                let v = eval_rec(c, x, flops)?;
                acc = acc.zip_map(&v, |a, b| a + b);
            }
            acc
        }
        NodeKind::Const { value } => value.clone(),
    })
}
