//! Steady conduction with conductivity `1 + αT`: `((1 + αT)T')' = 0`,
//! `T(0) = T0`, `(1 + αT)T' = q_L` at `x = L`.
//!
//! The novel form weights each factor of `αTT'' + αT'²` separately:
//!
//! ```text
//! α(A·T)^∘2 − α(B·T)∘(H·T) + D·T − α(P·T)∘(Q·T) = −q_L·N(L)
//! ```
//!
//! where the last product is the nonlinear part of the flux defect at `L`.

use crate::assembly::{
    assemble_traditional_quadratic, boundary_outer, trace, BasisKind, BasisSet, Coefficient,
    EssentialBc, LinearOperator1D, Polynomial, TraditionalForm, WeightingScheme,
};
use crate::error::Result;
use crate::formulation::{HNode, HSystem};
use crate::hadamard::{RealMatrix, RealVector};
use crate::problems::common::{quadrature_for, weighted};
use crate::problems::spec::HeatParams;

pub fn heat_basis(kind: BasisKind, n: usize, p: &HeatParams) -> Result<BasisSet> {
    Ok(BasisSet::new(kind, n, 0.0, p.length, EssentialBc::Left)?.with_lift(Polynomial::constant(p.t0)))
}

pub fn build_heat_novel(basis: &BasisSet, p: &HeatParams) -> Result<HSystem> {
    let quad = quadrature_for(basis, 2)?;
    let alpha = p.alpha;
    let (lo, hi) = basis.domain();
    let g = |x: f64, order: usize| basis.lift().nth_derivative(order).eval(x);

    let a = weighted(basis, 1, basis, 0, &quad)?;
    let b = weighted(basis, 0, basis, 0, &quad)?;
    // H·T = −∫T''N_j = ∫T'N_j' − [T'N_j]
    let stiff = weighted(basis, 1, basis, 1, &quad)?;
    let h = stiff
        .matrix
        .sub(&boundary_outer(basis, 0, basis, 1, hi)?)?
        .add(&boundary_outer(basis, 0, basis, 1, lo)?)?;
    let h_off = stiff
        .offset
        .sub(&trace(basis, hi, 0)?.scale(g(hi, 1)))?
        .add(&trace(basis, lo, 0)?.scale(g(lo, 1)))?;
    let d = weighted(basis, 2, basis, 0, &quad)?;

    // Flux defect −[(1 + αT(L))T'(L) − q_L]·N_j(L): the linear piece joins D,
    // the product piece is α(P·T + p)∘(Q·T + q), the q_L piece is the rhs.
    let n_l = trace(basis, hi, 0)?;
    let d_lin = d.matrix.sub(&boundary_outer(basis, 0, basis, 1, hi)?)?;
    let d_lin_off = d.offset.sub(&n_l.scale(g(hi, 1)))?;
    let pm = boundary_outer(basis, 0, basis, 0, hi)?;
    let pv = n_l.scale(g(hi, 0));
    let slope = trace(basis, hi, 1)?;
    let qm = RealMatrix::from_fn(basis.len(), basis.len(), |_, k| slope[k])?;
    let qv = RealVector::filled(basis.len(), g(hi, 1))?;

    let residual = HNode::sum(vec![
        HNode::scale(alpha, HNode::had_power(HNode::affine(a.matrix, a.offset)?, 2.0)?)?,
        HNode::scale(
            -alpha,
            HNode::had_product(HNode::affine(b.matrix, b.offset)?, HNode::affine(h, h_off)?)?,
        )?,
        HNode::affine(d_lin, d_lin_off)?,
        HNode::scale(
            -alpha,
            HNode::had_product(HNode::affine(pm, pv)?, HNode::affine(qm, qv)?)?,
        )?,
    ])?;
    let rhs = n_l.scale(-p.q_l);
    HSystem::new(residual, rhs)?.with_linear_part(2)
}

pub fn build_heat_traditional(basis: &BasisSet, p: &HeatParams) -> Result<TraditionalForm> {
    let quad = quadrature_for(basis, 3)?;
    let alpha = p.alpha;
    let (_, hi) = basis.domain();
    let n = basis.len();
    let g = |x: f64, order: usize| basis.lift().nth_derivative(order).eval(x);
    let scaled = |order: usize| {
        LinearOperator1D::new(vec![(Coefficient::Constant(alpha), order)]).expect("order <= 2")
    };
    let products = [
        (scaled(0), LinearOperator1D::derivative(2)),
        (scaled(1), LinearOperator1D::derivative(1)),
    ];
    let tf = assemble_traditional_quadratic(
        &products,
        &LinearOperator1D::derivative(2),
        |_| 0.0,
        basis,
        &WeightingScheme::galerkin(),
        "",
        &quad,
    )?;
    let (d, gm, b) = tf.into_parts();

    // Flux defect at L with T = g + Σ x_k φ_k expanded.
    let n_l = basis.eval_all(hi, 0)?;
    let phi = basis.eval_all(hi, 0)?;
    let dphi = basis.eval_all(hi, 1)?;
    let (gl, dgl) = (g(hi, 0), g(hi, 1));
    let d = d.sub(&RealMatrix::from_fn(n, n, |j, k| {
        n_l[j] * (dphi[k] + alpha * (gl * dphi[k] + dgl * phi[k]))
    })?)?;
    let gm = gm.sub(&RealMatrix::from_fn(n, n * n, |j, kl| {
        alpha * n_l[j] * phi[kl / n] * dphi[kl % n]
    })?)?;
    let b = b.add(&RealVector::from_fn(n, |j| {
        n_l[j] * (dgl + alpha * gl * dgl - p.q_l)
    })?)?;
    TraditionalForm::new(d, gm, b)
}
