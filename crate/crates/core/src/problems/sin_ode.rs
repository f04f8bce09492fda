//! `y'' + sin(y') + 1 = 0`, `y(0) = 0`, `y(1) = 1`, written as
//! `D·y + d + sin^∘(A·y + a) = b` on a basis vanishing at both ends with
//! lift `g(x) = x`.

use crate::assembly::{assemble_load, boundary_outer, trace, BasisKind, BasisSet, EssentialBc, Polynomial, WeightingScheme};
use crate::error::Result;
use crate::formulation::{HNode, HSystem};
use crate::hadamard::ElementwiseFn;
use crate::problems::common::{quadrature_for, weighted};

pub fn sin_ode_basis(kind: BasisKind, n: usize) -> Result<BasisSet> {
    Ok(BasisSet::new(kind, n, 0.0, 1.0, EssentialBc::Both)?.with_lift(Polynomial::linear(0.0, 1.0)))
}

pub fn build_sin_ode(n: usize, kind: BasisKind) -> Result<HSystem> {
    build_sin_ode_on(&sin_ode_basis(kind, n)?)
}

pub fn build_sin_ode_on(basis: &BasisSet) -> Result<HSystem> {
    let quad = quadrature_for(basis, 2)?;
    let (lo, hi) = basis.domain();
    let g = |x: f64, order: usize| basis.lift().nth_derivative(order).eval(x);

    // ∫ŷ''φ_j = [ŷ'φ_j] − ∫ŷ'φ_j'
    let stiff = weighted(basis, 1, basis, 1, &quad)?;
    let d = boundary_outer(basis, 0, basis, 1, hi)?
        .sub(&boundary_outer(basis, 0, basis, 1, lo)?)?
        .sub(&stiff.matrix)?;
    let d_off = trace(basis, hi, 0)?
        .scale(g(hi, 1))
        .sub(&trace(basis, lo, 0)?.scale(g(lo, 1)))?
        .sub(&stiff.offset)?;

    // ∫ŷ'φ_j = [ŷφ_j] − ∫ŷφ_j'
    let conv = weighted(basis, 0, basis, 1, &quad)?;
    let a = boundary_outer(basis, 0, basis, 0, hi)?
        .sub(&boundary_outer(basis, 0, basis, 0, lo)?)?
        .sub(&conv.matrix)?;
    let a_off = trace(basis, hi, 0)?
        .scale(g(hi, 0))
        .sub(&trace(basis, lo, 0)?.scale(g(lo, 0)))?
        .sub(&conv.offset)?;

    let residual = HNode::sum(vec![
        HNode::affine(d, d_off)?,
        HNode::had_func(ElementwiseFn::sin(), HNode::affine(a, a_off)?),
    ])?;
    let rhs = assemble_load(|_| -1.0, basis, &WeightingScheme::galerkin(), "", &quad)?;
    HSystem::new(residual, rhs)?.with_linear_part(0)
}
