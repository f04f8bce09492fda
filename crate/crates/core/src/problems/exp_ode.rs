//! `y' = exp(-y)`, `y(0) = 0` on `[0, 1]`, written as
//! `A·y − exp^∘(−B·y) = 0` with `A` the integrated-by-parts first
//! derivative and `B` the mass matrix.

use crate::assembly::{assemble_load, boundary_outer, BasisKind, BasisSet, EssentialBc, WeightingScheme};
use crate::error::Result;
use crate::formulation::{HNode, HSystem};
use crate::hadamard::{ElementwiseFn, RealVector};
use crate::problems::common::{quadrature_for, weighted};
use crate::problems::exact::{exp_ode_exact, ExactSolution};

pub fn exp_ode_basis(kind: BasisKind, n: usize) -> Result<BasisSet> {
    BasisSet::new(kind, n, 0.0, 1.0, EssentialBc::Left)
}

pub fn build_exp_ode(n: usize, kind: BasisKind) -> Result<(HSystem, ExactSolution)> {
    let basis = exp_ode_basis(kind, n)?;
    Ok((build_exp_ode_on(&basis)?, exp_ode_exact()))
}

/// Builds the system on a given basis, which must vanish at `x = 0`.
pub fn build_exp_ode_on(basis: &BasisSet) -> Result<HSystem> {
    let quad = quadrature_for(basis, 2)?;
    let n = basis.len();
    // ∫ŷ'φ_j = ŷ(1)φ_j(1) − ∫ŷφ_j'
    let a = boundary_outer(basis, 0, basis, 0, 1.0)?.sub(&weighted(basis, 0, basis, 1, &quad)?.matrix)?;
    let b = weighted(basis, 0, basis, 0, &quad)?.matrix;
    let residual = HNode::sum(vec![
        HNode::linear_map(a),
        HNode::scale(
            -1.0,
            HNode::had_func(ElementwiseFn::exp(), HNode::linear_map(b.scale(-1.0))),
        )?,
    ])?;
    let rhs = assemble_load(|_| 0.0, basis, &WeightingScheme::galerkin(), "", &quad)?;
    debug_assert_eq!(rhs, RealVector::zeros(n));
    HSystem::new(residual, rhs)?.with_linear_part(0)
}
