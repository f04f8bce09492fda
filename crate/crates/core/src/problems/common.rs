use crate::assembly::{
    assemble_operator_mixed, AssembledOperator, BasisKind, BasisSet, LinearOperator1D,
    QuadratureRule, WeightFamily, WeightingScheme,
};
use crate::error::Result;

/// Gauss rule for integrands that are products of `factors` basis functions.
///
/// Polynomial bases get `max(n + 4, exact)` points; sine bases get enough
/// points to resolve the highest product frequency to round-off.
pub fn quadrature_for(basis: &BasisSet, factors: usize) -> Result<QuadratureRule> {
    let (lo, hi) = basis.domain();
    let n = basis.len();
    let m = match basis.kind() {
        BasisKind::Sine => factors * n + 20,
        _ => {
            let deg = basis.max_degree().unwrap_or(n) * factors;
            (n + 4).max(deg / 2 + 1)
        }
    };
    QuadratureRule::gauss_legendre(m, lo, hi)
}

/// `M[j][k] = ∫ trial_k^{(a)}·test_j^{(b)}`, offset `∫ g^{(a)}·test_j^{(b)}`.
pub fn weighted(
    trial: &BasisSet,
    trial_order: usize,
    test: &BasisSet,
    test_order: usize,
    quad: &QuadratureRule,
) -> Result<AssembledOperator> {
    let weights = if test_order == 0 {
        WeightingScheme::galerkin()
    } else {
        WeightingScheme::new(WeightFamily::BasisDerivative(test_order))
    };
    assemble_operator_mixed(
        &LinearOperator1D::derivative(trial_order),
        trial,
        test,
        &weights,
        "",
        quad,
    )
}
