mod common;

use common::{integrate, mat_rel_err, random_vector, rel_err, rng};
use rand::Rng;
use wrm_core::assembly::{
    assemble_load, assemble_operator, eval_traditional, jacobian_traditional, BasisKind, BasisSet,
    Coefficient, EssentialBc, LinearOperator1D, Polynomial, QuadratureRule, TraditionalForm,
    WeightFamily, WeightingScheme,
};
use wrm_core::formulation::{fd_jacobian_fn, FdScheme};
use wrm_core::hadamard::{symmetric_eigenvalues, RealMatrix, RealVector};
use wrm_core::problems::{build_heat_traditional, heat::heat_basis, HeatParams};
use wrm_core::solvers::LuFactors;
use wrm_core::Flops;

const BCS: [EssentialBc; 3] = [EssentialBc::Left, EssentialBc::Both, EssentialBc::LeftClamped];

#[test]
fn galerkin_gram_is_positive_definite() {
    for kind in BasisKind::ALL {
        for bc in BCS {
            for n in 1..=10 {
                let b = BasisSet::new(kind, n, -0.5, 1.5, bc).unwrap();
                let q = QuadratureRule::gauss_legendre(3 * n + 20, -0.5, 1.5).unwrap();
                let g = assemble_operator(&LinearOperator1D::identity(), &b, &WeightingScheme::galerkin(), "", &q)
                    .unwrap()
                    .matrix;
                assert!(mat_rel_err(&g, &g.transpose()) < 1e-14);
                let ev = symmetric_eigenvalues(&g).unwrap();
                assert!(ev[0] > 0.0, "{kind:?} {bc:?} n={n}: {ev:?}");
            }
        }
    }
}

#[test]
fn bases_are_independent_and_satisfy_conditions() {
    for kind in BasisKind::ALL {
        for bc in BCS {
            let n = 7;
            let b = BasisSet::new(kind, n, 0.0, 2.0, bc).unwrap();
            b.check_boundary_conditions().unwrap();
            let pts: Vec<f64> = (0..n).map(|i| 2.0 * (i as f64 + 0.5) / n as f64).collect();
            let m = RealMatrix::from_fn(n, n, |i, k| b.eval(k, pts[i], 0).unwrap()).unwrap();
            assert!(LuFactors::factor(&m).is_ok(), "{kind:?} {bc:?}");
        }
    }
}

#[test]
fn quadrature_exact_on_random_polynomials() {
    let mut r = rng(41);
    for m in 1..=15 {
        let deg = 2 * m - 1;
        let p = Polynomial::new((0..=deg).map(|_| r.gen_range(-1.0..1.0)).collect());
        let (lo, hi) = (-0.7, 1.9);
        let q = QuadratureRule::gauss_legendre(m, lo, hi).unwrap();
        let anti = p.integral_from(lo);
        let want = anti.eval(hi);
        let got = q.integrate(|x| p.eval(x));
        assert!((got - want).abs() <= 1e-13 * want.abs().max(1.0), "m={m}: {got} vs {want}");
    }
}

#[test]
fn collocation_sifts_pointwise_values() {
    let b = BasisSet::new(BasisKind::IntegratedLegendre, 5, 0.0, 1.0, EssentialBc::Both)
        .unwrap()
        .with_lift(Polynomial::linear(0.0, 1.0));
    let nodes = vec![0.1, 0.3, 0.5, 0.7, 0.9];
    let q = QuadratureRule::gauss_legendre(9, 0.0, 1.0).unwrap();
    let op = LinearOperator1D::new(vec![
        (Coefficient::Function(std::sync::Arc::new(|x: f64| 1.0 + x * x)), 2),
        (Coefficient::Constant(-3.0), 0),
    ])
    .unwrap();
    let a = assemble_operator(&op, &b, &WeightingScheme::new(WeightFamily::Collocation(nodes.clone())), "", &q)
        .unwrap();
    for (j, &x) in nodes.iter().enumerate() {
        for k in 0..5 {
            let want = (1.0 + x * x) * b.eval(k, x, 2).unwrap() - 3.0 * b.eval(k, x, 0).unwrap();
            assert_eq!(a.matrix[(j, k)], want);
        }
        assert_eq!(a.offset[j], -3.0 * x);
    }
}

#[test]
fn sine_linearity_and_weight_overrides() {
    let b = BasisSet::new(BasisKind::Sine, 4, 0.0, 1.0, EssentialBc::Left).unwrap();
    let q = QuadratureRule::gauss_legendre(40, 0.0, 1.0).unwrap();
    let w = WeightingScheme::galerkin().with("conv", WeightFamily::BasisDerivative(1));
    let d1 = LinearOperator1D::derivative(1);
    let d2 = LinearOperator1D::scaled_derivative(2.0, 2);
    let parts = assemble_operator(&d1, &b, &w, "", &q)
        .unwrap()
        .add(&assemble_operator(&d2, &b, &w, "", &q).unwrap())
        .unwrap();
    let sum = assemble_operator(&d1.plus(&d2), &b, &w, "", &q).unwrap();
    assert!(sum.matrix.sub(&parts.matrix).unwrap().max_abs() <= 1e-13 * parts.matrix.max_abs());

    let galerkin = assemble_operator(&d1, &b, &w, "mass", &q).unwrap().matrix;
    let conv = assemble_operator(&d1, &b, &w, "conv", &q).unwrap().matrix;
    // ∫φ_k'φ_j' is symmetric; ∫φ_k'φ_j is not.
    assert!(mat_rel_err(&conv, &conv.transpose()) < 1e-13);
    assert!(mat_rel_err(&galerkin, &galerkin.transpose()) > 1e-3);
}

#[test]
fn least_squares_weights_give_symmetric_gram() {
    let b = BasisSet::new(BasisKind::Monomial, 5, 0.0, 1.0, EssentialBc::Both).unwrap();
    let q = QuadratureRule::gauss_legendre(10, 0.0, 1.0).unwrap();
    let op = LinearOperator1D::derivative(2).plus(&LinearOperator1D::identity());
    let a = assemble_operator(&op, &b, &WeightingScheme::new(WeightFamily::LeastSquares), "", &q)
        .unwrap()
        .matrix;
    assert!(mat_rel_err(&a, &a.transpose()) < 1e-13);
    assert!(symmetric_eigenvalues(&a).unwrap()[0] > 0.0);
}

#[test]
fn custom_weights() {
    let b = BasisSet::new(BasisKind::Monomial, 3, 0.0, 1.0, EssentialBc::Left).unwrap();
    let q = QuadratureRule::gauss_legendre(8, 0.0, 1.0).unwrap();
    let w = WeightingScheme::new(WeightFamily::custom(2, Some(0), |j, _| (j + 1) as f64));
    let load = assemble_load(|x| x, &b, &w, "", &q).unwrap();
    assert!((load[0] - 0.5).abs() < 1e-15 && (load[1] - 1.0).abs() < 1e-15);
}

fn heat_params() -> HeatParams {
    HeatParams {
        alpha: 0.7,
        t0: 0.3,
        q_l: 1.2,
        length: 1.5,
    }
}

/// Galerkin residual of the full integrand plus flux defect, by direct quadrature.
fn heat_traditional_oracle(basis: &BasisSet, p: &HeatParams, c: &[f64]) -> Vec<f64> {
    let t = |x: f64, d: usize| basis.expand(c, x, d).unwrap();
    let l = p.length;
    (0..basis.len())
        .map(|j| {
            let nj = |x: f64| basis.eval(j, x, 0).unwrap();
            let body = integrate(
                |x| (t(x, 2) + p.alpha * t(x, 0) * t(x, 2) + p.alpha * t(x, 1).powi(2)) * nj(x),
                0.0,
                l,
            );
            body - ((1.0 + p.alpha * t(l, 0)) * t(l, 1) - p.q_l) * nj(l)
        })
        .collect()
}

#[test]
fn traditional_heat_residual_matches_direct_quadrature() {
    let p = heat_params();
    let mut r = rng(42);
    for kind in BasisKind::ALL {
        let basis = heat_basis(kind, 5, &p).unwrap();
        let tf = build_heat_traditional(&basis, &p).unwrap();
        for _ in 0..5 {
            let c = random_vector(&mut r, 5);
            let got = eval_traditional(&tf, &c).unwrap();
            let want = heat_traditional_oracle(&basis, &p, c.as_slice());
            assert!(rel_err(got.as_slice(), &want) <= 1e-10, "{kind:?}");
        }
    }
}

#[test]
fn traditional_jacobian_and_permutation() {
    let p = heat_params();
    let basis = heat_basis(BasisKind::IntegratedLegendre, 4, &p).unwrap();
    let tf = build_heat_traditional(&basis, &p).unwrap();
    let mut r = rng(43);
    let x = random_vector(&mut r, 4);
    let fd = fd_jacobian_fn(
        |v, fl| wrm_core::assembly::eval_traditional_counted(&tf, v, fl),
        &x,
        1e-6,
        FdScheme::Central,
        &mut Flops::new(),
    )
    .unwrap();
    assert!(mat_rel_err(&jacobian_traditional(&tf, &x).unwrap(), &fd) <= 1e-6);

    let perm = [2usize, 0, 3, 1];
    let n = 4;
    let d = RealMatrix::from_fn(n, n, |i, k| tf.d()[(perm[i], perm[k])]).unwrap();
    let g = RealMatrix::from_fn(n, n * n, |i, kl| tf.g()[(perm[i], perm[kl / n] * n + perm[kl % n])]).unwrap();
    let b = RealVector::from_fn(n, |i| tf.b()[perm[i]]).unwrap();
    let permuted = TraditionalForm::new(d, g, b).unwrap();
    let px = RealVector::from_fn(n, |i| x[perm[i]]).unwrap();
    let lhs = eval_traditional(&permuted, &px).unwrap();
    let rhs = eval_traditional(&tf, &x).unwrap();
    for i in 0..n {
        assert!((lhs[i] - rhs[perm[i]]).abs() <= 1e-13 * rhs.norm_inf().max(1.0));
    }
}
