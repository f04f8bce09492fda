//! Assembled residuals checked against the strong-form weighted integrals,
//! evaluated by direct quadrature on the trial expansion.

mod common;

use common::{integrate, mat_rel_err, random_vector, rel_err, rng};
use rand::Rng;
use wrm_core::assembly::{BasisKind, BasisSet};
use wrm_core::formulation::{fd_jacobian_fn, FdScheme};
use wrm_core::hadamard::RealVector;
use wrm_core::problems::beam::{
    build_beam, eliminate_u, reduced_jacobian, reduced_residual, relative_jacobian, solve_monolithic,
    solve_uncoupled, CoupledSystem,
};
use wrm_core::problems::exp_ode::{build_exp_ode_on, exp_ode_basis};
use wrm_core::problems::heat::heat_basis;
use wrm_core::problems::sin_ode::{build_sin_ode_on, sin_ode_basis};
use wrm_core::problems::{
    build_heat_novel, build_heat_traditional, build_problem, exact_solution, BeamParams, HeatParams,
    ProblemKind, ProblemSpec, Scheme,
};
use wrm_core::solvers::SolveOptions;
use wrm_core::Flops;

const ORACLE_TOL: f64 = 1e-10;

fn inner(basis: &BasisSet, c: &[f64], order: usize, j: usize, test_order: usize) -> f64 {
    let (lo, hi) = basis.domain();
    integrate(
        |x| basis.expand(c, x, order).unwrap() * basis.eval(j, x, test_order).unwrap(),
        lo,
        hi,
    )
}

fn vectors(seed: u64, n: usize) -> Vec<RealVector> {
    let mut r = rng(seed);
    let mut out = vec![RealVector::zeros(n)];
    out.extend((0..9).map(|_| random_vector(&mut r, n)));
    out
}

#[test]
fn exp_ode_matches_weighted_integrals() {
    for kind in BasisKind::ALL {
        let basis = exp_ode_basis(kind, 6).unwrap();
        let sys = build_exp_ode_on(&basis).unwrap();
        for c in vectors(61, 6) {
            let got = sys.defect(&c).unwrap();
            let want: Vec<f64> = (0..6)
                .map(|j| inner(&basis, c.as_slice(), 1, j, 0) - (-inner(&basis, c.as_slice(), 0, j, 0)).exp())
                .collect();
            assert!(rel_err(got.as_slice(), &want) <= ORACLE_TOL, "{kind:?}");
        }
    }
}

#[test]
fn sin_ode_matches_weighted_integrals() {
    for kind in BasisKind::ALL {
        let basis = sin_ode_basis(kind, 6).unwrap();
        let sys = build_sin_ode_on(&basis).unwrap();
        for c in vectors(62, 6) {
            let got = sys.defect(&c).unwrap();
            let c = c.as_slice();
            let want: Vec<f64> = (0..6)
                .map(|j| {
                    let ones = integrate(|x| basis.eval(j, x, 0).unwrap(), 0.0, 1.0);
                    inner(&basis, c, 2, j, 0) + inner(&basis, c, 1, j, 0).sin() + ones
                })
                .collect();
            assert!(rel_err(got.as_slice(), &want) <= ORACLE_TOL, "{kind:?}");
        }
    }
}

#[test]
fn sin_ode_residual_at_zero_is_lift_only() {
    let basis = sin_ode_basis(BasisKind::Monomial, 3).unwrap();
    let sys = build_sin_ode_on(&basis).unwrap();
    // ŷ = x: ŷ'' = 0, ∫ŷ'φ_j = ∫φ_j; φ_k = x^k(1 − x) gives ∫φ_k = 1/((k+1)(k+2)).
    let got = sys.defect(&RealVector::zeros(3)).unwrap();
    for k in 1..=3 {
        let m = 1.0 / ((k + 1) * (k + 2)) as f64;
        assert!((got[k - 1] - (m.sin() + m)).abs() < 1e-14);
    }
}

fn heat_params() -> HeatParams {
    HeatParams {
        alpha: 0.8,
        t0: 0.4,
        q_l: 1.3,
        length: 1.2,
    }
}

#[test]
fn heat_novel_matches_factor_wise_weighted_integrals() {
    let p = heat_params();
    for kind in BasisKind::ALL {
        let basis = heat_basis(kind, 5, &p).unwrap();
        let sys = build_heat_novel(&basis, &p).unwrap();
        for c in vectors(63, 5) {
            let got = sys.defect(&c).unwrap();
            let c = c.as_slice();
            let l = p.length;
            let want: Vec<f64> = (0..5)
                .map(|j| {
                    let t1 = inner(&basis, c, 1, j, 0);
                    let t0 = inner(&basis, c, 0, j, 0);
                    let t2 = inner(&basis, c, 2, j, 0);
                    let tl = basis.expand(c, l, 0).unwrap();
                    let dl = basis.expand(c, l, 1).unwrap();
                    p.alpha * t1 * t1 + p.alpha * t0 * t2 + t2
                        - ((1.0 + p.alpha * tl) * dl - p.q_l) * basis.eval(j, l, 0).unwrap()
                })
                .collect();
            assert!(rel_err(got.as_slice(), &want) <= ORACLE_TOL, "{kind:?}");
        }
    }
}

fn beam_oracle(cs: &CoupledSystem, p: &BeamParams, w: &[f64], u: &[f64]) -> Vec<f64> {
    let wb = cs.w_basis();
    let ub = cs.u_basis();
    let n = cs.n();
    let s = p.stiffness;
    let mut out = Vec::with_capacity(2 * n);
    let axial_strain: Vec<f64> = (0..n)
        .map(|j| {
            let u2 = integrate(|x| ub.expand(u, x, 2).unwrap() * wb.eval(j, x, 0).unwrap(), 0.0, 1.0);
            s * (u2 - ub.expand(u, 1.0, 1).unwrap() * wb.eval(j, 1.0, 0).unwrap())
        })
        .collect();
    for j in 0..n {
        let w4 = inner(wb, w, 4, j, 0);
        let bdry = wb.expand(w, 1.0, 3).unwrap() * wb.eval(j, 1.0, 0).unwrap()
            - wb.expand(w, 1.0, 2).unwrap() * wb.eval(j, 1.0, 1).unwrap();
        let w1 = inner(wb, w, 1, j, 0);
        let w2 = inner(wb, w, 2, j, 0);
        let ones = integrate(|x| wb.eval(j, x, 0).unwrap(), 0.0, 1.0);
        out.push(w4 - bdry - (axial_strain[j] + 0.5 * w1 * w1) * w2 - p.load * ones);
    }
    for j in 0..n {
        out.push(axial_strain[j] + inner(wb, w, 1, j, 0) * inner(wb, w, 2, j, 0));
    }
    out
}

#[test]
fn beam_matches_weighted_integrals() {
    let p = BeamParams { load: 3.0, stiffness: 0.2 };
    for kind in BasisKind::ALL {
        let cs = build_beam(&p, 5, kind).unwrap();
        let mut r = rng(64);
        for _ in 0..10 {
            let w = random_vector(&mut r, 5);
            let u = random_vector(&mut r, 5);
            let got = cs.stacked().defect(&w.concat(&u)).unwrap();
            let want = beam_oracle(&cs, &p, w.as_slice(), u.as_slice());
            assert!(rel_err(got.as_slice(), &want) <= ORACLE_TOL, "{kind:?}");
        }
    }
}

#[test]
fn heat_traditional_and_novel_agree_when_linear() {
    let p = HeatParams { alpha: 0.0, ..heat_params() };
    let basis = heat_basis(BasisKind::IntegratedLegendre, 6, &p).unwrap();
    let novel = build_heat_novel(&basis, &p).unwrap();
    let trad = build_heat_traditional(&basis, &p).unwrap();
    for c in vectors(65, 6) {
        let a = novel.defect(&c).unwrap();
        let b = wrm_core::assembly::eval_traditional(&trad, &c).unwrap();
        assert!(rel_err(a.as_slice(), b.as_slice()) < 1e-12);
    }
    for scheme in [Scheme::Novel, Scheme::Traditional] {
        let spec = ProblemSpec::new(ProblemKind::HeatSlab).with_scheme(scheme).with_heat(p);
        let prob = build_problem(&spec).unwrap();
        let sol = prob.solve(&SolveOptions::default()).unwrap();
        assert!(sol.report.converged);
        assert_eq!(sol.report.iterations, 1, "{scheme:?}");
        // The linear profile lies in the trial space.
        assert!(prob.exact_error_max(&sol.coefficients).unwrap().unwrap() < 1e-10);
    }
}

#[test]
fn jacobians_match_finite_differences_for_every_problem() {
    let mut r = rng(66);
    for kind in ProblemKind::ALL {
        for &scheme in kind.schemes() {
            for n in [4, 8] {
                let spec = ProblemSpec::new(kind).with_n(n).with_scheme(scheme);
                let prob = build_problem(&spec).unwrap();
                prob.with_residual_system(|s| {
                    for _ in 0..20 {
                        let x = RealVector::from_fn(n, |_| r.gen_range(-1.0..1.0)).unwrap();
                        let (j, _) = s.jacobian(&x).unwrap();
                        let fd = fd_jacobian_fn(
                            |v, fl| s.defect(v, fl),
                            &x,
                            1e-6,
                            FdScheme::Central,
                            &mut Flops::new(),
                        )
                        .unwrap();
                        let e = mat_rel_err(&j, &fd);
                        assert!(e <= 1e-6, "{kind:?} {scheme:?} n={n}: {e}");
                    }
                });
            }
        }
    }
}

#[test]
fn beam_with_zero_load_rests() {
    let cs = build_beam(&BeamParams { load: 0.0, stiffness: 0.05 }, 6, BasisKind::IntegratedLegendre).unwrap();
    let sol = solve_uncoupled(&cs, &RealVector::zeros(6), &SolveOptions::default()).unwrap();
    assert!(sol.report.converged);
    assert_eq!(sol.report.iterations, 0);
    assert_eq!(sol.w.norm_inf(), 0.0);
    assert_eq!(sol.u.norm_inf(), 0.0);
}

#[test]
fn beam_elimination_identities() {
    let cs = build_beam(&BeamParams::default(), 6, BasisKind::IntegratedLegendre).unwrap();
    let mut r = rng(67);
    for _ in 0..10 {
        let w = random_vector(&mut r, 6);
        let u = eliminate_u(&cs, &w).unwrap();
        let stacked = cs.stacked().defect(&w.concat(&u)).unwrap();
        let (top, bottom) = stacked.split_at(6).unwrap();
        assert!(bottom.norm_inf() <= 1e-12 * top.norm_inf().max(1.0));
        let reduced = reduced_residual(&cs, &w).unwrap();
        assert!(rel_err(reduced.as_slice(), top.as_slice()) <= 1e-12);

        let fd = fd_jacobian_fn(
            |v, _| eliminate_u(&cs, v),
            &w,
            1e-6,
            FdScheme::Central,
            &mut Flops::new(),
        )
        .unwrap();
        assert!(mat_rel_err(&relative_jacobian(&cs, &w).unwrap(), &fd) <= 1e-6);

        let fd = fd_jacobian_fn(
            |v, _| reduced_residual(&cs, v),
            &w,
            1e-6,
            FdScheme::Central,
            &mut Flops::new(),
        )
        .unwrap();
        assert!(mat_rel_err(&reduced_jacobian(&cs, &w).unwrap(), &fd) <= 1e-6);
    }
}

#[test]
fn beam_uncoupled_and_monolithic_agree() {
    for kind in [BasisKind::IntegratedLegendre, BasisKind::Sine] {
        let cs = build_beam(&BeamParams::default(), 6, kind).unwrap();
        let z = RealVector::zeros(6);
        let a = solve_uncoupled(&cs, &z, &SolveOptions::default()).unwrap();
        let b = solve_monolithic(&cs, (&z, &z), &SolveOptions::default()).unwrap();
        assert!(a.report.converged && b.report.converged, "{kind:?}");
        assert!((a.w.sub(&b.w).unwrap()).norm_inf() < 1e-8);
        assert!((a.u.sub(&b.u).unwrap()).norm_inf() < 1e-8);
    }
}

#[test]
fn reference_solutions() {
    let exp = exact_solution(&ProblemSpec::new(ProblemKind::ExpOde));
    assert!((exp.value(1.0).unwrap() - 2f64.ln()).abs() < 1e-15);
    assert!((exp.derivative(0.0).unwrap() - 1.0).abs() < 1e-15);

    let heat = exact_solution(&ProblemSpec::new(ProblemKind::HeatSlab));
    assert!((heat.value(1.0).unwrap() - (3f64.sqrt() - 1.0)).abs() < 1e-15);
    assert!(heat.value(0.0).unwrap().abs() < 1e-15);

    assert!(!exact_solution(&ProblemSpec::new(ProblemKind::SinOde)).is_present());
    assert!(!exact_solution(&ProblemSpec::new(ProblemKind::Beam)).is_present());
}

#[test]
fn default_problems_converge() {
    for kind in ProblemKind::ALL {
        for &scheme in kind.schemes() {
            let prob = build_problem(&ProblemSpec::new(kind).with_scheme(scheme)).unwrap();
            let sol = prob.solve(&SolveOptions::default()).unwrap();
            assert!(sol.report.converged, "{kind:?} {scheme:?}");
            assert!(sol.report.iterations <= 20);
            // Only the traditional scheme carries an accuracy bound.
            if scheme == Scheme::Traditional {
                let e = prob.exact_error_max(&sol.coefficients).unwrap().unwrap();
                assert!(e <= 1e-3, "{kind:?} {scheme:?}: {e}");
            }
        }
    }
}

#[test]
fn beam_monolithic_root_satisfies_stacked_system() {
    let cs = build_beam(&BeamParams::default(), 6, BasisKind::IntegratedLegendre).unwrap();
    let z = RealVector::zeros(6);
    let sol = solve_monolithic(&cs, (&z, &z), &SolveOptions::default()).unwrap();
    assert!(sol.report.converged);
    assert!(cs.stacked().defect(&sol.w.concat(&sol.u)).unwrap().norm_inf() <= 1e-10);
}
