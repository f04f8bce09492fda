//! Randomized checks of the Hadamard-product identities and inequalities:
//! commutativity, scalar association, distributivity, the Kronecker
//! bridge `E_Nᵀ(A⊗B)E_M = A∘B`, the Schur eigenvalue bounds and the
//! Oppenheim determinant inequality.
//!
//! The two inequalities are exercised on symmetric positive-semidefinite
//! pairs only; they do not hold for general entrywise-nonnegative matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::hadamard::{
    had_product, kron, selection_matrix, symmetric_eigenvalues, RealMatrix,
};
use crate::solvers::lu::determinant;

/// Tolerance for the algebraic identities (scalar association,
/// distributivity, Kronecker bridge), relative to the operand scale.
pub const IDENTITY_TOL: f64 = 1e-12;
/// Tolerance for the inequalities, relative to the spectral scale.
pub const INEQUALITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub max_error: f64,
    pub tolerance: f64,
}

impl PropertyCheck {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            cases: 0,
            failures: 0,
            max_error: 0.0,
            tolerance,
        }
    }

    fn record(&mut self, error: f64) {
        self.cases += 1;
        self.max_error = self.max_error.max(error);
        if error.is_nan() || error > self.tolerance {
            self.failures += 1;
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct PropertyReport {
    pub seed: u64,
    pub size: usize,
    pub checks: Vec<PropertyCheck>,
}

impl PropertyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(PropertyCheck::passed)
    }
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> RealMatrix {
    RealMatrix::from_fn(rows, cols, |_, _| rng.gen_range(-1.0..1.0)).expect("finite entries")
}

/// `RᵀR` with `R` of random rank `1..=n`, so singular cases appear too.
pub fn random_psd(rng: &mut impl Rng, n: usize) -> RealMatrix {
    let rank = rng.gen_range(1..=n);
    let r = random_matrix(rng, rank, n);
    r.transpose().matmul(&r).expect("conforming")
}

fn max_diff(a: &RealMatrix, b: &RealMatrix) -> f64 {
    a.sub(b).map(|d| d.max_abs()).unwrap_or(f64::INFINITY)
}

fn guarded(err: f64, scale: f64) -> f64 {
    if err == 0.0 {
        0.0
    } else {
        err / scale.max(f64::MIN_POSITIVE)
    }
}

/// Error of the Kronecker bridge for one pair, relative to `|A|·|B|`.
pub fn kronecker_bridge_error(a: &RealMatrix, b: &RealMatrix) -> Result<f64> {
    let en = selection_matrix(a.rows())?;
    let em = selection_matrix(a.cols())?;
    let lhs = en.transpose().matmul(&kron(a, b))?.matmul(&em)?;
    let rhs = had_product(a, b)?;
    Ok(guarded(max_diff(&lhs, &rhs), a.max_abs() * b.max_abs()))
}

/// Violation of the Schur eigenvalue bounds for a PSD pair, relative to
/// the spectral radius; zero when the bounds hold.
pub fn eigenvalue_bound_violation(a: &RealMatrix, b: &RealMatrix) -> Result<f64> {
    let ea = symmetric_eigenvalues(a)?;
    let eh = symmetric_eigenvalues(&had_product(a, b)?)?;
    let diag: Vec<f64> = (0..b.rows()).map(|i| b.get(i, i)).collect();
    let bmin = diag.iter().copied().fold(f64::INFINITY, f64::min);
    let bmax = diag.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lower = ea[0] * bmin;
    let upper = ea[ea.len() - 1] * bmax;
    let radius = eh
        .iter()
        .chain(&[lower, upper])
        .fold(0.0_f64, |m, v| m.max(v.abs()));
    let violation = eh
        .iter()
        .map(|&l| (lower - l).max(l - upper).max(0.0))
        .fold(0.0, f64::max);
    Ok(guarded(violation, radius))
}

/// Violation of `det(A)·det(B) <= det(A∘B)` for a PSD pair, relative to
/// `(ρ(A)·ρ(B))^n`; zero when the inequality holds.
pub fn determinant_violation(a: &RealMatrix, b: &RealMatrix) -> Result<f64> {
    let n = a.rows() as i32;
    let rho = |m: &RealMatrix| -> Result<f64> {
        Ok(symmetric_eigenvalues(m)?
            .iter()
            .fold(0.0_f64, |acc, v| acc.max(v.abs())))
    };
    let scale = (rho(a)? * rho(b)?).powi(n);
    let lhs = determinant(a)? * determinant(b)?;
    let rhs = determinant(&had_product(a, b)?)?;
    Ok(guarded((lhs - rhs).max(0.0), scale))
}

/// Runs every property on `cases` random pairs of `size×size` matrices.
pub fn run_property_suite(cases: usize, seed: u64, size: usize) -> Result<PropertyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut commutativity = PropertyCheck::new("commutativity", 0.0);
    let mut scalar = PropertyCheck::new("scalar-association", IDENTITY_TOL);
    let mut distributivity = PropertyCheck::new("distributivity", IDENTITY_TOL);
    let mut bridge = PropertyCheck::new("kronecker-bridge", IDENTITY_TOL);
    let mut eig = PropertyCheck::new("eigenvalue-bounds", INEQUALITY_TOL);
    let mut det = PropertyCheck::new("determinant-inequality", INEQUALITY_TOL);

    for _ in 0..cases {
        let a = random_matrix(&mut rng, size, size);
        let b = random_matrix(&mut rng, size, size);
        let q = random_matrix(&mut rng, size, size);
        let k: f64 = rng.gen_range(-2.0..2.0);

        let ab = had_product(&a, &b)?;
        let ba = had_product(&b, &a)?;
        let bitwise_equal = ab
            .as_slice()
            .iter()
            .zip(ba.as_slice())
            .all(|(x, y)| x.to_bits() == y.to_bits());
        commutativity.record(if bitwise_equal { 0.0 } else { max_diff(&ab, &ba).max(f64::MIN_POSITIVE) });

        let lhs = ab.scale(k);
        let rhs = had_product(&a.scale(k), &b)?;
        scalar.record(guarded(max_diff(&lhs, &rhs), k.abs() * a.max_abs() * b.max_abs()));

        let lhs = had_product(&a.add(&b)?, &q)?;
        let rhs = had_product(&a, &q)?.add(&had_product(&b, &q)?)?;
        distributivity.record(guarded(
            max_diff(&lhs, &rhs),
            (a.max_abs() + b.max_abs()) * q.max_abs(),
        ));

        bridge.record(kronecker_bridge_error(&a, &b)?);

        let pa = random_psd(&mut rng, size);
        let pb = random_psd(&mut rng, size);
        eig.record(eigenvalue_bound_violation(&pa, &pb)?);
        det.record(determinant_violation(&pa, &pb)?);
    }

    Ok(PropertyReport {
        seed,
        size,
        checks: vec![commutativity, scalar, distributivity, bridge, eig, det],
    })
}
