//! Global smooth trial bases on an interval.
//!
//! Every kind has a power-series or closed-form representation, so
//! derivatives of any order up to [`MAX_DERIVATIVE_ORDER`] are exact.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::assembly::polynomial::{legendre_polynomials, Polynomial};
use crate::error::{Error, Result};

pub const MAX_DERIVATIVE_ORDER: usize = 4;
pub const MAX_MONOMIAL_COUNT: usize = 10;
pub const MAX_LEGENDRE_COUNT: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisKind {
    Sine,
    IntegratedLegendre,
    Monomial,
}

impl BasisKind {
    pub const ALL: [BasisKind; 3] = [
        BasisKind::Sine,
        BasisKind::IntegratedLegendre,
        BasisKind::Monomial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BasisKind::Sine => "sine",
            BasisKind::IntegratedLegendre => "legendre",
            BasisKind::Monomial => "monomial",
        }
    }

    pub fn is_polynomial(self) -> bool {
        !matches!(self, BasisKind::Sine)
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BasisKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sine" => Ok(BasisKind::Sine),
            "legendre" | "integrated-legendre" => Ok(BasisKind::IntegratedLegendre),
            "monomial" | "monomial-lifted" => Ok(BasisKind::Monomial),
            other => Err(Error::InvalidArgument(format!(
                "unknown basis `{other}` (expected sine, legendre or monomial)"
            ))),
        }
    }
}

/// Homogeneous essential conditions every basis function satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EssentialBc {
    /// `φ(lo) = 0`.
    Left,
    /// `φ(lo) = φ(hi) = 0`.
    Both,
    /// `φ(lo) = φ'(lo) = 0`.
    LeftClamped,
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Sine { omega: Vec<f64>, clamped: bool },
    /// Polynomials in a local variable `s = s0 + s1·x`.
    Poly { funcs: Vec<Polynomial>, s0: f64, s1: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct BasisSet {
    kind: BasisKind,
    bc: EssentialBc,
    lo: f64,
    hi: f64,
    repr: Repr,
    lift: Polynomial,
}

impl BasisSet {
    pub fn new(kind: BasisKind, n: usize, lo: f64, hi: f64, bc: EssentialBc) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("basis needs at least one function".into()));
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidArgument(format!("invalid domain [{lo}, {hi}]")));
        }
        let len = hi - lo;
        let repr = match kind {
            BasisKind::Sine => {
                let omega = (1..=n)
                    .map(|k| {
                        let k = k as f64;
                        match bc {
                            EssentialBc::Both => k * PI,
                            EssentialBc::Left | EssentialBc::LeftClamped => (k - 0.5) * PI,
                        }
                    })
                    .collect();
                Repr::Sine {
                    omega,
                    clamped: bc == EssentialBc::LeftClamped,
                }
            }
            BasisKind::IntegratedLegendre => {
                if n > MAX_LEGENDRE_COUNT {
                    return Err(Error::InvalidArgument(format!(
                        "legendre basis is limited to n <= {MAX_LEGENDRE_COUNT}, got {n}"
                    )));
                }
                let p = legendre_polynomials(n + 1);
                // psi_k = integral of P_{k-1} from -1; psi_1 = t + 1 is the only
                // one not vanishing at t = 1.
                let psi: Vec<Polynomial> = (0..=n).map(|k| p[k].integral_from(-1.0)).collect();
                let funcs = match bc {
                    EssentialBc::Left => psi[..n].to_vec(),
                    EssentialBc::Both => psi[1..=n].to_vec(),
                    EssentialBc::LeftClamped => {
                        psi[..n].iter().map(|f| f.integral_from(-1.0)).collect()
                    }
                };
                Repr::Poly {
                    funcs,
                    s0: -1.0 - 2.0 * lo / len,
                    s1: 2.0 / len,
                }
            }
            BasisKind::Monomial => {
                if n > MAX_MONOMIAL_COUNT {
                    return Err(Error::InvalidArgument(format!(
                        "monomial basis is limited to n <= {MAX_MONOMIAL_COUNT}, got {n}"
                    )));
                }
                let xi = |k: usize| {
                    let mut c = vec![0.0; k + 1];
                    c[k] = 1.0;
                    Polynomial::new(c)
                };
                let funcs = (1..=n)
                    .map(|k| match bc {
                        EssentialBc::Left => xi(k),
                        EssentialBc::Both => xi(k).mul(&Polynomial::linear(1.0, -1.0)),
                        EssentialBc::LeftClamped => xi(k + 1),
                    })
                    .collect();
                Repr::Poly {
                    funcs,
                    s0: -lo / len,
                    s1: 1.0 / len,
                }
            }
        };
        let basis = Self {
            kind,
            bc,
            lo,
            hi,
            repr,
            lift: Polynomial::zero(),
        };
        basis.check_boundary_conditions()?;
        Ok(basis)
    }

    /// Sets the lift `g(x)`, a polynomial in the physical coordinate.
    pub fn with_lift(mut self, lift: Polynomial) -> Self {
        self.lift = lift;
        self
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn bc(&self) -> EssentialBc {
        self.bc
    }

    pub fn len(&self) -> usize {
        match &self.repr {
            Repr::Sine { omega, .. } => omega.len(),
            Repr::Poly { funcs, .. } => funcs.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn lift(&self) -> &Polynomial {
        &self.lift
    }

    fn check_order(&self, order: usize) -> Result<()> {
        if order > MAX_DERIVATIVE_ORDER {
            return Err(Error::DerivativeOrder {
                kind: self.kind.name(),
                max: MAX_DERIVATIVE_ORDER,
                requested: order,
            });
        }
        Ok(())
    }

    /// `φ_k^{(order)}(x)`, `k` zero-based.
    pub fn eval(&self, k: usize, x: f64, order: usize) -> Result<f64> {
        self.check_order(order)?;
        if k >= self.len() {
            return Err(Error::InvalidArgument(format!(
                "basis index {k} out of range for {} functions",
                self.len()
            )));
        }
        Ok(self.eval_unchecked(k, x, order))
    }

    pub(crate) fn eval_unchecked(&self, k: usize, x: f64, order: usize) -> f64 {
        match &self.repr {
            Repr::Sine { omega, clamped } => {
                let len = self.hi - self.lo;
                let w = omega[k];
                let xi = (x - self.lo) / len;
                let scale = (w / len).powi(order as i32);
                let phase = w * xi + order as f64 * PI / 2.0;
                if *clamped {
                    if order == 0 {
                        1.0 - (w * xi).cos()
                    } else {
                        -scale * phase.cos()
                    }
                } else {
                    scale * phase.sin()
                }
            }
            Repr::Poly { funcs, s0, s1 } => {
                let s = s0 + s1 * x;
                s1.powi(order as i32) * funcs[k].nth_derivative(order).eval(s)
            }
        }
    }

    /// `g^{(order)}(x)`.
    pub fn eval_lift(&self, x: f64, order: usize) -> Result<f64> {
        self.check_order(order)?;
        Ok(self.lift.nth_derivative(order).eval(x))
    }

    /// All `φ_k^{(order)}(x)`.
    pub fn eval_all(&self, x: f64, order: usize) -> Result<Vec<f64>> {
        self.check_order(order)?;
        Ok((0..self.len()).map(|k| self.eval_unchecked(k, x, order)).collect())
    }

    /// `g(x) + Σ c_k φ_k(x)` and its derivatives.
    pub fn expand(&self, coeffs: &[f64], x: f64, order: usize) -> Result<f64> {
        if coeffs.len() != self.len() {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients for {} basis functions",
                coeffs.len(),
                self.len()
            )));
        }
        let g = self.eval_lift(x, order)?;
        Ok(coeffs
            .iter()
            .enumerate()
            .fold(g, |acc, (k, c)| acc + c * self.eval_unchecked(k, x, order)))
    }

    /// Polynomial degree of `φ_k`, `None` for non-polynomial kinds.
    pub fn degree(&self, k: usize) -> Option<usize> {
        match &self.repr {
            Repr::Sine { .. } => None,
            Repr::Poly { funcs, .. } => Some(funcs[k].degree()),
        }
    }

    pub fn max_degree(&self) -> Option<usize> {
        (0..self.len()).map(|k| self.degree(k)).max().flatten()
    }

    /// Verifies the homogeneous essential conditions on every function.
    pub fn check_boundary_conditions(&self) -> Result<()> {
        let mut checks = vec![(self.lo, 0)];
        match self.bc {
            EssentialBc::Left => {}
            EssentialBc::Both => checks.push((self.hi, 0)),
            EssentialBc::LeftClamped => checks.push((self.lo, 1)),
        }
        for k in 0..self.len() {
            let scale = self.eval_unchecked(k, self.hi, 0).abs().max(1.0);
            for &(x, order) in &checks {
                let v = self.eval_unchecked(k, x, order);
                if v.abs() > 1e-10 * scale {
                    return Err(Error::BoundaryCondition(format!(
                        "{} function {k}: derivative {order} is {v} at x = {x}",
                        self.kind
                    )));
                }
            }
        }
        Ok(())
    }
}
