use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Gauss-Legendre rule mapped to `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    points: Vec<f64>,
    weights: Vec<f64>,
    lo: f64,
    hi: f64,
}

/// `P_m(t)` and `P_m'(t)`.
fn legendre_with_derivative(m: usize, t: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, t);
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * t * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = m as f64 * (t * p1 - p0) / (t * t - 1.0);
    (p1, dp)
}

impl QuadratureRule {
    pub fn gauss_legendre(m: usize, lo: f64, hi: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("quadrature needs at least one point".into()));
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidArgument(format!("invalid domain [{lo}, {hi}]")));
        }
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut points = vec![0.0; m];
        let mut weights = vec![0.0; m];
        if m == 1 {
            points[0] = mid;
            weights[0] = 2.0 * half;
            return Ok(Self { points, weights, lo, hi });
        }
        for i in 0..m.div_ceil(2) {
            let mut t = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(m, t);
                let dt = p / dp;
                t -= dt;
                if dt.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(m, t);
            let w = 2.0 / ((1.0 - t * t) * dp * dp);
            points[i] = mid - half * t;
            points[m - 1 - i] = mid + half * t;
            weights[i] = half * w;
            weights[m - 1 - i] = half * w;
        }
        Ok(Self { points, weights, lo, hi })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    /// Highest polynomial degree integrated exactly: `2m - 1`.
    pub fn exact_degree(&self) -> usize {
        2 * self.points.len() - 1
    }

    pub fn require_degree(&self, required: usize) -> Result<()> {
        if required > self.exact_degree() {
            return Err(Error::QuadratureTooLow {
                points: self.len(),
                available: self.exact_degree(),
                required,
            });
        }
        Ok(())
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// `Σ w_i·f(x_i)`.
pub fn quadrature_integrate(f: impl Fn(f64) -> f64, quad: &QuadratureRule) -> f64 {
    quad.integrate(f)
}
