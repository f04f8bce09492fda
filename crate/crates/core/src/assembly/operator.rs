use std::fmt;
use std::sync::Arc;

use crate::assembly::basis::BasisSet;
use crate::assembly::polynomial::Polynomial;
use crate::error::{Error, Result};

pub const MAX_OPERATOR_ORDER: usize = 2;

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum Coefficient {
    Constant(f64),
    Polynomial(Polynomial),
    Function(ScalarFn),
}

impl Coefficient {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Coefficient::Constant(c) => *c,
            Coefficient::Polynomial(p) => p.eval(x),
            Coefficient::Function(f) => f(x),
        }
    }

    /// Polynomial degree when known.
    pub fn degree(&self) -> Option<usize> {
        match self {
            Coefficient::Constant(_) => Some(0),
            Coefficient::Polynomial(p) => Some(p.degree()),
            Coefficient::Function(_) => None,
        }
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Constant(c) => write!(f, "Constant({c})"),
            Coefficient::Polynomial(p) => write!(f, "Polynomial({:?})", p.coeffs()),
            Coefficient::Function(_) => f.write_str("Function(..)"),
        }
    }
}

/// `Σ c_d(x)·d^d/dx^d` with orders at most [`MAX_OPERATOR_ORDER`].
#[derive(Debug, Clone)]
pub struct LinearOperator1D {
    terms: Vec<(Coefficient, usize)>,
}

impl LinearOperator1D {
    pub fn new(terms: Vec<(Coefficient, usize)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidArgument("operator needs at least one term".into()));
        }
        if let Some((_, d)) = terms.iter().find(|(_, d)| *d > MAX_OPERATOR_ORDER) {
            return Err(Error::InvalidArgument(format!(
                "operator derivative order {d} exceeds {MAX_OPERATOR_ORDER}"
            )));
        }
        Ok(Self { terms })
    }

    pub fn identity() -> Self {
        Self::scaled_derivative(1.0, 0)
    }

    /// `d^order/dx^order`; panics for orders above [`MAX_OPERATOR_ORDER`].
    pub fn derivative(order: usize) -> Self {
        Self::scaled_derivative(1.0, order)
    }

    /// `c·d^order/dx^order`; panics for orders above [`MAX_OPERATOR_ORDER`].
    pub fn scaled_derivative(c: f64, order: usize) -> Self {
        Self::new(vec![(Coefficient::Constant(c), order)]).expect("order within limit")
    }

    pub fn terms(&self) -> &[(Coefficient, usize)] {
        &self.terms
    }

    pub fn max_order(&self) -> usize {
        self.terms.iter().map(|(_, d)| *d).max().unwrap_or(0)
    }

    /// The operator `self + other`.
    pub fn plus(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self { terms }
    }

    /// `op(φ_k)(x)`.
    pub fn apply_basis(&self, basis: &BasisSet, k: usize, x: f64) -> f64 {
        self.terms
            .iter()
            .map(|(c, d)| c.eval(x) * basis.eval_unchecked(k, x, *d))
            .sum()
    }

    /// `op(g)(x)` for the basis lift `g`.
    pub fn apply_lift(&self, basis: &BasisSet, x: f64) -> f64 {
        self.terms
            .iter()
            .map(|(c, d)| c.eval(x) * basis.lift().nth_derivative(*d).eval(x))
            .sum()
    }

    /// Degree of `op(p)` for a polynomial of degree `deg`, when known.
    pub fn image_degree(&self, deg: usize) -> Option<usize> {
        self.terms
            .iter()
            .map(|(c, d)| c.degree().map(|cd| cd + deg.saturating_sub(*d)))
            .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
    }
}
