use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub type WeightFn = Arc<dyn Fn(usize, f64) -> f64 + Send + Sync>;

/// How the `j`-th weight function is formed.
#[derive(Clone)]
pub enum WeightFamily {
    /// `W_j = φ_j` of the test basis.
    Galerkin,
    /// `W_j = φ_j^{(order)}`, the weight left after moving derivatives onto it.
    BasisDerivative(usize),
    /// `W_j = δ(x - x_j)`: integrals become point evaluations.
    Collocation(Vec<f64>),
    /// `W_j = op(φ_j)` for the operator being weighted.
    LeastSquares,
    /// An explicit family `W_j(x)`; `degree` enables quadrature checks.
    Custom {
        count: usize,
        weight: WeightFn,
        degree: Option<usize>,
    },
}

impl fmt::Debug for WeightFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightFamily::Galerkin => f.write_str("Galerkin"),
            WeightFamily::BasisDerivative(d) => write!(f, "BasisDerivative({d})"),
            WeightFamily::Collocation(nodes) => write!(f, "Collocation({nodes:?})"),
            WeightFamily::LeastSquares => f.write_str("LeastSquares"),
            WeightFamily::Custom { count, degree, .. } => {
                write!(f, "Custom {{ count: {count}, degree: {degree:?} }}")
            }
        }
    }
}

impl WeightFamily {
    pub fn custom(
        count: usize,
        degree: Option<usize>,
        weight: impl Fn(usize, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        WeightFamily::Custom {
            count,
            weight: Arc::new(weight),
            degree,
        }
    }

    /// Checks collocation nodes against the domain and each other.
    pub fn validate(&self, lo: f64, hi: f64) -> Result<()> {
        if let WeightFamily::Collocation(nodes) = self {
            for (i, &x) in nodes.iter().enumerate() {
                if !(x.is_finite() && lo <= x && x <= hi) {
                    return Err(Error::InvalidArgument(format!(
                        "collocation node {x} outside [{lo}, {hi}]"
                    )));
                }
                if nodes[..i].contains(&x) {
                    return Err(Error::InvalidArgument(format!(
                        "collocation node {x} repeated"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A default weight family with optional per-operator overrides, so the
/// operators of one residual can be weighted differently.
#[derive(Debug, Clone)]
pub struct WeightingScheme {
    default: WeightFamily,
    overrides: BTreeMap<String, WeightFamily>,
}

impl WeightingScheme {
    pub fn new(default: WeightFamily) -> Self {
        Self {
            default,
            overrides: BTreeMap::new(),
        }
    }

    pub fn galerkin() -> Self {
        Self::new(WeightFamily::Galerkin)
    }

    pub fn with(mut self, tag: impl Into<String>, family: WeightFamily) -> Self {
        self.overrides.insert(tag.into(), family);
        self
    }

    pub fn resolve(&self, tag: &str) -> &WeightFamily {
        self.overrides.get(tag).unwrap_or(&self.default)
    }
}

impl Default for WeightingScheme {
    fn default() -> Self {
        Self::galerkin()
    }
}
