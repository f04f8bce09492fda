//! Named scalar functions with registered derivatives, applied entrywise.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A scalar function paired with its derivative.
///
/// An argument is outside the domain when either the value or the
/// derivative comes out non-finite there.
#[derive(Clone)]
pub struct ElementwiseFn {
    name: Arc<str>,
    value: ScalarFn,
    derivative: ScalarFn,
}

impl ElementwiseFn {
    pub fn new(
        name: &str,
        value: impl Fn(f64) -> f64 + Send + Sync + 'static,
        derivative: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            value: Arc::new(value),
            derivative: Arc::new(derivative),
        }
    }

    pub fn sin() -> Self {
        Self::new("sin", f64::sin, f64::cos)
    }

    pub fn cos() -> Self {
        Self::new("cos", f64::cos, |x| -x.sin())
    }

    pub fn exp() -> Self {
        Self::new("exp", f64::exp, f64::exp)
    }

    pub fn log() -> Self {
        Self::new(
            "log",
            |x| if x > 0.0 { x.ln() } else { f64::NAN },
            |x| if x > 0.0 { 1.0 / x } else { f64::NAN },
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn value(&self, x: f64) -> f64 {
        (self.value)(x)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        (self.derivative)(x)
    }
}

impl fmt::Debug for ElementwiseFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ElementwiseFn({})", self.name)
    }
}

impl PartialEq for ElementwiseFn {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

/// Lookup table of elementwise functions by name.
#[derive(Debug, Clone)]
pub struct FunctionRegistry {
    functions: BTreeMap<String, ElementwiseFn>,
}

impl Default for FunctionRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

impl FunctionRegistry {
    pub fn empty() -> Self {
        Self {
            functions: BTreeMap::new(),
        }
    }

    /// `sin`, `cos`, `exp` and `log`.
    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        for f in [
            ElementwiseFn::sin(),
            ElementwiseFn::cos(),
            ElementwiseFn::exp(),
            ElementwiseFn::log(),
        ] {
            r.insert(f);
        }
        r
    }

    pub fn insert(&mut self, f: ElementwiseFn) {
        self.functions.insert(f.name().to_string(), f);
    }

    pub fn register(
        &mut self,
        name: &str,
        value: impl Fn(f64) -> f64 + Send + Sync + 'static,
        derivative: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) {
        self.insert(ElementwiseFn::new(name, value, derivative));
    }

    pub fn get(&self, name: &str) -> Result<ElementwiseFn> {
        self.functions
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownFunction(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.functions.keys().map(String::as_str)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_and_custom() {
        let mut reg = FunctionRegistry::with_builtins();
        assert_eq!(reg.get("exp").unwrap().derivative(0.0), 1.0);
        assert_eq!(reg.get("sin").unwrap().derivative(0.0), 1.0);
        assert!(matches!(reg.get("tanh"), Err(Error::UnknownFunction(_))));
        reg.register("tanh", f64::tanh, |x| 1.0 - x.tanh().powi(2));
        assert_eq!(reg.get("tanh").unwrap().derivative(0.0), 1.0);
        assert_eq!(reg.names().collect::<Vec<_>>(), ["cos", "exp", "log", "sin", "tanh"]);
    }
}
