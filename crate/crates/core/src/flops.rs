//! Scalar multiplication counter shared by the instrumented evaluators.
//!
//! Cost model: every scalar product or quotient counts as one
//! multiplication, and so does each elementwise power or function
//! application. Additions are free.

use serde::Serialize;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Flops {
    pub multiplications: u64,
}

impl Flops {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, count: usize) {
        self.multiplications += count as u64;
    }

    pub fn merge(&mut self, other: Flops) {
        self.multiplications += other.multiplications;
    }
}
