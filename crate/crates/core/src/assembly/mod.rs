//! One-dimensional weighted-residual assembly.

pub mod assemble;
pub mod basis;
pub mod operator;
pub mod polynomial;
pub mod quadrature;
pub mod traditional;
pub mod weighting;

pub use assemble::{
    assemble_load, assemble_load_with_operator, assemble_operator, assemble_operator_mixed,
    boundary_outer, trace, AssembledOperator,
};
pub use basis::{BasisKind, BasisSet, EssentialBc, MAX_DERIVATIVE_ORDER};
pub use operator::{Coefficient, LinearOperator1D};
pub use polynomial::Polynomial;
pub use quadrature::{quadrature_integrate, QuadratureRule};
pub use traditional::{
    assemble_traditional_quadratic, eval_traditional, eval_traditional_counted,
    jacobian_traditional, jacobian_traditional_counted, TraditionalForm,
};
pub use weighting::{WeightFamily, WeightingScheme};
