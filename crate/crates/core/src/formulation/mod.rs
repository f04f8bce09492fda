//! Formulation-H residual trees: evaluation, analytic SJT Jacobians and a
//! finite-difference oracle.

pub mod catalog;
pub mod eval;
pub mod fd;
pub mod jacobian;
pub mod node;
pub mod system;

pub use catalog::{build_catalog_form, CatalogForm};
pub use eval::{eval_node, eval_node_counted};
pub use fd::{fd_jacobian, fd_jacobian_fn, fd_jacobian_with_stats, FdScheme, DEFAULT_FD_STEP};
pub use jacobian::{jacobian_node, jacobian_with_stats, JacobianStats};
pub use node::{HNode, NodeKind};
pub use system::HSystem;
