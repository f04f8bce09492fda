use crate::error::{Error, Result, Shape};
use crate::hadamard::{ElementwiseFn, RealMatrix, RealVector};

/// A formulation-H expression over an unknown vector `x`.
///
/// Shapes are checked when a node is built, so every tree that exists has
/// a well-defined output length and unknown dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct HNode {
    kind: NodeKind,
    len: usize,
    dim: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum NodeKind {
    /// `M·x + c`.
    Affine {
        matrix: RealMatrix,
        offset: RealVector,
        identity: bool,
    },
    /// `M·child(x)`: a known matrix applied to a nonlinear child, e.g. `A·U^{∘m}`.
    Linear { matrix: RealMatrix, child: Box<HNode> },
    HadProduct { left: Box<HNode>, right: Box<HNode> },
    HadPower { child: Box<HNode>, exponent: f64 },
    HadFunc { func: ElementwiseFn, child: Box<HNode> },
    Scale { factor: f64, child: Box<HNode> },
    Sum { children: Vec<HNode> },
    Const { value: RealVector },
}

impl HNode {
    pub fn affine(matrix: RealMatrix, offset: RealVector) -> Result<Self> {
        if offset.len() != matrix.rows() {
            return Err(Error::Dimension {
                op: "affine node",
                lhs: matrix.shape(),
                rhs: offset.shape(),
            });
        }
        let identity = matrix.is_square()
            && offset.iter().all(|&v| v == 0.0)
            && (0..matrix.rows()).all(|i| {
                (0..matrix.cols()).all(|j| matrix.get(i, j) == if i == j { 1.0 } else { 0.0 })
            });
        let (len, dim) = (matrix.rows(), matrix.cols());
        Ok(Self {
            kind: NodeKind::Affine {
                matrix,
                offset,
                identity,
            },
            len,
            dim,
        })
    }

    /// `M·x`.
    pub fn linear_map(matrix: RealMatrix) -> Self {
        let rows = matrix.rows();
        Self::affine(matrix, RealVector::zeros(rows)).expect("offset sized to matrix")
    }

    /// The unknown vector itself.
    pub fn identity(dim: usize) -> Self {
        Self::linear_map(RealMatrix::identity(dim))
    }

    /// `M·child(x)`.
    pub fn linear(matrix: RealMatrix, child: HNode) -> Result<Self> {
        if matrix.cols() != child.len {
            return Err(Error::Dimension {
                op: "linear node",
                lhs: matrix.shape(),
                rhs: Shape::vector(child.len),
            });
        }
        let (len, dim) = (matrix.rows(), child.dim);
        Ok(Self {
            kind: NodeKind::Linear {
                matrix,
                child: Box::new(child),
            },
            len,
            dim,
        })
    }

    fn check_pair(op: &'static str, a: &HNode, b: &HNode) -> Result<()> {
        if a.len != b.len || a.dim != b.dim {
            return Err(Error::Dimension {
                op,
                lhs: Shape::new(a.len, a.dim),
                rhs: Shape::new(b.len, b.dim),
            });
        }
        Ok(())
    }

    pub fn had_product(left: HNode, right: HNode) -> Result<Self> {
        Self::check_pair("Hadamard product node", &left, &right)?;
        let (len, dim) = (left.len, left.dim);
        Ok(Self {
            kind: NodeKind::HadProduct {
                left: Box::new(left),
                right: Box::new(right),
            },
            len,
            dim,
        })
    }

    pub fn had_power(child: HNode, exponent: f64) -> Result<Self> {
        if !exponent.is_finite() {
            return Err(Error::InvalidArgument(format!("exponent {exponent} is not finite")));
        }
        let (len, dim) = (child.len, child.dim);
        Ok(Self {
            kind: NodeKind::HadPower {
                child: Box::new(child),
                exponent,
            },
            len,
            dim,
        })
    }

    pub fn had_func(func: ElementwiseFn, child: HNode) -> Self {
        let (len, dim) = (child.len, child.dim);
        Self {
            kind: NodeKind::HadFunc {
                func,
                child: Box::new(child),
            },
            len,
            dim,
        }
    }

    pub fn scale(factor: f64, child: HNode) -> Result<Self> {
        if !factor.is_finite() {
            return Err(Error::InvalidArgument(format!("scale factor {factor} is not finite")));
        }
        let (len, dim) = (child.len, child.dim);
        Ok(Self {
            kind: NodeKind::Scale {
                factor,
                child: Box::new(child),
            },
            len,
            dim,
        })
    }

    pub fn sum(children: Vec<HNode>) -> Result<Self> {
        let first = children
            .first()
            .ok_or_else(|| Error::InvalidArgument("sum node needs at least one child".into()))?;
        for c in &children[1..] {
            Self::check_pair("sum node", first, c)?;
        }
        let (len, dim) = (first.len, first.dim);
        Ok(Self {
            kind: NodeKind::Sum { children },
            len,
            dim,
        })
    }

    /// A constant vector, independent of the `dim` unknowns.
    pub fn constant(value: RealVector, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("unknown dimension must be positive".into()));
        }
        let len = value.len();
        Ok(Self {
            kind: NodeKind::Const { value },
            len,
            dim,
        })
    }

    pub fn kind(&self) -> &NodeKind {
        &self.kind
    }

    /// Output length.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Length of the unknown vector.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        1 + match &self.kind {
            NodeKind::Affine { .. } | NodeKind::Const { .. } => 0,
            NodeKind::Linear { child, .. }
            | NodeKind::HadPower { child, .. }
            | NodeKind::HadFunc { child, .. }
            | NodeKind::Scale { child, .. } => child.size(),
            NodeKind::HadProduct { left, right } => left.size() + right.size(),
            NodeKind::Sum { children } => children.iter().map(HNode::size).sum(),
        }
    }
}
