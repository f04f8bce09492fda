//! Dense real matrices and vectors.
//!
//! Both types are immutable values: constructors reject empty shapes and
//! non-finite entries, and every operation returns a fresh value.

use std::fmt;
use std::ops::Index;

use serde::Serialize;

use crate::error::{Error, Result, Shape};
use crate::flops::Flops;

fn check_finite(data: &[f64], cols: usize) -> Result<()> {
    match data.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::NonFinite {
            row: i / cols,
            col: i % cols,
            value: data[i],
        }),
        None => Ok(()),
    }
}

/// Dense row-major matrix of finite reals.
#[derive(Clone, PartialEq, Serialize)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument(format!(
                "matrix shape {rows}x{cols} must be positive"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "{} entries given for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        check_finite(&data, cols)?;
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != ncols {
                return Err(Error::InvalidArgument(format!(
                    "row {i} has {} entries, expected {ncols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Self::new(nrows, ncols, data)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::new(rows, cols, data)
    }

    /// Internal constructor for results of operations on valid inputs.
    pub(crate) fn from_raw(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix shape must be positive");
        Self::from_raw(rows, cols, vec![0.0; rows * cols])
    }

    /// The Hadamard unit matrix: every entry equal to one.
    pub fn ones(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix shape must be positive");
        Self::from_raw(rows, cols, vec![1.0; rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn diagonal(v: &RealVector) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = v[i];
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> Shape {
        Shape::new(self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn column(&self, j: usize) -> RealVector {
        RealVector::from_raw((0..self.rows).map(|i| self.get(i, j)).collect())
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        Self::from_raw(self.cols, self.rows, data)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self::from_raw(self.rows, self.cols, self.data.iter().map(|&v| f(v)).collect())
    }

    pub(crate) fn zip_map(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        debug_assert_eq!(self.shape(), other.shape());
        Self::from_raw(
            self.rows,
            self.cols,
            self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        )
    }

    fn check_same(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::Dimension {
                op,
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other, "matrix add")?;
        Ok(self.zip_map(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other, "matrix sub")?;
        Ok(self.zip_map(other, |a, b| a - b))
    }

    pub fn scale(&self, k: f64) -> Self {
        self.map(|v| k * v)
    }

    pub fn matvec(&self, x: &RealVector) -> Result<RealVector> {
        self.matvec_counted(x, &mut Flops::new())
    }

    pub fn matvec_counted(&self, x: &RealVector, flops: &mut Flops) -> Result<RealVector> {
        if x.len() != self.cols {
            return Err(Error::Dimension {
                op: "matrix-vector product",
                lhs: self.shape(),
                rhs: x.shape(),
            });
        }
        flops.add(self.rows * self.cols);
        Ok(RealVector::from_raw(
            (0..self.rows)
                .map(|i| self.row(i).iter().zip(x.iter()).map(|(a, b)| a * b).sum())
                .collect(),
        ))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.matmul_counted(other, &mut Flops::new())
    }

    pub fn matmul_counted(&self, other: &Self, flops: &mut Flops) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension {
                op: "matrix product",
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        flops.add(self.rows * self.cols * other.cols);
        let mut out = vec![0.0; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                let orow = other.row(k);
                let dst = &mut out[i * other.cols..(i + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(orow) {
                    *d += a * b;
                }
            }
        }
        Ok(Self::from_raw(self.rows, other.cols, out))
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Induced infinity norm (maximum absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Dimension {
                op: "vertical stack",
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self::from_raw(self.rows + other.rows, self.cols, data))
    }

    /// Places `self` and `other` side by side.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Dimension {
                op: "horizontal stack",
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(Self::from_raw(self.rows, cols, data))
    }
}

impl Index<(usize, usize)> for RealMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RealMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RealMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Dense vector of finite reals.
#[derive(Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct RealVector {
    data: Vec<f64>,
}

impl RealVector {
    pub fn new(data: Vec<f64>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::InvalidArgument("vector length must be positive".into()));
        }
        check_finite(&data, 1)?;
        Ok(Self { data })
    }

    pub(crate) fn from_raw(data: Vec<f64>) -> Self {
        Self { data }
    }

    pub fn zeros(len: usize) -> Self {
        assert!(len > 0, "vector length must be positive");
        Self::from_raw(vec![0.0; len])
    }

    pub fn ones(len: usize) -> Self {
        assert!(len > 0, "vector length must be positive");
        Self::from_raw(vec![1.0; len])
    }

    pub fn filled(len: usize, value: f64) -> Result<Self> {
        Self::new(vec![value; len])
    }

    pub fn from_fn(len: usize, f: impl FnMut(usize) -> f64) -> Result<Self> {
        Self::new((0..len).map(f).collect())
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    /// Always false: vectors are never empty.
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn shape(&self) -> Shape {
        Shape::vector(self.data.len())
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.data.iter()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    /// The vector as a single-column matrix.
    pub fn to_column(&self) -> RealMatrix {
        RealMatrix::from_raw(self.len(), 1, self.data.clone())
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self::from_raw(self.data.iter().map(|&v| f(v)).collect())
    }

    pub(crate) fn zip_map(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self::from_raw(self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect())
    }

    fn check_same(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::Dimension {
                op,
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other, "vector add")?;
        Ok(self.zip_map(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other, "vector sub")?;
        Ok(self.zip_map(other, |a, b| a - b))
    }

    pub fn scale(&self, k: f64) -> Self {
        self.map(|v| k * v)
    }

    pub fn dot(&self, other: &Self) -> Result<f64> {
        self.check_same(other, "dot product")?;
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum())
    }

    pub fn norm_inf(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self::from_raw(data)
    }

    /// Splits into `[0, at)` and `[at, len)`.
    pub fn split_at(&self, at: usize) -> Result<(Self, Self)> {
        if at == 0 || at >= self.len() {
            return Err(Error::InvalidArgument(format!(
                "split point {at} outside 1..{}",
                self.len()
            )));
        }
        let (a, b) = self.data.split_at(at);
        Ok((Self::from_raw(a.to_vec()), Self::from_raw(b.to_vec())))
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

impl Index<usize> for RealVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.data[i]
    }
}

impl fmt::Debug for RealVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RealVector{:?}", self.data)
    }
}

impl<'a> IntoIterator for &'a RealVector {
    type Item = &'a f64;
    type IntoIter = std::slice::Iter<'a, f64>;

    fn into_iter(self) -> Self::IntoIter {
        self.data.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite_and_empty() {
        assert!(matches!(
            RealMatrix::new(1, 2, vec![1.0, f64::NAN]),
            Err(Error::NonFinite { row: 0, col: 1, .. })
        ));
        assert!(RealMatrix::new(0, 2, vec![]).is_err());
        assert!(RealVector::new(vec![]).is_err());
        assert!(RealVector::new(vec![f64::INFINITY]).is_err());
        assert!(RealMatrix::new(2, 2, vec![1.0; 3]).is_err());
    }

    #[test]
    fn matvec_and_matmul() {
        let a = RealMatrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
        let x = RealVector::new(vec![1.0, -1.0]).unwrap();
        assert_eq!(a.matvec(&x).unwrap().as_slice(), &[-1.0, -1.0]);
        let p = a.matmul(&RealMatrix::identity(2)).unwrap();
        assert_eq!(p, a);
        assert_eq!(a.transpose().get(0, 1), 3.0);
        assert!(a.matvec(&RealVector::zeros(3)).is_err());
    }

    #[test]
    fn stacking() {
        let a = RealMatrix::identity(2);
        let s = a.hstack(&a).unwrap().vstack(&RealMatrix::zeros(1, 4)).unwrap();
        assert_eq!(s.shape(), Shape::new(3, 4));
        assert_eq!(s.get(1, 3), 1.0);
    }
}
