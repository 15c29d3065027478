use std::fmt;

use super::{GroupElement, GroupError};
use crate::arith::Cyclotomic;
use crate::linalg::{CycMatrix, Matrix};

/// Invertible square matrix over a cyclotomic field.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearElement {
    matrix: CycMatrix,
}

impl LinearElement {
    pub fn new(matrix: CycMatrix) -> Result<Self, GroupError> {
        if !matrix.is_square() {
            return Err(GroupError::DimensionMismatch(matrix.rows(), matrix.cols()));
        }
        if matrix.rows() > 0 && matrix.rank() < matrix.rows() {
            return Err(GroupError::NotInvertible);
        }
        Ok(LinearElement { matrix })
    }

    pub fn identity(d: usize) -> Self {
        LinearElement {
            matrix: Matrix::identity(d),
        }
    }

    pub fn diagonal(entries: &[Cyclotomic]) -> Self {
        let n = entries.len();
        LinearElement {
            matrix: Matrix::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { Cyclotomic::zero() }),
        }
    }

    pub fn matrix(&self) -> &CycMatrix {
        &self.matrix
    }

    pub fn inverse(&self) -> Self {
        LinearElement {
            matrix: self.matrix.inverse().expect("group elements are invertible"),
        }
    }

    pub fn trace(&self) -> Cyclotomic {
        self.matrix.trace()
    }

    /// Dimension of the eigenvalue-1 eigenspace.
    pub fn fixed_dimension(&self) -> usize {
        let n = self.matrix.rows();
        n - self.matrix.sub(&Matrix::identity(n)).rank()
    }

    /// Fixes a hyperplane and is not the identity.
    pub fn is_pseudo_reflection(&self) -> bool {
        let n = self.matrix.rows();
        n > 0 && self.fixed_dimension() == n - 1
    }
}

impl GroupElement for LinearElement {
    fn compose(&self, other: &Self) -> Result<Self, GroupError> {
        if self.dim() != other.dim() {
            return Err(GroupError::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(LinearElement {
            matrix: self.matrix.mul(&other.matrix),
        })
    }

    fn identity_like(&self) -> Self {
        Self::identity(self.dim())
    }

    fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    fn dim(&self) -> usize {
        self.matrix.rows()
    }
}

impl fmt::Debug for LinearElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LinearElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.matrix.rows() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, v) in self.matrix.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
        }
        write!(f, "]")
    }
}
