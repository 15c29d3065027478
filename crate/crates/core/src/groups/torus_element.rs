use std::fmt;

use super::{GroupElement, GroupError};
use crate::arith::lattice::IntMatrix;
use crate::arith::Rational;
use crate::linalg::Matrix;

/// Affine map `x ↦ Lx + t` of `ℝ^{2g}/ℤ^{2g}`, with `t` reduced into `[0,1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusElement {
    linear: IntMatrix,
    translation: Vec<Rational>,
}

pub(crate) fn reduce_mod_one(v: &[Rational]) -> Vec<Rational> {
    v.iter().map(Rational::fract_floor).collect()
}

impl TorusElement {
    pub fn new(linear: IntMatrix, translation: Vec<Rational>) -> Result<Self, GroupError> {
        if !linear.is_square() {
            return Err(GroupError::DimensionMismatch(linear.rows(), linear.cols()));
        }
        if translation.len() != linear.rows() {
            return Err(GroupError::DimensionMismatch(linear.rows(), translation.len()));
        }
        Ok(TorusElement {
            linear,
            translation: reduce_mod_one(&translation),
        })
    }

    pub fn linear_only(linear: IntMatrix) -> Result<Self, GroupError> {
        let n = linear.rows();
        Self::new(linear, vec![Rational::zero(); n])
    }

    pub fn translation_by(t: Vec<Rational>) -> Self {
        let n = t.len();
        TorusElement {
            linear: IntMatrix::identity(n),
            translation: reduce_mod_one(&t),
        }
    }

    pub fn linear(&self) -> &IntMatrix {
        &self.linear
    }

    pub fn translation(&self) -> &[Rational] {
        &self.translation
    }

    pub fn is_translation(&self) -> bool {
        self.linear.is_identity()
    }

    /// `Lp + t mod ℤ^{2g}`.
    pub fn apply(&self, p: &[Rational]) -> Vec<Rational> {
        let lp = self.linear.apply(p);
        let moved: Vec<Rational> = lp.iter().zip(&self.translation).map(|(a, b)| a + b).collect();
        reduce_mod_one(&moved)
    }

    /// Rank over ℚ of `L − I`.
    pub fn moved_rank(&self) -> usize {
        let m = self.linear.minus_identity();
        let q: Matrix<Rational> = Matrix::from_fn(m.rows(), m.cols(), |i, j| Rational::from_int(m.get(i, j)));
        q.rank()
    }

    /// Linear part fixes a complex hyperplane (real codimension 2).
    pub fn is_pseudo_reflection(&self) -> bool {
        self.moved_rank() == 2
    }
}

impl GroupElement for TorusElement {
    fn compose(&self, other: &Self) -> Result<Self, GroupError> {
        if self.dim() != other.dim() {
            return Err(GroupError::DimensionMismatch(self.dim(), other.dim()));
        }
        let linear = self.linear.checked_mul(&other.linear).ok_or(GroupError::Overflow)?;
        let lt = self.linear.apply(&other.translation);
        let t: Vec<Rational> = lt.iter().zip(&self.translation).map(|(a, b)| a + b).collect();
        Ok(TorusElement {
            linear,
            translation: reduce_mod_one(&t),
        })
    }

    fn identity_like(&self) -> Self {
        Self::translation_by(vec![Rational::zero(); self.dim()])
    }

    fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation.iter().all(Rational::is_zero)
    }

    fn dim(&self) -> usize {
        self.linear.rows()
    }
}

impl fmt::Debug for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.linear.rows() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.linear.row(i).iter().map(i64::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        let t: Vec<String> = self.translation.iter().map(Rational::to_string).collect();
        write!(f, " | {})", t.join(" "))
    }
}
