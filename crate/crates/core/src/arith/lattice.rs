//! Integer matrices and Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::Rational;

/// Dense row-major matrix over `i64` with overflow-checked products.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged integer matrix");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == i64::from(i == j)))
    }

    /// `None` on dimension mismatch or overflow.
    pub fn checked_mul(&self, other: &IntMatrix) -> Option<IntMatrix> {
        if self.cols != other.rows {
            return None;
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let idx = i * other.cols + j;
                        out.data[idx] = out.data[idx].checked_add(a.checked_mul(b)?)?;
                    }
                }
            }
        }
        Some(out)
    }

    pub fn checked_sub(&self, other: &IntMatrix) -> Option<IntMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return None;
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()?;
        Some(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn minus_identity(&self) -> IntMatrix {
        self.checked_sub(&IntMatrix::identity(self.rows))
            .expect("square matrix minus identity")
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Applies the matrix to a rational column vector.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in apply");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if a != 0 && !x.is_zero() {
                        acc = &acc + &(x * &Rational::from_int(a));
                    }
                }
                acc
            })
            .collect()
    }

    /// Exact determinant (Bareiss elimination).
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = self
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

/// Square or rectangular matrix of big integers, used for unimodular
/// transforms.
pub type BigMatrix = Vec<Vec<BigInt>>;

fn big_identity(n: usize) -> BigMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Smith normal form `left * A * right = diag`, with `left` and `right`
/// unimodular and each nonzero `diag[i]` positive and dividing `diag[i+1]`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub left: BigMatrix,
    pub right: BigMatrix,
    pub right_inv: BigMatrix,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }

    /// Nonzero invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diag.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let rows: BigMatrix = a
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
    smith_normal_form_big(rows, a.rows(), a.cols())
}

pub fn smith_normal_form_big(mut m: BigMatrix, r: usize, c: usize) -> Smith {
    let mut left = big_identity(r);
    let mut right = big_identity(c);
    let mut right_inv = big_identity(c);
    let steps = r.min(c);

    let swap_cols = |m: &mut BigMatrix, right: &mut BigMatrix, right_inv: &mut BigMatrix, a: usize, b: usize| {
        if a == b {
            return;
        }
        for row in m.iter_mut() {
            row.swap(a, b);
        }
        for row in right.iter_mut() {
            row.swap(a, b);
        }
        right_inv.swap(a, b);
    };
    // col_j -= q * col_t
    let col_op = |m: &mut BigMatrix, right: &mut BigMatrix, right_inv: &mut BigMatrix, t: usize, j: usize, q: &BigInt| {
        for row in m.iter_mut() {
            let v = &row[t] * q;
            row[j] -= v;
        }
        for row in right.iter_mut() {
            let v = &row[t] * q;
            row[j] -= v;
        }
        let (src, dst) = (right_inv[j].clone(), &mut right_inv[t]);
        for (d, s) in dst.iter_mut().zip(src.iter()) {
            *d += s * q;
        }
    };
    // row_i -= q * row_t
    let row_op = |m: &mut BigMatrix, left: &mut BigMatrix, t: usize, i: usize, q: &BigInt| {
        let src = m[t].clone();
        for (d, s) in m[i].iter_mut().zip(src.iter()) {
            *d -= s * q;
        }
        let src = left[t].clone();
        for (d, s) in left[i].iter_mut().zip(src.iter()) {
            *d -= s * q;
        }
    };

    for t in 0..steps {
        // pivot: smallest nonzero magnitude in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        left.swap(t, pi);
        swap_cols(&mut m, &mut right, &mut right_inv, t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..r {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                row_op(&mut m, &mut left, t, i, &q);
                if !m[i][t].is_zero() {
                    m.swap(t, i);
                    left.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..c {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                col_op(&mut m, &mut right, &mut right_inv, t, j, &q);
                if !m[t][j].is_zero() {
                    swap_cols(&mut m, &mut right, &mut right_inv, t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let mut fix = None;
            'scan: for i in t + 1..r {
                for j in t + 1..c {
                    if !m[i][j].is_multiple_of(&m[t][t]) {
                        fix = Some(i);
                        break 'scan;
                    }
                }
            }
            match fix {
                Some(i) => {
                    // row_t += row_i
                    let minus_one = BigInt::from(-1);
                    row_op(&mut m, &mut left, i, t, &minus_one);
                }
                None => break,
            }
        }
        if m[t][t].is_negative() {
            for v in m[t].iter_mut() {
                *v = -v.clone();
            }
            for v in left[t].iter_mut() {
                *v = -v.clone();
            }
        }
    }
    let diag = (0..steps).map(|i| m[i][i].clone()).collect();
    Smith {
        diag,
        left,
        right,
        right_inv,
    }
}

/// Multiplies a big-integer matrix into a rational vector.
pub fn big_apply(m: &BigMatrix, v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| {
            let mut acc = Rational::zero();
            for (a, x) in row.iter().zip(v) {
                if !a.is_zero() && !x.is_zero() {
                    acc = &acc + &(x * &Rational::from_bigint(a.clone()));
                }
            }
            acc
        })
        .collect()
}

pub fn big_to_i64(m: &BigMatrix) -> Option<Vec<Vec<i64>>> {
    m.iter()
        .map(|row| row.iter().map(|x| x.to_i64()).collect::<Option<Vec<_>>>())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big_mul(a: &BigMatrix, b: &BigMatrix) -> BigMatrix {
        let n = b.first().map_or(0, |r| r.len());
        a.iter()
            .map(|row| {
                (0..n)
                    .map(|j| row.iter().zip(b.iter()).map(|(x, brow)| x * &brow[j]).sum())
                    .collect()
            })
            .collect()
    }

    fn check(a: &IntMatrix) -> Smith {
        let s = smith_normal_form(a);
        let am: BigMatrix = a.to_rows().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        let d = big_mul(&big_mul(&s.left, &am), &s.right);
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                let expect = if i == j { s.diag[i].clone() } else { BigInt::zero() };
                assert_eq!(d[i][j], expect, "entry ({i},{j}) of {a:?}");
            }
        }
        assert_eq!(big_mul(&s.right, &s.right_inv), big_identity(a.cols()));
        for w in s.diag.windows(2) {
            if !w[1].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        s
    }

    #[test]
    fn diagonalizes_small_examples() {
        let s = check(&IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]));
        assert_eq!(s.diag, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let s = check(&IntMatrix::from_rows(&[vec![4, 0], vec![0, 2], vec![0, 0]]));
        assert_eq!(s.diag, vec![BigInt::from(2), BigInt::from(4)]);
        let s = check(&IntMatrix::from_rows(&[vec![-1, 1], vec![1, -1]]));
        assert_eq!(s.rank(), 1);
        check(&IntMatrix::zeros(2, 3));
    }

    #[test]
    fn det_matches_known_values() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 3]]);
        assert_eq!(m.det(), BigInt::from(5));
        let m = IntMatrix::from_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]);
        assert_eq!(m.det(), BigInt::from(-1));
    }

    #[test]
    fn checked_mul_reports_overflow() {
        let m = IntMatrix::from_rows(&[vec![i64::MAX, 1], vec![0, 1]]);
        assert!(m.checked_mul(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]])).is_none());
    }

    proptest::proptest! {
        #[test]
        fn smith_identity_holds(entries in proptest::collection::vec(-9i64..10, 12)) {
            let rows: Vec<Vec<i64>> = entries.chunks(4).map(|c| c.to_vec()).collect();
            let a = IntMatrix::from_rows(&rows);
            check(&a);
        }
    }
}
