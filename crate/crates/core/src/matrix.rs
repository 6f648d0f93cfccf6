//! Dense 3×3 integer matrices.

use std::fmt;
use std::ops::Mul;

use serde::{Serialize, Serializer};

use crate::form::json_number;
use crate::scalar::{int, Scalar};

/// A 3×3 matrix stored row-major. Columns are the images of the unit vectors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat3<T> {
    rows: [[T; 3]; 3],
}

impl<T: Scalar> Mat3<T> {
    pub fn from_rows(rows: [[T; 3]; 3]) -> Self {
        Mat3 { rows }
    }

    pub fn from_columns(cols: [[T; 3]; 3]) -> Self {
        let [c0, c1, c2] = cols;
        let [a0, a1, a2] = c0;
        let [b0, b1, b2] = c1;
        let [d0, d1, d2] = c2;
        Mat3 {
            rows: [[a0, b0, d0], [a1, b1, d1], [a2, b2, d2]],
        }
    }

    pub fn from_i64(rows: [[i64; 3]; 3]) -> Self {
        Mat3 {
            rows: rows.map(|r| r.map(int)),
        }
    }

    pub fn identity() -> Self {
        Self::scalar(int(1))
    }

    pub fn scalar(s: T) -> Self {
        let z = T::zero();
        Mat3 {
            rows: [
                [s.clone(), z.clone(), z.clone()],
                [z.clone(), s.clone(), z.clone()],
                [z.clone(), z, s],
            ],
        }
    }

    pub fn diag(d0: T, d1: T, d2: T) -> Self {
        let z = T::zero();
        Mat3 {
            rows: [
                [d0, z.clone(), z.clone()],
                [z.clone(), d1, z.clone()],
                [z.clone(), z, d2],
            ],
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.rows[i][j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.rows[i][j] = v;
    }

    pub fn rows(&self) -> &[[T; 3]; 3] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> [T; 3] {
        [
            self.rows[0][j].clone(),
            self.rows[1][j].clone(),
            self.rows[2][j].clone(),
        ]
    }

    pub fn transpose(&self) -> Self {
        let r = &self.rows;
        Mat3::from_rows([
            [r[0][0].clone(), r[1][0].clone(), r[2][0].clone()],
            [r[0][1].clone(), r[1][1].clone(), r[2][1].clone()],
            [r[0][2].clone(), r[1][2].clone(), r[2][2].clone()],
        ])
    }

    pub fn det(&self) -> T {
        let r = &self.rows;
        let m = |i: usize, j: usize| r[i][j].clone();
        m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
            - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
            + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
    }

    /// Adjugate, so that `A · adj(A) = det(A) · I`.
    pub fn adjugate(&self) -> Self {
        let r = &self.rows;
        let m = |i: usize, j: usize| r[i][j].clone();
        let cof = |i0: usize, i1: usize, j0: usize, j1: usize| m(i0, j0) * m(i1, j1) - m(i0, j1) * m(i1, j0);
        Mat3::from_rows([
            [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
            [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
            [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
        ])
    }

    pub fn map<F: Fn(&T) -> T>(&self, f: F) -> Self {
        Mat3 {
            rows: [
                [f(&self.rows[0][0]), f(&self.rows[0][1]), f(&self.rows[0][2])],
                [f(&self.rows[1][0]), f(&self.rows[1][1]), f(&self.rows[1][2])],
                [f(&self.rows[2][0]), f(&self.rows[2][1]), f(&self.rows[2][2])],
            ],
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    /// Exact division of every entry; `None` if some entry is not divisible.
    pub fn div_exact(&self, d: &T) -> Option<Self> {
        if self.rows.iter().flatten().all(|x| x.is_multiple_of(d)) {
            Some(self.map(|x| x.clone() / d.clone()))
        } else {
            None
        }
    }

    pub fn mul_vec(&self, v: &[T; 3]) -> [T; 3] {
        let r = &self.rows;
        let row = |i: usize| {
            r[i][0].clone() * v[0].clone() + r[i][1].clone() * v[1].clone() + r[i][2].clone() * v[2].clone()
        };
        [row(0), row(1), row(2)]
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        for row in self.rows.iter_mut() {
            row.swap(a, b);
        }
    }

    pub fn cast<U: Scalar>(&self) -> Option<Mat3<U>> {
        let mut out: Mat3<U> = Mat3::identity();
        for i in 0..3 {
            for j in 0..3 {
                out.rows[i][j] = crate::scalar::cast(&self.rows[i][j])?;
            }
        }
        Some(out)
    }

    pub fn to_i64_rows(&self) -> Option<[[i64; 3]; 3]> {
        let mut out = [[0i64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = self.rows[i][j].to_i64()?;
            }
        }
        Some(out)
    }
}

impl<T: Scalar> Mul for &Mat3<T> {
    type Output = Mat3<T>;

    fn mul(self, rhs: &Mat3<T>) -> Mat3<T> {
        let a = &self.rows;
        let b = &rhs.rows;
        let entry = |i: usize, j: usize| {
            a[i][0].clone() * b[0][j].clone() + a[i][1].clone() * b[1][j].clone() + a[i][2].clone() * b[2][j].clone()
        };
        Mat3::from_rows([
            [entry(0, 0), entry(0, 1), entry(0, 2)],
            [entry(1, 0), entry(1, 1), entry(1, 2)],
            [entry(2, 0), entry(2, 1), entry(2, 2)],
        ])
    }
}

impl<T: Scalar> Mul for Mat3<T> {
    type Output = Mat3<T>;

    fn mul(self, rhs: Mat3<T>) -> Mat3<T> {
        &self * &rhs
    }
}

/// Serialized as an array of rows of exact integers.
impl<T: Scalar> Serialize for Mat3<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<serde_json::Number>> =
            self.rows.iter().map(|r| r.iter().map(json_number).collect()).collect();
        rows.serialize(serializer)
    }
}

impl<T: Scalar> fmt::Debug for Mat3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[{}, {}, {}]", row[0], row[1], row[2])?;
        }
        write!(f, "]")
    }
}

impl<T: Scalar> fmt::Display for Mat3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
